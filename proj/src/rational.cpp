#include "viscount/rational.h"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace viscount {

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
}

void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.is_one()) return;
    std::size_t pow2 = den_.power_of_two_exponent();
    if (pow2 != static_cast<std::size_t>(-1)) {
        // dyadic denominator reduces by shifts alone
        std::size_t s = std::min(pow2, num_.trailing_zero_bits());
        if (s > 0) {
            num_ = num_.shifted_right(static_cast<unsigned>(s));
            den_ = den_.shifted_right(static_cast<unsigned>(s));
        }
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::from_string(const std::string& s) {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(BigInt::from_string(s), BigInt(1));
    BigInt n = BigInt::from_string(s.substr(0, slash));
    BigInt d = BigInt::from_string(s.substr(slash + 1));
    if (d.sign() <= 0)
        throw std::invalid_argument("Rational: denominator must be positive");
    return Rational(std::move(n), std::move(d));
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::abs() const {
    Rational r;
    r.num_ = num_.abs();
    r.den_ = den_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::cmp(const Rational& o) const {
    int sa = num_.sign();
    int sb = o.num_.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    return (num_ * o.den_).cmp(o.num_ * den_);
}

BigInt Rational::floor() const { return BigInt::fdiv(num_, den_); }

double Rational::to_double() const {
    // scale so both parts stay in double range
    double n = num_.to_double();
    double d = den_.to_double();
    if (std::isfinite(n) && std::isfinite(d)) return n / d;
    std::size_t bn = num_.bit_length();
    std::size_t bd = den_.bit_length();
    std::size_t drop = (bn > bd ? bn : bd) - 500;
    BigInt q, r;
    BigInt::divmod(num_, BigInt(1).shifted_left(static_cast<unsigned>(drop)), q, r);
    BigInt qd, rd;
    BigInt::divmod(den_, BigInt(1).shifted_left(static_cast<unsigned>(drop)), qd, rd);
    return q.to_double() / qd.to_double();
}

std::string Rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::midpoint(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_ * BigInt(2));
}

namespace {

// Simplest p/q with a/b < p/q < c/d, given 0 <= a/b < c/d and b, d > 0.
// Continued-fraction descent over the Stern-Brocot tree.
void simplest_nonneg(const BigInt& a, const BigInt& b, const BigInt& c,
                     const BigInt& d, BigInt& p, BigInt& q) {
    BigInt f = BigInt::fdiv(a, b);
    BigInt f1 = f + BigInt(1);
    if (f1 * d < c) {  // the integer f+1 lies strictly inside
        p = f1;
        q = BigInt(1);
        return;
    }
    BigInt na = a - f * b;  // interval shifted into [0, 1)
    BigInt nc = c - f * d;
    if (na.is_zero()) {
        // (0, nc/d): smallest k with 1/k < nc/d
        BigInt k = BigInt::fdiv(d, nc) + BigInt(1);
        p = f * k + BigInt(1);
        q = k;
        return;
    }
    BigInt rp, rq;
    simplest_nonneg(d, nc, b, na, rp, rq);  // reciprocal flips the interval
    p = f * rp + rq;
    q = rp;
}

}  // namespace

// dyadic with the smallest power-of-two denominator strictly inside (lo, hi)
Rational Rational::simplest_dyadic_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::domain_error("simplest_dyadic_between: empty interval");
    Rational width = hi - lo;
    std::size_t bn = width.num().bit_length();
    std::size_t bd = width.den().bit_length();
    std::size_t k = bd > bn ? bd - bn : 0;
    if (k > 0) --k;
    for (;; ++k) {
        BigInt m = BigInt::fdiv(lo.num().shifted_left(static_cast<unsigned>(k)),
                                lo.den()) + BigInt(1);
        if ((m * hi.den()).cmp(hi.num().shifted_left(static_cast<unsigned>(k))) < 0)
            return Rational(std::move(m),
                            BigInt(1).shifted_left(static_cast<unsigned>(k)));
    }
}

Rational Rational::simplest_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::domain_error("simplest_between: empty interval");
    if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
    if (lo.sign() >= 0) {
        BigInt p, q;
        simplest_nonneg(lo.num(), lo.den(), hi.num(), hi.den(), p, q);
        return Rational(std::move(p), std::move(q));
    }
    // hi <= 0: mirror to (-hi, -lo)
    BigInt p, q;
    simplest_nonneg(-hi.num(), hi.den(), -lo.num(), lo.den(), p, q);
    return Rational(-p, std::move(q));
}

}  // namespace viscount
