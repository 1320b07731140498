#ifndef VISCOUNT_RATIONAL_H
#define VISCOUNT_RATIONAL_H

#include <string>

#include "viscount/bigint.h"

namespace viscount {

// Exact rational, always in canonical form: den > 0, gcd(|num|, den) = 1,
// zero is 0/1.  Equality is therefore structural.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);
    Rational(BigInt n, BigInt d);

    static Rational from_string(const std::string& s);  // "p", "p/q"

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    int cmp(const Rational& o) const;
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.cmp(b) >= 0; }

    Rational abs() const;
    BigInt floor() const;
    double to_double() const;
    std::string to_string() const;  // "p" or "p/q", canonical

    static Rational midpoint(const Rational& a, const Rational& b);

    // The rational with smallest denominator strictly inside (lo, hi).
    // pre: lo < hi.  Used to keep derived points on small coordinates.
    static Rational simplest_between(const Rational& lo, const Rational& hi);

    // The dyadic with smallest power-of-two denominator strictly inside
    // (lo, hi); cheaper than simplest_between on fat interval bounds.
    static Rational simplest_dyadic_between(const Rational& lo, const Rational& hi);

  private:
    BigInt num_;
    BigInt den_;

    void normalize();
};

}  // namespace viscount

#endif
