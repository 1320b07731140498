#include "viscount/bigint.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace viscount {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    size_ = 1;
    // careful with INT64_MIN
    inline_[0] = v > 0 ? static_cast<u64>(v) : ~static_cast<u64>(v) + 1;
}

BigInt::BigInt(const BigInt& o) { assign_copy(o); }

BigInt::BigInt(BigInt&& o) noexcept { steal(std::move(o)); }

BigInt& BigInt::operator=(const BigInt& o) {
    if (this == &o) return *this;
    if (on_heap()) delete[] heap_;
    assign_copy(o);
    return *this;
}

BigInt& BigInt::operator=(BigInt&& o) noexcept {
    if (this == &o) return *this;
    if (on_heap()) delete[] heap_;
    steal(std::move(o));
    return *this;
}

BigInt::~BigInt() {
    if (on_heap()) delete[] heap_;
}

void BigInt::assign_copy(const BigInt& o) {
    sign_ = o.sign_;
    size_ = o.size_;
    if (o.on_heap() && o.size_ > kInlineLimbs) {
        cap_ = o.size_;
        heap_ = new u64[cap_];
        std::memcpy(heap_, o.heap_, sizeof(u64) * size_);
    } else {
        cap_ = kInlineLimbs;
        std::memcpy(inline_, o.limbs(), sizeof(u64) * size_);
    }
}

void BigInt::steal(BigInt&& o) noexcept {
    sign_ = o.sign_;
    size_ = o.size_;
    cap_ = o.cap_;
    if (o.on_heap()) {
        heap_ = o.heap_;
        o.cap_ = kInlineLimbs;
    } else {
        std::memcpy(inline_, o.inline_, sizeof(u64) * size_);
    }
    o.sign_ = 0;
    o.size_ = 0;
}

void BigInt::reserve(std::uint32_t n) {
    if (n <= cap_) return;
    u64* p = new u64[n];
    std::memcpy(p, limbs(), sizeof(u64) * size_);
    if (on_heap()) delete[] heap_;
    heap_ = p;
    cap_ = n;
}

void BigInt::set_size(std::uint32_t n) {
    if (n > cap_) {
        if (on_heap()) delete[] heap_;
        cap_ = n;
        heap_ = new u64[n];
    }
    size_ = n;
}

void BigInt::trim() {
    const u64* p = limbs();
    while (size_ > 0 && p[size_ - 1] == 0) --size_;
    if (size_ == 0) sign_ = 0;
}

bool BigInt::is_one() const { return sign_ == 1 && size_ == 1 && limbs()[0] == 1; }

bool BigInt::fits_int64() const {
    if (size_ == 0) return true;
    if (size_ > 1) return false;
    u64 m = limbs()[0];
    return sign_ > 0 ? m <= static_cast<u64>(INT64_MAX)
                     : m <= static_cast<u64>(INT64_MAX) + 1;
}

std::int64_t BigInt::as_int64() const {
    assert(fits_int64());
    if (size_ == 0) return 0;
    u64 m = limbs()[0];
    return sign_ > 0 ? static_cast<std::int64_t>(m)
                     : static_cast<std::int64_t>(~m + 1);
}

double BigInt::to_double() const {
    if (sign_ == 0) return 0.0;
    const u64* p = limbs();
    double acc = 0.0;
    // limbs beyond the top three cannot affect the 53-bit mantissa
    std::uint32_t lo = size_ > 3 ? size_ - 3 : 0;
    for (std::uint32_t i = size_; i-- > lo;)
        acc = acc * 18446744073709551616.0 + static_cast<double>(p[i]);
    acc = std::ldexp(acc, 64 * static_cast<int>(lo));
    return sign_ > 0 ? acc : -acc;
}

BigInt BigInt::operator-() const {
    BigInt r(*this);
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r(*this);
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_ ? -1 : 1;
    const u64* pa = a.limbs();
    const u64* pb = b.limbs();
    for (std::uint32_t i = a.size_; i-- > 0;) {
        if (pa[i] != pb[i]) return pa[i] < pb[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::cmp(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    if (sign_ == 0) return 0;
    int c = cmp_mag(*this, o);
    return sign_ > 0 ? c : -c;
}

BigInt BigInt::add_mag(const BigInt& a, const BigInt& b, int sign) {
    const BigInt& hi = a.size_ >= b.size_ ? a : b;
    const BigInt& lo = a.size_ >= b.size_ ? b : a;
    BigInt r;
    r.set_size(hi.size_ + 1);
    const u64* ph = hi.limbs();
    const u64* pl = lo.limbs();
    u64* pr = r.limbs();
    u64 carry = 0;
    for (std::uint32_t i = 0; i < lo.size_; ++i) {
        u128 s = static_cast<u128>(ph[i]) + pl[i] + carry;
        pr[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    for (std::uint32_t i = lo.size_; i < hi.size_; ++i) {
        u128 s = static_cast<u128>(ph[i]) + carry;
        pr[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    pr[hi.size_] = carry;
    r.sign_ = sign;
    r.trim();
    return r;
}

// pre: |big| >= |small|
BigInt BigInt::sub_mag(const BigInt& big, const BigInt& small, int sign) {
    BigInt r;
    r.set_size(big.size_);
    const u64* pb = big.limbs();
    const u64* ps = small.limbs();
    u64* pr = r.limbs();
    u64 borrow = 0;
    for (std::uint32_t i = 0; i < small.size_; ++i) {
        u64 s = ps[i];
        u64 d = pb[i] - s - borrow;
        borrow = (pb[i] < s || (pb[i] == s && borrow)) ? 1 : 0;
        pr[i] = d;
    }
    for (std::uint32_t i = small.size_; i < big.size_; ++i) {
        u64 d = pb[i] - borrow;
        borrow = (pb[i] < borrow) ? 1 : 0;
        pr[i] = d;
    }
    assert(borrow == 0);
    r.sign_ = sign;
    r.trim();
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) return BigInt::add_mag(a, b, a.sign_);
    int c = BigInt::cmp_mag(a, b);
    if (c == 0) return BigInt();
    return c > 0 ? BigInt::sub_mag(a, b, a.sign_) : BigInt::sub_mag(b, a, b.sign_);
}

BigInt operator-(const BigInt& a, const BigInt& b) {
    if (b.sign_ == 0) return a;
    if (a.sign_ == 0) return -b;
    if (a.sign_ != b.sign_) return BigInt::add_mag(a, b, a.sign_);
    int c = BigInt::cmp_mag(a, b);
    if (c == 0) return BigInt();
    return c > 0 ? BigInt::sub_mag(a, b, a.sign_) : BigInt::sub_mag(b, a, -a.sign_);
}

BigInt BigInt::mul_mag(const BigInt& a, const BigInt& b, int sign) {
    BigInt r;
    r.set_size(a.size_ + b.size_);
    u64* pr = r.limbs();
    std::memset(pr, 0, sizeof(u64) * r.size_);
    const u64* pa = a.limbs();
    const u64* pb = b.limbs();
    for (std::uint32_t i = 0; i < a.size_; ++i) {
        u64 carry = 0;
        u64 ai = pa[i];
        for (std::uint32_t j = 0; j < b.size_; ++j) {
            u128 cur = static_cast<u128>(ai) * pb[j] + pr[i + j] + carry;
            pr[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        pr[i + b.size_] += carry;
    }
    r.sign_ = sign;
    r.trim();
    return r;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    // single-limb fast path
    if (a.size_ == 1 && b.size_ == 1) {
        u128 p = static_cast<u128>(a.limbs()[0]) * b.limbs()[0];
        BigInt r;
        r.sign_ = a.sign_ * b.sign_;
        if (p >> 64) {
            r.size_ = 2;
            r.inline_[0] = static_cast<u64>(p);
            r.inline_[1] = static_cast<u64>(p >> 64);
        } else {
            r.size_ = 1;
            r.inline_[0] = static_cast<u64>(p);
        }
        return r;
    }
    return BigInt::mul_mag(a, b, a.sign_ * b.sign_);
}

std::size_t BigInt::bit_length() const {
    if (size_ == 0) return 0;
    u64 top = limbs()[size_ - 1];
    unsigned tb = 64 - static_cast<unsigned>(__builtin_clzll(top));
    return static_cast<std::size_t>(size_ - 1) * 64 + tb;
}

BigInt BigInt::shifted_left(unsigned bits) const {
    if (sign_ == 0 || bits == 0) return *this;
    unsigned limb_shift = bits / 64;
    unsigned bit_shift = bits % 64;
    BigInt r;
    r.set_size(size_ + limb_shift + 1);
    u64* pr = r.limbs();
    std::memset(pr, 0, sizeof(u64) * r.size_);
    const u64* p = limbs();
    for (std::uint32_t i = 0; i < size_; ++i) {
        pr[i + limb_shift] |= p[i] << bit_shift;
        if (bit_shift != 0)
            pr[i + limb_shift + 1] |= p[i] >> (64 - bit_shift);
    }
    r.sign_ = sign_;
    r.trim();
    return r;
}

BigInt BigInt::shifted_right(unsigned bits) const {
    if (sign_ == 0) return BigInt();
    unsigned limb_shift = bits / 64;
    unsigned bit_shift = bits % 64;
    if (limb_shift >= size_) return BigInt();
    BigInt r;
    r.set_size(size_ - limb_shift);
    const u64* p = limbs();
    u64* rp = r.limbs();
    for (std::uint32_t i = 0; i < r.size_; ++i) {
        u64 lo = p[i + limb_shift] >> bit_shift;
        u64 hi = (bit_shift && i + limb_shift + 1 < size_)
                     ? p[i + limb_shift + 1] << (64 - bit_shift)
                     : 0;
        rp[i] = lo | hi;
    }
    r.sign_ = sign_;
    r.trim();
    return r;
}

std::size_t BigInt::trailing_zero_bits() const {
    assert(sign_ != 0);
    const u64* p = limbs();
    std::size_t tz = 0;
    for (std::uint32_t i = 0; i < size_; ++i) {
        if (p[i] == 0) {
            tz += 64;
        } else {
            tz += static_cast<unsigned>(__builtin_ctzll(p[i]));
            break;
        }
    }
    return tz;
}

std::size_t BigInt::power_of_two_exponent() const {
    if (sign_ == 0) return static_cast<std::size_t>(-1);
    std::size_t tz = trailing_zero_bits();
    return tz + 1 == bit_length() ? tz : static_cast<std::size_t>(-1);
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b.abs();
    if (b.sign_ == 0) return a.abs();
    if (a.size_ <= 2 && b.size_ <= 2) {
        auto load = [](const BigInt& v) {
            u128 x = v.limbs()[0];
            if (v.size_ == 2) x |= static_cast<u128>(v.limbs()[1]) << 64;
            return x;
        };
        u128 x = load(a), y = load(b);
        // binary gcd: shifts and subtractions only
        unsigned tz_x = x & 0xffffffffffffffffULL
                            ? static_cast<unsigned>(__builtin_ctzll(static_cast<u64>(x)))
                            : 64 + static_cast<unsigned>(__builtin_ctzll(static_cast<u64>(x >> 64)));
        unsigned tz_y = y & 0xffffffffffffffffULL
                            ? static_cast<unsigned>(__builtin_ctzll(static_cast<u64>(y)))
                            : 64 + static_cast<unsigned>(__builtin_ctzll(static_cast<u64>(y >> 64)));
        unsigned shared = tz_x < tz_y ? tz_x : tz_y;
        x >>= tz_x;
        while (y) {
            y >>= (y & 0xffffffffffffffffULL)
                      ? static_cast<unsigned>(__builtin_ctzll(static_cast<u64>(y)))
                      : 64 + static_cast<unsigned>(__builtin_ctzll(static_cast<u64>(y >> 64)));
            if (x > y) {
                u128 t = x - y;
                x = y;
                y = t;
            } else {
                y -= x;
            }
        }
        u128 g = x << shared;
        BigInt out;
        out.sign_ = 1;
        if (g >> 64) {
            out.size_ = 2;
            out.inline_[0] = static_cast<u64>(g);
            out.inline_[1] = static_cast<u64>(g >> 64);
        } else {
            out.size_ = 1;
            out.inline_[0] = static_cast<u64>(g);
        }
        return out;
    }
    // shed limbs by Euclid steps, then finish in the two-limb path
    BigInt x = a.abs(), y = b.abs();
    if (cmp_mag(x, y) < 0) std::swap(x, y);
    while (y.size_ > 2) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    if (y.sign_ == 0) return x;
    if (x.size_ <= 2) return gcd(x, y);
    BigInt q, r;
    divmod(x, y, q, r);
    return gcd(y, r.abs());
}

u64 BigInt::div_small_inplace(u64 d) {
    u64* p = limbs();
    u64 rem = 0;
    for (std::uint32_t i = size_; i-- > 0;) {
        u128 cur = (static_cast<u128>(rem) << 64) | p[i];
        p[i] = static_cast<u64>(cur / d);
        rem = static_cast<u64>(cur % d);
    }
    trim();
    return rem;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    int cm = cmp_mag(a, b);
    if (cm < 0) {
        q = BigInt();
        r = a;
        return;
    }
    if (b.size_ == 1) {
        u64 d = b.limbs()[0];
        BigInt quo = a.abs();
        u64 rem = quo.div_small_inplace(d);
        quo.sign_ = quo.size_ ? a.sign_ * b.sign_ : 0;
        r = BigInt();
        if (rem) {
            r.sign_ = a.sign_;
            r.size_ = 1;
            r.inline_[0] = rem;
        }
        q = std::move(quo);
        return;
    }
    // Knuth algorithm D on 64-bit limbs (divisor has >= 2 limbs here)
    const std::uint32_t n = b.size_;
    const std::uint32_t m = a.size_ - n;
    const unsigned shift = static_cast<unsigned>(__builtin_clzll(b.limbs()[n - 1]));
    u64 un_stack[24], vn_stack[23];
    std::vector<u64> un_heap, vn_heap;
    u64* un = un_stack;
    u64* vn = vn_stack;
    if (a.size_ + 1 > 24) {
        un_heap.assign(a.size_ + 1, 0);
        vn_heap.assign(n, 0);
        un = un_heap.data();
        vn = vn_heap.data();
    } else {
        std::memset(un_stack, 0, sizeof(u64) * (a.size_ + 1));
        std::memset(vn_stack, 0, sizeof(u64) * n);
    }
    {
        const u64* ap = a.limbs();
        const u64* bp = b.limbs();
        if (shift == 0) {
            for (std::uint32_t i = 0; i < a.size_; ++i) un[i] = ap[i];
            for (std::uint32_t i = 0; i < n; ++i) vn[i] = bp[i];
        } else {
            un[a.size_] = ap[a.size_ - 1] >> (64 - shift);
            for (std::uint32_t i = a.size_; i-- > 1;)
                un[i] = (ap[i] << shift) | (ap[i - 1] >> (64 - shift));
            un[0] = ap[0] << shift;
            for (std::uint32_t i = n; i-- > 1;)
                vn[i] = (bp[i] << shift) | (bp[i - 1] >> (64 - shift));
            vn[0] = bp[0] << shift;
        }
    }
    BigInt quo;
    quo.set_size(m + 1);
    std::memset(quo.limbs(), 0, sizeof(u64) * quo.size_);
    const u64 vtop = vn[n - 1];
    const u64 vsecond = vn[n - 2];
    for (std::uint32_t j = m + 1; j-- > 0;) {
        u128 num = (static_cast<u128>(un[j + n]) << 64) | un[j + n - 1];
        u128 qhat = num / vtop;
        u128 rhat = num - qhat * vtop;
        while (qhat >> 64 ||
               static_cast<u128>(static_cast<u64>(qhat)) * vsecond >
                   ((rhat << 64) | un[j + n - 2])) {
            --qhat;
            rhat += vtop;
            if (rhat >> 64) break;
        }
        // multiply and subtract
        u64 qh = static_cast<u64>(qhat);
        u64 mul_carry = 0;
        u64 borrow = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            u128 p = static_cast<u128>(qh) * vn[i] + mul_carry;
            mul_carry = static_cast<u64>(p >> 64);
            u64 plo = static_cast<u64>(p);
            u64 cur = un[i + j];
            u64 t = cur - plo;
            u64 b1 = cur < plo;
            u64 t2 = t - borrow;
            u64 b2 = t < borrow;
            un[i + j] = t2;
            borrow = b1 | b2;
        }
        {
            u64 cur = un[j + n];
            u64 t = cur - mul_carry;
            u64 b1 = cur < mul_carry;
            u64 t2 = t - borrow;
            u64 b2 = t < borrow;
            un[j + n] = t2;
            borrow = b1 | b2;
        }
        if (borrow) {  // qhat was one too large; add the divisor back
            --qh;
            u64 carry = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                u128 s = static_cast<u128>(un[i + j]) + vn[i] + carry;
                un[i + j] = static_cast<u64>(s);
                carry = static_cast<u64>(s >> 64);
            }
            un[j + n] += carry;
        }
        quo.limbs()[j] = qh;
    }
    quo.sign_ = 1;
    quo.trim();
    quo.sign_ = quo.size_ ? a.sign_ * b.sign_ : 0;
    // denormalize the remainder
    BigInt rem;
    rem.set_size(n);
    {
        u64* rp = rem.limbs();
        if (shift == 0) {
            for (std::uint32_t i = 0; i < n; ++i) rp[i] = un[i];
        } else {
            for (std::uint32_t i = 0; i + 1 < n; ++i)
                rp[i] = (un[i] >> shift) | (un[i + 1] << (64 - shift));
            rp[n - 1] = un[n - 1] >> shift;
        }
    }
    rem.sign_ = 1;
    rem.trim();
    rem.sign_ = rem.size_ ? a.sign_ : 0;
    q = std::move(quo);
    r = std::move(rem);
}

BigInt BigInt::operator/(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

BigInt BigInt::fdiv(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    if (!r.is_zero() && (a.sign() < 0) != (b.sign() < 0)) q = q - BigInt(1);
    return q;
}

BigInt BigInt::from_string(const std::string& s) {
    std::size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    // consume in chunks of up to 18 decimal digits (always fits int64)
    while (i < s.size()) {
        std::size_t take = std::min<std::size_t>(18, s.size() - i);
        std::int64_t chunk = 0;
        std::int64_t pow = 1;
        for (std::size_t k = 0; k < take; ++k, ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit in numeral");
            chunk = chunk * 10 + (s[i] - '0');
            pow *= 10;
        }
        r = r * BigInt(pow) + BigInt(chunk);
    }
    if (sign < 0) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    BigInt t = abs();
    std::string out;
    while (!t.is_zero()) {
        u64 rem = t.div_small_inplace(10000000000000000000ULL);  // 10^19
        if (t.is_zero()) {
            out = std::to_string(rem) + out;
        } else {
            std::string part = std::to_string(rem);
            out = std::string(19 - part.size(), '0') + part + out;
        }
    }
    return sign_ < 0 ? "-" + out : out;
}

}  // namespace viscount
