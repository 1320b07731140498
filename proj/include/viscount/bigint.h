#ifndef VISCOUNT_BIGINT_H
#define VISCOUNT_BIGINT_H

#include <cstdint>
#include <string>
#include <utility>

namespace viscount {

// Arbitrary-precision signed integer.
//
// Magnitude is a little-endian array of 64-bit limbs.  Values of up to
// three limbs (|x| < 2^192) live inline; larger magnitudes spill to the
// heap.  All scene coordinates and first-order predicates fit the inline
// representation, so the heap path only triggers deep in arrangement
// construction.
class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v);
    BigInt(const BigInt& o);
    BigInt(BigInt&& o) noexcept;
    BigInt& operator=(const BigInt& o);
    BigInt& operator=(BigInt&& o) noexcept;
    ~BigInt();

    static BigInt from_string(const std::string& s);  // decimal, optional '-'

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_one() const;
    bool fits_int64() const;
    std::int64_t as_int64() const;  // pre: fits_int64()
    double to_double() const;

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    // Truncated division: q = trunc(a/b), r = a - q*b (sign of r = sign of a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;

    // Floor division, used by rational floor and continued fractions.
    static BigInt fdiv(const BigInt& a, const BigInt& b);

    static BigInt gcd(const BigInt& a, const BigInt& b);  // >= 0

    BigInt shifted_left(unsigned bits) const;
    BigInt shifted_right(unsigned bits) const;

    // exponent e when *this == +-2^e, otherwise SIZE_MAX
    std::size_t power_of_two_exponent() const;
    std::size_t trailing_zero_bits() const;  // pre: nonzero

    // -1 / 0 / +1 as *this compares to o.
    int cmp(const BigInt& o) const;
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.cmp(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.cmp(b) >= 0; }

    std::string to_string() const;

    std::size_t bit_length() const;

  private:
    static constexpr std::uint32_t kInlineLimbs = 3;

    int sign_ = 0;               // -1, 0, +1
    std::uint32_t size_ = 0;     // limbs in use (0 iff sign_ == 0)
    std::uint32_t cap_ = kInlineLimbs;
    union {
        std::uint64_t inline_[kInlineLimbs];
        std::uint64_t* heap_;
    };

    bool on_heap() const { return cap_ > kInlineLimbs; }
    const std::uint64_t* limbs() const { return on_heap() ? heap_ : inline_; }
    std::uint64_t* limbs() { return on_heap() ? heap_ : inline_; }

    void reserve(std::uint32_t n);
    void set_size(std::uint32_t n);  // reserves and sets size_, limbs uninitialized
    void trim();                     // drop leading zero limbs, fix sign for 0
    void assign_copy(const BigInt& o);
    void steal(BigInt&& o) noexcept;

    static int cmp_mag(const BigInt& a, const BigInt& b);
    static BigInt add_mag(const BigInt& a, const BigInt& b, int sign);
    static BigInt sub_mag(const BigInt& big, const BigInt& small, int sign);
    static BigInt mul_mag(const BigInt& a, const BigInt& b, int sign);

    std::uint64_t div_small_inplace(std::uint64_t d);  // returns remainder
};

}  // namespace viscount

#endif
