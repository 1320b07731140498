#include "doctest.h"

#include <cstdint>
#include <random>

#include "viscount/bigint.h"

using viscount::BigInt;

TEST_CASE("bigint small arithmetic matches int64") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 3000; ++i) {
        std::int64_t a = dist(rng);
        std::int64_t b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)).as_int64() == a + b);
        CHECK((BigInt(a) - BigInt(b)).as_int64() == a - b);
        CHECK((BigInt(a) * BigInt(b)).as_int64() == a * b);
        CHECK(BigInt(a).cmp(BigInt(b)) == (a < b ? -1 : a > b ? 1 : 0));
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(BigInt(a), BigInt(b), q, r);
            CHECK(q.as_int64() == a / b);
            CHECK(r.as_int64() == a % b);
        }
    }
}

TEST_CASE("bigint int64 boundary values") {
    BigInt mn(INT64_MIN);
    BigInt mx(INT64_MAX);
    CHECK(mn.fits_int64());
    CHECK(mn.as_int64() == INT64_MIN);
    CHECK(mx.as_int64() == INT64_MAX);
    CHECK((mn - BigInt(1)).fits_int64() == false);
    CHECK((mx + BigInt(1)).fits_int64() == false);
    CHECK(((mn - BigInt(1)) + BigInt(1)) == mn);
}

TEST_CASE("bigint large multiplication identities") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 300; ++i) {
        BigInt a(dist(rng));
        BigInt b(dist(rng));
        // grow them well past inline storage
        for (int k = 0; k < 5; ++k) {
            a = a * a + BigInt(dist(rng));
            b = b * b + BigInt(dist(rng));
        }
        BigInt lhs = (a + b) * (a - b);
        BigInt rhs = a * a - b * b;
        CHECK(lhs == rhs);
        BigInt q, r;
        if (!b.is_zero()) {
            BigInt::divmod(a, b, q, r);
            CHECK(q * b + r == a);
            CHECK(r.abs() < b.abs());
        }
    }
}

TEST_CASE("bigint gcd") {
    CHECK(BigInt::gcd(BigInt(0), BigInt(0)) == BigInt(0));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-5)) == BigInt(5));
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::int64_t> dist(1, 1000000);
    for (int i = 0; i < 500; ++i) {
        std::int64_t a = dist(rng), b = dist(rng), g = dist(rng);
        BigInt ga = BigInt(a) * BigInt(g);
        BigInt gb = BigInt(b) * BigInt(g);
        BigInt got = BigInt::gcd(ga, gb);
        CHECK((ga % got).is_zero());
        CHECK((gb % got).is_zero());
        CHECK((got % BigInt(g)).is_zero());
        // also exercise multi-limb operands
        BigInt big = ga * gb * ga;
        CHECK((big % BigInt::gcd(big, gb)).is_zero());
    }
}

TEST_CASE("bigint multi-limb division stress") {
    std::mt19937_64 rng(23);
    auto rnd_limbs = [&](int limbs) {
        BigInt v(0);
        for (int i = 0; i < limbs; ++i) {
            v = v.shifted_left(64);
            std::uint64_t limb = rng();
            v = v + BigInt(static_cast<std::int64_t>(limb >> 1)) +
                BigInt(static_cast<std::int64_t>(limb & 1));
        }
        return v;
    };
    for (int round = 0; round < 4000; ++round) {
        int la = 2 + static_cast<int>(rng() % 5);
        int lb = 2 + static_cast<int>(rng() % 3);
        BigInt a = rnd_limbs(la);
        BigInt b = rnd_limbs(lb);
        if (b.is_zero()) continue;
        if (rng() & 1) a = -a;
        if (rng() & 2) b = -b;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        REQUIRE(q * b + r == a);
        REQUIRE(r.abs() < b.abs());
        if (!r.is_zero()) REQUIRE(r.sign() == a.sign());
    }
    // quotient-digit correction paths like the classic 0x7fff.. / 0x8000..
    BigInt top = BigInt(1).shifted_left(192) - BigInt(1);
    BigInt div = BigInt(1).shifted_left(128) + BigInt(3);
    BigInt q, r;
    BigInt::divmod(top, div, q, r);
    CHECK(q * div + r == top);
    CHECK(r.abs() < div.abs());
}

TEST_CASE("bigint decimal round trip") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> dist(-1000000000LL, 1000000000LL);
    for (int i = 0; i < 200; ++i) {
        BigInt a(dist(rng));
        for (int k = 0; k < 4; ++k) a = a * BigInt(dist(rng)) + BigInt(dist(rng));
        CHECK(BigInt::from_string(a.to_string()) == a);
    }
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt::from_string("00123") == BigInt(123));
}

TEST_CASE("bigint floor division") {
    CHECK(BigInt::fdiv(BigInt(7), BigInt(2)) == BigInt(3));
    CHECK(BigInt::fdiv(BigInt(-7), BigInt(2)) == BigInt(-4));
    CHECK(BigInt::fdiv(BigInt(7), BigInt(-2)) == BigInt(-4));
    CHECK(BigInt::fdiv(BigInt(-7), BigInt(-2)) == BigInt(3));
    CHECK(BigInt::fdiv(BigInt(6), BigInt(3)) == BigInt(2));
    CHECK(BigInt::fdiv(BigInt(-6), BigInt(3)) == BigInt(-2));
}

TEST_CASE("bigint to_double") {
    CHECK(BigInt(12345).to_double() == doctest::Approx(12345.0));
    CHECK(BigInt(-7).to_double() == doctest::Approx(-7.0));
    BigInt big = BigInt(1).shifted_left(100);
    CHECK(big.to_double() == doctest::Approx(1.2676506002282294e30));
}
