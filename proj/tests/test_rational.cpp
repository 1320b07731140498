#include "doctest.h"

#include <random>

#include "viscount/rational.h"

using viscount::BigInt;
using viscount::Rational;

TEST_CASE("rational canonical form") {
    Rational r(6, -4);
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(2));
    CHECK(Rational(0, 5).den() == BigInt(1));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::from_string("3/6") == Rational(1, 2));
    CHECK(Rational::from_string("-42") == Rational(-42));
    CHECK(Rational(1, 2).to_string() == "1/2");
    CHECK(Rational(-8, 2).to_string() == "-4");
    CHECK_THROWS(Rational::from_string("1/0"));
    CHECK_THROWS(Rational::from_string("1/-2"));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
    for (int i = 0; i < 500; ++i) {
        std::int64_t d = dist(rng);
        if (d == 0) continue;
        Rational r(dist(rng), d);
        CHECK(Rational::from_string(r.to_string()) == r);
    }
}

TEST_CASE("rational field arithmetic sampled") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
    auto rnd = [&]() {
        std::int64_t d = 0;
        while (d == 0) d = dist(rng);
        return Rational(dist(rng), d);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("rational ordering") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::int64_t> dist(-500, 500);
    auto rnd = [&]() {
        std::int64_t d = 0;
        while (d == 0) d = dist(rng);
        return Rational(dist(rng), d);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = rnd(), b = rnd();
        CHECK(a.cmp(b) == -b.cmp(a));
        if (a < b) CHECK(a.to_double() <= b.to_double() + 1e-9);
        Rational m = Rational::midpoint(a, b);
        if (a < b) {
            CHECK(a < m);
            CHECK(m < b);
        }
    }
}

TEST_CASE("rational floor") {
    CHECK(Rational(7, 2).floor() == BigInt(3));
    CHECK(Rational(-7, 2).floor() == BigInt(-4));
    CHECK(Rational(4).floor() == BigInt(4));
    CHECK(Rational(-4).floor() == BigInt(-4));
}

TEST_CASE("simplest rational strictly inside an interval") {
    CHECK(Rational::simplest_between(Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(Rational::simplest_between(Rational(3, 2), Rational(7, 2)) == Rational(2));
    CHECK(Rational::simplest_between(Rational(-1), Rational(1)) == Rational(0));
    CHECK(Rational::simplest_between(Rational(-5, 2), Rational(-3, 2)) == Rational(-2));
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
    for (int i = 0; i < 1000; ++i) {
        std::int64_t d1 = dist(rng), d2 = dist(rng);
        if (d1 == 0 || d2 == 0) continue;
        Rational a(dist(rng), d1), b(dist(rng), d2);
        if (a == b) continue;
        Rational lo = a < b ? a : b;
        Rational hi = a < b ? b : a;
        Rational m = Rational::simplest_between(lo, hi);
        CHECK(lo < m);
        CHECK(m < hi);
        // simplicity: denominator no larger than both endpoints' when the
        // interval is generic; at minimum it never exceeds the sum
        CHECK(m.den() <= lo.den() + hi.den());
    }
}
