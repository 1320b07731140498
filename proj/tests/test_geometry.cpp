#include "doctest.h"

#include <random>

#include "viscount/geometry.h"

using namespace viscount;

namespace {
Point pt(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }
Segment seg(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by,
            std::size_t id = 0) {
    return Segment{pt(ax, ay), pt(bx, by), id};
}
}  // namespace

TEST_CASE("orientation basics") {
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(2, 0)) == 0);
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == 1);
    CHECK(orientation(pt(0, 0), pt(1, 0), pt(1, -1)) == -1);
}

TEST_CASE("orientation antisymmetry and scale invariance") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> dist(-50, 50);
    std::uniform_int_distribution<std::int64_t> sc(1, 97);
    for (int i = 0; i < 500; ++i) {
        Point p = pt(dist(rng), dist(rng));
        Point q = pt(dist(rng), dist(rng));
        Point r = pt(dist(rng), dist(rng));
        int o = orientation(p, q, r);
        CHECK(orientation(p, r, q) == -o);
        CHECK(orientation(q, p, r) == -o);
        CHECK(orientation(q, r, p) == o);
        // multiply every coordinate by a common positive rational
        Rational s(sc(rng), sc(rng));
        auto scale = [&](const Point& a) { return Point{a.x * s, a.y * s}; };
        CHECK(orientation(scale(p), scale(q), scale(r)) == o);
    }
}

TEST_CASE("open segment blocking") {
    // proper crossing
    CHECK(open_segment_blocked(pt(0, 0), pt(2, 0), seg(1, -1, 1, 1)));
    // disjoint parallels
    CHECK_FALSE(open_segment_blocked(pt(0, 0), pt(2, 0), seg(0, 1, 2, 1)));
    // blocker endpoint inside the open segment
    CHECK(open_segment_blocked(pt(0, 0), pt(2, 0), seg(1, 0, 1, 1)));
    // touching only at p or q does not block
    CHECK_FALSE(open_segment_blocked(pt(0, 0), pt(2, 0), seg(0, 0, 0, 1)));
    CHECK_FALSE(open_segment_blocked(pt(0, 0), pt(2, 0), seg(2, 0, 3, 5)));
    // collinear overlap
    CHECK(open_segment_blocked(pt(0, 0), pt(4, 0), seg(1, 0, 2, 0)));
    CHECK(open_segment_blocked(pt(1, 0), pt(2, 0), seg(0, 0, 4, 0)));
    CHECK(open_segment_blocked(pt(0, 0), pt(2, 0), seg(0, 0, 2, 0)));
    CHECK_FALSE(open_segment_blocked(pt(0, 0), pt(1, 0), seg(1, 0, 2, 0)));
    CHECK_FALSE(open_segment_blocked(pt(0, 0), pt(1, 0), seg(2, 0, 3, 0)));
    // crossing exactly at q only
    CHECK_FALSE(open_segment_blocked(pt(0, 0), pt(2, 0), seg(2, -1, 2, 1)));
}

TEST_CASE("line through two points is normalized") {
    Line l = Line::through(pt(0, 0), pt(0, 5));  // x = 0
    CHECK(l.a == Rational(1));
    CHECK(l.b == Rational(0));
    CHECK(l.c == Rational(0));
    Line m = Line::through(pt(0, 1), pt(7, 1));  // y = 1
    CHECK(m.a == Rational(0));
    CHECK(m.b == Rational(1));
    CHECK(m.c == Rational(1));
    // same line from different point pairs compares equal
    CHECK(Line::through(pt(0, 0), pt(2, 2)) == Line::through(pt(5, 5), pt(-1, -1)));
}

TEST_CASE("line intersection") {
    Line x0 = Line::through(pt(0, 0), pt(0, 1));
    Line y0 = Line::through(pt(0, 0), pt(1, 0));
    auto p = line_intersection(x0, y0);
    REQUIRE(p.has_value());
    CHECK(*p == pt(0, 0));
    Line y1 = Line::through(pt(0, 1), pt(1, 1));
    CHECK_FALSE(line_intersection(y0, y1).has_value());
    CHECK_FALSE(line_intersection(y0, y0).has_value());
    Line d1 = Line::through(pt(0, 0), pt(1, 1));
    Line d2 = Line::through(pt(0, 2), pt(2, 0));
    auto q = line_intersection(d1, d2);
    REQUIRE(q.has_value());
    CHECK(*q == pt(1, 1));
}

TEST_CASE("ray-segment first hit") {
    Ray r{pt(0, 0), Rational(1), Rational(0)};
    auto h = ray_segment_first_hit(r, seg(2, -1, 2, 1, 4));
    REQUIRE(h.has_value());
    CHECK(h->id == 4);
    CHECK(h->point == pt(2, 0));
    CHECK(h->param == Rational(2));
    CHECK_FALSE(ray_segment_first_hit(r, seg(-2, -1, -2, 1)).has_value());
    CHECK_FALSE(ray_segment_first_hit(r, seg(1, 1, 2, 2)).has_value());
    // collinear ahead
    auto c = ray_segment_first_hit(r, seg(3, 0, 5, 0, 7));
    REQUIRE(c.has_value());
    CHECK(c->param == Rational(3));
    // collinear behind
    CHECK_FALSE(ray_segment_first_hit(r, seg(-3, 0, -5, 0)).has_value());
    // touch exactly at origin from behind
    CHECK_FALSE(ray_segment_first_hit(r, seg(0, 0, -2, 0)).has_value());
    // transversal through the origin: strictly positive params only
    CHECK_FALSE(ray_segment_first_hit(r, seg(0, -1, 0, 1)).has_value());
}

TEST_CASE("direction comparison is a strict total order on distinct directions") {
    std::vector<std::pair<Rational, Rational>> dirs;
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::int64_t> dist(-20, 20);
    for (int i = 0; i < 60; ++i) {
        std::int64_t x = dist(rng), y = dist(rng);
        if (x == 0 && y == 0) continue;
        dirs.emplace_back(Rational(x), Rational(y));
    }
    for (const auto& u : dirs) {
        for (const auto& v : dirs) {
            int c = compare_directions_ccw(u.first, u.second, v.first, v.second);
            int cr = compare_directions_ccw(v.first, v.second, u.first, u.second);
            CHECK(c == -cr);
            if (c == 0) {
                // equal directions: positive multiples of each other
                CHECK(cross_sign(u.first, u.second, v.first, v.second) == 0);
                CHECK(dot_sign(u.first, u.second, v.first, v.second) > 0);
            }
        }
    }
    // (1,0) is the global minimum
    for (const auto& u : dirs) {
        if (compare_directions_ccw(Rational(1), Rational(0), u.first, u.second) == 0)
            continue;
        CHECK(compare_directions_ccw(Rational(1), Rational(0), u.first, u.second) < 0);
    }
}
