#include "doctest.h"

#include "viscount/scene.h"

using namespace viscount;

namespace {
Point pt(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }
}

TEST_CASE("load a two segment scene") {
    Scene s = load_scene("0 0 1 0\n0 1 1 1\n");
    REQUIRE(s.size() == 2);
    CHECK(s[0].a == pt(0, 0));
    CHECK(s[0].b == pt(1, 0));
    CHECK(s[1].id == 1);
}

TEST_CASE("load rejects crossing segments") {
    CHECK_THROWS_AS(load_scene("0 0 2 2\n0 2 2 0\n"), SceneParseError);
    // touching interiors is also a violation
    CHECK_THROWS_AS(load_scene("0 0 2 0\n1 0 1 1\n"), SceneParseError);
    // shared endpoints are allowed
    CHECK_NOTHROW(load_scene("0 0 1 0\n1 0 1 1\n"));
}

TEST_CASE("load rational coordinates") {
    Scene s = load_scene("1/2 0 3/2 0\n");
    REQUIRE(s.size() == 1);
    CHECK(s[0].a.x == Rational(1, 2));
    CHECK(s[0].b.x == Rational(3, 2));
}

TEST_CASE("parse errors carry line numbers") {
    try {
        load_scene("0 0 1 0\n# fine\n0 0 bogus 1\n");
        FAIL("expected parse error");
    } catch (const SceneParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
        load_scene("0 0 1\n");
        FAIL("expected parse error");
    } catch (const SceneParseError& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("save is canonical and round trips") {
    Scene s = load_scene("# comment\n2/4 0 3/2 0\n\n0 2 4 6\n");
    std::string text = save_scene(s);
    CHECK(text == "1/2 0 3/2 0\n0 2 4 6\n");
    Scene t = load_scene(text);
    CHECK(save_scene(t) == text);
}

TEST_CASE("validate reports collinear endpoints") {
    Scene s = load_scene("0 0 1 0\n2 0 3 0\n");
    DegeneracyReport rep = validate_nondegenerate(s);
    CHECK_FALSE(rep.nondegenerate());
    CHECK(rep.crossing_pairs.empty());
    CHECK(rep.collinear_triples.size() == 4);  // C(4,3) collinear endpoint triples
    // four collinear endpoints also span only one line, so no parallel pairs
    CHECK(rep.parallel_endpoint_line_pairs.empty());
}

TEST_CASE("validate clean scene") {
    Scene s = load_scene("0 0 1 1\n0 1 1 3\n");
    DegeneracyReport rep = validate_nondegenerate(s);
    CHECK(rep.nondegenerate());
}

TEST_CASE("shared endpoint is not a crossing, collinearity still checked") {
    Scene s = load_scene("0 0 1 0\n1 0 1 1\n");
    DegeneracyReport rep = validate_nondegenerate(s);
    CHECK(rep.crossing_pairs.empty());
    // three distinct positions, not collinear
    CHECK(rep.collinear_triples.empty());
    // but the two axis-parallel pairs both appear among endpoint-pair lines:
    // lines x=1 (two ways) coincide, so parallelism comes from distinct lines
    Scene t = load_scene("0 0 1 0\n0 1 1 2\n5 0 6 1\n");
    DegeneracyReport rt = validate_nondegenerate(t);
    CHECK_FALSE(rt.parallel_endpoint_line_pairs.empty());
}

TEST_CASE("scene ray shooting") {
    Scene s = load_scene("2 -1 2 1\n3 -1 3 1\n");
    Ray r{pt(0, 0), Rational(1), Rational(0)};
    auto hit = ray_first_hit(s, r);
    REQUIRE(hit.has_value());
    CHECK(hit->first == 0);
    CHECK(hit->second == pt(2, 0));
    auto hit2 = ray_first_hit(s, r, {0});
    REQUIRE(hit2.has_value());
    CHECK(hit2->first == 1);
    CHECK(hit2->second == pt(3, 0));
    Ray up{pt(0, 0), Rational(0), Rational(1)};
    CHECK_FALSE(ray_first_hit(s, up).has_value());
}

TEST_CASE("ray shooting tie goes to the smallest id") {
    // both segments share the endpoint (2,0) on the ray
    Scene s = load_scene("2 0 3 1\n2 0 3 -1\n");
    Ray r{pt(0, 0), Rational(1), Rational(0)};
    auto hit = ray_first_hit(s, r);
    REQUIRE(hit.has_value());
    CHECK(hit->first == 0);
    CHECK(hit->second == pt(2, 0));
}
