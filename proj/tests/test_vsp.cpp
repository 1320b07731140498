#include "doctest.h"

#include <random>

#include "viscount/scene_gen.h"
#include "viscount/visibility.h"
#include "viscount/vsp.h"

using namespace viscount;

namespace {

Point pt(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }

Scene scene3() { return load_scene("0 0 4 0\n6 1 6 5\n1 6 5 6\n"); }

Point random_gp_point_in_frame(std::mt19937_64& rng, const Scene& scene,
                               const Subdivision& sub) {
    std::uniform_int_distribution<std::int64_t> c(-8 * 128, 16 * 128);
    while (true) {
        Point p{Rational(c(rng), 128), Rational(c(rng), 128)};
        if (!sub.inside_frame(p)) continue;
        if (!in_general_position(scene, p)) continue;
        if (sub.locate(p).on_boundary) continue;
        return p;
    }
}

}  // namespace

TEST_CASE("full candidate line counts") {
    Scene one = load_scene("0 0 1 2\n");
    CHECK(candidate_lines_full(one).size() == 1);
    Scene two = load_scene("0 0 1 2\n3 0 4 1\n");
    CHECK(candidate_lines_full(two).size() == 6);  // C(4,2)
}

TEST_CASE("pruned pieces of a single segment") {
    Scene one = load_scene("0 0 1 2\n");
    PrunedLineSet pruned = candidate_pieces_pruned(one);
    CHECK(pruned.supporting.size() == 1);
    CHECK(pruned.pieces.empty());  // only the same-segment pair exists
    CHECK(pruned.graph_edges == 1);
}

TEST_CASE("pruned ray is cut at a blocking segment") {
    // endpoints (0,0) and (2,0) see each other; the ray past (2,0) runs into
    // the vertical blocker x = 4
    Scene s = load_scene("0 0 0 1\n2 0 2 1\n4 -5 4 5\n");
    PrunedLineSet pruned = candidate_pieces_pruned(s);
    bool found_cut = false;
    for (const PrunedPiece& p : pruned.pieces) {
        if (p.piece.type != Curve::Type::segment) continue;
        if (p.cut && p.cut->x == Rational(4)) found_cut = true;
    }
    CHECK(found_cut);
    // piece budget: at most two rays per cross-segment visible pair
    CHECK(pruned.pieces.size() <= 2 * pruned.graph_edges);
}

TEST_CASE("SCENE3 vsp carries counts 1..3 and answers queries") {
    Scene s = scene3();
    VspStructure vsp = build_vsp(s, VspMode::full);
    CHECK(vsp.subdivision.euler_ok());
    std::set<std::uint32_t> seen(vsp.face_count.begin(), vsp.face_count.end());
    CHECK(seen.count(3) == 1);
    CHECK(*std::min_element(vsp.face_count.begin(), vsp.face_count.end()) < 3);
    CHECK(vsp_query(vsp, pt(3, 3)) == 3);
    CHECK(vsp_query(vsp, pt(3, -5)) == 2);
}

TEST_CASE("single segment vsp") {
    Scene s = load_scene("0 0 1 2\n");
    VspStructure vsp = build_vsp(s, VspMode::full);
    for (std::uint32_t c : vsp.face_count) CHECK(c == 1);
    CHECK(vsp_query(vsp, pt(5, 5)) == 1);
}

TEST_CASE("vsp boundary query is an error") {
    Scene s = scene3();
    VspStructure vsp = build_vsp(s, VspMode::full);
    // (5,0) lies on the supporting line of segment 0, an arrangement edge
    CHECK_THROWS_AS(vsp_query(vsp, pt(5, 0)), BoundaryQueryError);
}

TEST_CASE("pruned vsp is no larger and answers identically") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        GenResult gen = generate({SceneKind::A, 9, seed});
        const Scene& s = gen.scene;
        VspStructure full = build_vsp(s, VspMode::full);
        VspStructure pruned = build_vsp(s, VspMode::pruned);
        CHECK(pruned.size() <= full.size());
        VisibilityGraph vg = visibility_graph(s);
        std::size_t complete = 2 * s.size() * (2 * s.size() - 1) / 2;
        if (vg.edge_count() < complete) CHECK(pruned.size() < full.size());
        for (int k = 0; k < 60; ++k) {
            Point p = random_gp_point_in_frame(rng, s, pruned.subdivision);
            if (!full.subdivision.inside_frame(p)) continue;
            if (full.subdivision.locate(p).on_boundary) continue;
            std::size_t want = visibility_count(s, p);
            CAPTURE(seed);
            CAPTURE(k);
            CHECK(vsp_query(full, p) == want);
            CHECK(vsp_query(pruned, p) == want);
        }
    }
}

TEST_CASE("face constancy at five interior samples") {
    GenResult gen = generate({SceneKind::A, 9, 5});
    const Scene& s = gen.scene;
    VspStructure vsp = build_vsp(s, VspMode::pruned);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, vsp.subdivision.face_count() - 1);
    for (int round = 0; round < 12; ++round) {
        std::size_t f = pick(rng);
        std::set<std::size_t> base;
        for (unsigned attempt = 0; attempt < 5; ++attempt) {
            Point p = vsp.subdivision.interior_point(f, attempt);
            auto vs = visible_set(s, p).visible;
            if (attempt == 0)
                base = vs;
            else
                CHECK(base == vs);
        }
    }
}

TEST_CASE("keep-drop test only discards silent pieces") {
    GenResult gen = generate({SceneKind::A, 4, 2});
    const Scene& s = gen.scene;
    PrunedLineSet plain = candidate_pieces_pruned(s, false);
    PrunedLineSet tested = candidate_pieces_pruned(s, true);
    CHECK(tested.pieces.size() <= plain.pieces.size());
    VspStructure a = build_vsp(s, VspMode::pruned, false);
    VspStructure b = build_vsp(s, VspMode::pruned, true);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 50; ++k) {
        Point p = random_gp_point_in_frame(rng, s, a.subdivision);
        if (!b.subdivision.inside_frame(p)) continue;
        if (b.subdivision.locate(p).on_boundary) continue;
        CHECK(vsp_query(a, p) == vsp_query(b, p));
        CHECK(vsp_query(a, p) == visibility_count(s, p));
    }
}

TEST_CASE("coarsening at k=0 keeps every separating edge and stays exact") {
    Scene s = scene3();
    auto vsp = std::make_shared<VspStructure>(build_vsp(s, VspMode::full));
    RelaxedVsp r0 = coarsen_vsp(vsp, 0);
    CHECK(r0.size() == r0.separating_edges);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 80; ++k) {
        Point p = random_gp_point_in_frame(rng, s, vsp->subdivision);
        CHECK(relaxed_query(r0, p) == vsp_query(*vsp, p));
    }
}

TEST_CASE("large k collapses to one super face per component") {
    Scene s = scene3();
    auto vsp = std::make_shared<VspStructure>(build_vsp(s, VspMode::full));
    std::uint32_t cmax = *std::max_element(vsp->face_count.begin(), vsp->face_count.end());
    std::uint32_t cmin = *std::min_element(vsp->face_count.begin(), vsp->face_count.end());
    RelaxedVsp r = coarsen_vsp(vsp, cmax - cmin);
    CHECK(r.size() == 0);
    std::set<std::uint32_t> supers(r.super_of.begin(), r.super_of.end());
    CHECK(supers.size() == 1);
}

TEST_CASE("relaxed queries stay within k of the truth") {
    std::mt19937_64 rng(99);
    Scene s = scene3();
    auto vsp = std::make_shared<VspStructure>(build_vsp(s, VspMode::full));
    for (std::size_t k : {std::size_t(1), std::size_t(2)}) {
        RelaxedVsp r = coarsen_vsp(vsp, k);
        CHECK(r.size() <= r.separating_edges / (k + 1));
        for (int i = 0; i < 120; ++i) {
            Point p = random_gp_point_in_frame(rng, s, vsp->subdivision);
            std::size_t truth = visibility_count(s, p);
            std::size_t got = relaxed_query(r, p);
            CAPTURE(k);
            CHECK((got <= truth + k && truth <= got + k));
        }
    }
}
