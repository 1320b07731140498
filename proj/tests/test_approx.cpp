#include "doctest.h"

#include <random>

#include "viscount/approx.h"
#include "viscount/visibility.h"

#include "../src/shadow_labeler.h"

using namespace viscount;

namespace {
Point pt(std::int64_t x, std::int64_t y) { return Point{Rational(x), Rational(y)}; }

Point random_gp_point(std::mt19937_64& rng, const Scene& scene) {
    std::uniform_int_distribution<std::int64_t> c(-2 * 1024, 8 * 1024);
    while (true) {
        Point p{Rational(c(rng), 1024), Rational(c(rng), 1024)};
        if (in_general_position(scene, p)) return p;
    }
}
}  // namespace

TEST_CASE("chernoff sample sizes") {
    CHECK(chernoff_sample_size(Rational(1, 2), Rational(1, 2)) == 3);
    CHECK(chernoff_sample_size(Rational(1, 10), Rational(1, 20)) == 185);
    CHECK_THROWS_AS(chernoff_sample_size(Rational(0), Rational(1, 2)),
                    std::domain_error);
    CHECK_THROWS_AS(chernoff_sample_size(Rational(1, 2), Rational(1)),
                    std::domain_error);
    // minimality: m satisfies the tail bound, m-1 does not
    for (auto [dn, dd, pn, pd] :
         {std::array<int, 4>{1, 3, 1, 4}, {2, 5, 1, 10}, {9, 10, 1, 2}}) {
        Rational delta(dn, dd), p(pn, pd);
        std::size_t m = chernoff_sample_size(delta, p);
        double d = delta.to_double(), pp = p.to_double();
        CHECK(2 * std::exp(-2.0 * double(m) * d * d) <= pp + 1e-12);
        if (m > 1)
            CHECK(2 * std::exp(-2.0 * double(m - 1) * d * d) > pp - 1e-12);
    }
}

TEST_CASE("vc sample sizes") {
    CHECK(vc_sample_size(256, Rational(1, 4), Rational(1, 20), Rational(1)) == 3072);
    CHECK(vc_sample_size(1024, Rational(1, 10), Rational(1, 20), Rational(1)) >=
          vc_sample_size(64, Rational(1, 10), Rational(1, 20), Rational(1)));
    CHECK_THROWS_AS(vc_sample_size(1, Rational(1, 4), Rational(1, 2), Rational(1)),
                    std::domain_error);
    CHECK(practical_sample_size(1024) == 1000);
    CHECK(practical_sample_size(16) == 160);
}

TEST_CASE("draw_sample basics") {
    Scene s = load_scene("0 0 1 0\n");
    CHECK_THROWS_AS(draw_sample(s, 0, 1), std::invalid_argument);
    auto one = draw_sample(s, 5, 9);
    CHECK(one == std::vector<std::size_t>(5, 0));
    GenResult g = generate({SceneKind::A, 16, 3});
    CHECK(draw_sample(g.scene, 40, 7) == draw_sample(g.scene, 40, 7));
    CHECK(draw_sample(g.scene, 40, 7) != draw_sample(g.scene, 40, 8));
}

TEST_CASE("sample_estimate identities") {
    GenResult g = generate({SceneKind::A, 9, 4});
    const Scene& s = g.scene;
    std::vector<std::size_t> whole;
    for (std::size_t i = 0; i < s.size(); ++i) whole.push_back(i);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        Point p = random_gp_point(rng, s);
        Rational est = sample_estimate(s, whole, p);
        CHECK(est == Rational(static_cast<std::int64_t>(visibility_count(s, p)),
                              static_cast<std::int64_t>(s.size())));
    }
    Scene single = load_scene("0 0 1 1\n");
    CHECK(sample_estimate(single, {0, 0, 0}, pt(5, 0)) == Rational(1));
}

TEST_CASE("shadow route matches the sweep route") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::int64_t> c(0, 8 * 64);
    for (int round = 0; round < 120; ++round) {
        // random occluders plus a random disjoint target
        std::vector<Segment> segs;
        int guard = 0;
        while (segs.size() < 5 && ++guard < 500) {
            Segment s;
            s.a = Point{Rational(c(rng), 64), Rational(c(rng), 64)};
            s.b = Point{Rational(c(rng), 64), Rational(c(rng), 64)};
            if (s.a == s.b) continue;
            bool ok = true;
            for (const Segment& t : segs)
                if (segments_conflict(s, t)) ok = false;
            if (!ok) continue;
            s.id = segs.size();
            segs.push_back(s);
        }
        Segment target = segs.back();
        segs.pop_back();
        Scene occluders(segs);
        Point p = random_gp_point(rng, occluders.with_extra(target));
        if (orientation(target.a, target.b, p) == 0) continue;
        bool sweep = is_target_visible(occluders, p, target);
        bool shadow = target_visible_shadows(occluders, p, target.a, target.b);
        ShadowLabeler labeler(occluders, target.a, target.b);
        CAPTURE(round);
        CAPTURE(save_scene(occluders));
        REQUIRE(sweep == shadow);
        REQUIRE(sweep == labeler.visible(p));
    }
}

TEST_CASE("target structure basics") {
    GenResult g = generate({SceneKind::A, 9, 1});
    const Scene& s = g.scene;
    Segment t = s[4];
    TargetStructure one = build_target_structure(s, t, 1);
    CHECK(one.pieces.size() == 1);
    // empty occluders: every face visible
    Scene empty;
    Segment free_t{pt(0, 0), pt(4, 1), 0};
    TargetStructure et = build_target_structure(empty, free_t, 3);
    CHECK(et.pieces.size() == 3);
    for (const auto& piece : et.pieces)
        for (char v : piece.face_visible) CHECK(v == 1);
}

TEST_CASE("target query counts one location per piece") {
    GenResult g = generate({SceneKind::A, 4, 2});
    const Scene& s = g.scene;
    Segment t = s[2];
    for (std::size_t ell : {std::size_t(1), std::size_t(3)}) {
        TargetStructure ts = build_target_structure(s, t, ell);
        CHECK(ts.pieces.size() == ell);
        std::uint64_t before = ts.locate_calls();
        std::mt19937_64 rng(9);
        Point p = random_gp_point(rng, s);
        (void)target_query(ts, p);
        CHECK(ts.locate_calls() - before == ell);
    }
}

TEST_CASE("ell-invariance and agreement with is_target_visible") {
    std::mt19937_64 rng(21);
    GenResult g = generate({SceneKind::A, 9, 6});
    const Scene& s = g.scene;
    Segment t = s[0];
    Scene occluders = s.without(0);
    TargetStructure t1 = build_target_structure(s, t, 1);
    TargetStructure t3 = build_target_structure(s, t, 3);
    TargetStructure t9 = build_target_structure(s, t, 9);
    // per-piece split-line budget
    for (const auto& ts : {std::cref(t1), std::cref(t3), std::cref(t9)}) {
        std::size_t budget =
            (ts.get().lines_hitting_target + ts.get().ell - 1) / ts.get().ell;
        for (const auto& piece : ts.get().pieces)
            CHECK(piece.candidate_lines <= budget);
    }
    int checked = 0;
    for (int k = 0; k < 60 && checked < 25; ++k) {
        Point p = random_gp_point(rng, s);
        bool want;
        try {
            want = is_target_visible(occluders, p, t);
        } catch (const ViewpointOnSegmentError&) {
            continue;
        }
        try {
            bool q1 = target_query(t1, p);
            bool q3 = target_query(t3, p);
            bool q9 = target_query(t9, p);
            CAPTURE(k);
            CHECK(q1 == want);
            CHECK(q3 == want);
            CHECK(q9 == want);
            ++checked;
        } catch (const BoundaryQueryError&) {
            continue;
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("peephole target structure sees through gap pairs") {
    GenResult g = generate({SceneKind::peephole, 2, 3});
    const Scene& s = g.scene;
    std::size_t target_id = (*g.targets)[0];
    Segment t = s[target_id];
    TargetStructure ts = build_target_structure(s, t, 2);
    Point see = peephole_gap_probe(2, 0);
    Point pocket = peephole_pocket_probe(2);
    Scene occluders = s.without(target_id);
    CHECK(target_query(ts, see) == is_target_visible(occluders, see, t));
    CHECK(target_query(ts, see));
    CHECK_FALSE(target_query(ts, pocket));
}

TEST_CASE("approx counter equals sample_estimate exactly") {
    GenResult g = generate({SceneKind::A, 9, 8});
    const Scene& s = g.scene;
    SampleConfig cfg;
    cfg.explicit_m = 12;
    cfg.seed = 42;
    ApproxCounter counter = build_approx_counter(s, cfg, 2);
    CHECK(counter.sample_size() == 12);
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int k = 0; k < 40 && checked < 15; ++k) {
        Point p = random_gp_point(rng, s);
        try {
            Rational via_structure = approx_query(counter, p);
            Rational direct = sample_estimate(s, counter.sample, p);
            CAPTURE(k);
            CHECK(via_structure == direct);
            ++checked;
        } catch (const BoundaryQueryError&) {
            continue;
        }
    }
    CHECK(checked >= 10);
    // single-segment scene: the counter always answers one
    Scene single = load_scene("3 3 4 5\n");
    SampleConfig c1;
    c1.explicit_m = 4;
    ApproxCounter cs = build_approx_counter(single, c1, 1);
    CHECK(approx_query(cs, pt(0, 0)) == Rational(1));
}

TEST_CASE("estimator concentrates near the truth") {
    GenResult g = generate({SceneKind::A, 16, 11});
    const Scene& s = g.scene;
    std::mt19937_64 rng(3);
    Point p = random_gp_point(rng, s);
    Rational truth(static_cast<std::int64_t>(visibility_count(s, p)),
                   static_cast<std::int64_t>(s.size()));
    const std::size_t m = 60;
    const int trials = 150;
    double sum = 0;
    int bad = 0;
    for (int trial = 0; trial < trials; ++trial) {
        auto sample = draw_sample(s, m, 1000 + trial);
        Rational est = sample_estimate(s, sample, p);
        sum += est.to_double();
        if ((est - truth).abs() > Rational(1, 4)) ++bad;
    }
    double mean = sum / trials;
    // unbiasedness within 3 sigma of the binomial spread
    double sigma = 0.5 / std::sqrt(double(m) * trials);
    CHECK(std::abs(mean - truth.to_double()) <= 3 * sigma + 1e-9);
    // Chernoff at delta=1/4: 2 exp(-2*60/16) ~ 0.0011, so near-zero failures
    CHECK(bad <= 3);
}
