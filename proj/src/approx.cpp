#include "viscount/approx.h"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <set>
#include <thread>

#include "shadow_labeler.h"
#include "viscount/visibility.h"
#include "viscount/visibility_graph.h"
#include "viscount/vsp.h"

namespace viscount {

std::size_t chernoff_sample_size(const Rational& delta, const Rational& fail_prob) {
    if (delta.sign() <= 0 || delta >= Rational(1) || fail_prob.sign() <= 0 ||
        fail_prob >= Rational(1))
        throw std::domain_error("chernoff_sample_size: need 0 < delta, p < 1");
    long double d = static_cast<long double>(delta.to_double());
    long double p = static_cast<long double>(fail_prob.to_double());
    long double bound = std::log(2.0L / p) / (2.0L * d * d);
    auto satisfied = [&](std::size_t m) {
        return 2.0L * std::exp(-2.0L * static_cast<long double>(m) * d * d) <= p;
    };
    std::size_t m = static_cast<std::size_t>(std::ceil(bound));
    if (m < 1) m = 1;
    while (!satisfied(m)) ++m;
    while (m > 1 && satisfied(m - 1)) --m;
    return m;
}

std::size_t vc_sample_size(std::size_t n, const Rational& delta,
                           const Rational& fail_prob, const Rational& C) {
    if (n < 2) throw std::domain_error("vc_sample_size: need n >= 2");
    if (delta.sign() <= 0 || delta >= Rational(1) || fail_prob.sign() <= 0 ||
        fail_prob >= Rational(1))
        throw std::domain_error("vc_sample_size: need 0 < delta, p < 1");
    if (C.sign() <= 0) throw std::domain_error("vc_sample_size: need C > 0");
    const double d = 2.0;
    double dl = delta.to_double();
    double lg = std::log2(static_cast<double>(n));
    double m = C.to_double() * d * d * lg * std::log2(d * lg / dl) / (dl * dl);
    std::size_t out = static_cast<std::size_t>(std::ceil(m - 1e-9));
    return out < 1 ? 1 : out;
}

std::size_t practical_sample_size(std::size_t n) {
    if (n < 2) return 1;
    double lg = std::log2(static_cast<double>(n));
    std::size_t m = static_cast<std::size_t>(std::ceil(10.0 * lg * lg - 1e-9));
    return m < 1 ? 1 : m;
}

std::size_t sample_size_for(const SampleConfig& cfg, std::size_t n) {
    if (cfg.explicit_m) return std::max<std::size_t>(1, *cfg.explicit_m);
    switch (cfg.mode) {
        case SampleMode::chernoff:
            return chernoff_sample_size(cfg.delta, cfg.fail_prob);
        case SampleMode::vc:
            return vc_sample_size(n, cfg.delta, cfg.fail_prob, cfg.vc_constant);
        case SampleMode::paper_practical:
            return practical_sample_size(n);
    }
    return 1;
}

std::vector<std::size_t> draw_sample(const Scene& scene, std::size_t m,
                                     std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("draw_sample: need m >= 1");
    if (scene.empty()) throw std::invalid_argument("draw_sample: empty scene");
    SplitMix64 rng(seed);
    std::vector<std::size_t> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(static_cast<std::size_t>(rng.below(scene.size())));
    return out;
}

Rational sample_estimate(const Scene& scene, const std::vector<std::size_t>& sample,
                         const Point& p) {
    if (sample.empty()) throw std::invalid_argument("sample_estimate: empty sample");
    VisibleSet vs = visible_set(scene, p);
    std::size_t hits = 0;
    for (std::size_t id : sample)
        if (vs.visible.count(id)) ++hits;
    return Rational(static_cast<std::int64_t>(hits),
                    static_cast<std::int64_t>(sample.size()));
}

// ------------------------------------------------------------------
// target structures
// ------------------------------------------------------------------

std::size_t TargetStructure::total_edges() const {
    std::size_t sum = 0;
    for (const Piece& p : pieces) sum += p.arrangement.boundary_segment_count();
    return sum;
}

std::size_t TargetStructure::total_faces() const {
    std::size_t sum = 0;
    for (const Piece& p : pieces) sum += p.arrangement.face_count();
    return sum;
}

std::uint64_t TargetStructure::locate_calls() const {
    std::uint64_t sum = 0;
    for (const Piece& p : pieces) sum += p.arrangement.locate_calls();
    return sum;
}

namespace {

// parameter of q along the segment a -> b (pre: q on the segment's line)
Rational param_on(const Point& a, const Point& b, const Point& q) {
    Rational dx = b.x - a.x;
    if (!dx.is_zero()) return (q.x - a.x) / dx;
    return (q.y - a.y) / (b.y - a.y);
}

void label_pieces(const Scene& occluders, TargetStructure& ts) {
    for (auto& piece : ts.pieces) {
        const std::size_t nf = piece.arrangement.face_count();
        piece.face_visible.assign(nf, 0);
        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            ShadowLabeler labeler(occluders, piece.a, piece.b);
            while (true) {
                std::size_t f = cursor.fetch_add(1);
                if (f >= nf) return;
                const Point& rep = piece.arrangement.faces()[f].representative;
                piece.face_visible[f] = labeler.visible(rep) ? 1 : 0;
            }
        };
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (nf < 256 || hw == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }
}

}  // namespace

TargetStructure build_target_structure(const Scene& scene, const Segment& t,
                                       std::size_t ell, bool all_pairs) {
    if (ell < 1) throw std::invalid_argument("build_target_structure: need ell >= 1");

    // exclude the target from its own occluder set
    Scene occluders = scene;
    if (t.id < scene.size() && scene[t.id].a == t.a && scene[t.id].b == t.b)
        occluders = scene.without(t.id);
    for (const Segment& s : occluders.segments())
        if (segments_conflict(s, t))
            throw std::invalid_argument("target crosses a scene segment");

    TargetStructure ts;
    ts.target = t;
    ts.ell = ell;

    // candidate lines and their hit parameters along the target
    std::vector<Line> candidates;
    if (all_pairs) {
        candidates = candidate_lines_full(occluders);
    } else {
        VisibilityGraph vg = visibility_graph(occluders);
        ts.graph_edges = vg.edge_count();
        std::set<Line> lines;
        for (const auto& [u, v] : vg.edges) {
            Point pa = VisibilityGraph::vertex_point(occluders, u);
            Point pb = VisibilityGraph::vertex_point(occluders, v);
            if (pa == pb) continue;
            lines.insert(Line::through(pa, pb));
        }
        candidates.assign(lines.begin(), lines.end());
    }

    Line tline = Line::through(t.a, t.b);
    struct HitLine {
        Rational param;
        std::size_t idx;
    };
    std::vector<HitLine> hits;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i] == tline) continue;
        auto x = line_intersection(candidates[i], tline);
        if (!x) continue;
        Rational tp = param_on(t.a, t.b, *x);
        if (tp.sign() < 0 || tp > Rational(1)) continue;
        hits.push_back({std::move(tp), i});
    }
    std::sort(hits.begin(), hits.end(),
              [](const HitLine& a, const HitLine& b) { return a.param < b.param; });
    ts.lines_hitting_target = hits.size();

    // Piece boundaries between groups of nearly equal hit counts.  Within
    // the window of cut positions that keeps every group at or below
    // ceil(H/ell), the cut lands in the widest parameter gap, and the
    // boundary value is the simplest dyadic inside it -- piece endpoints
    // stay on cheap coordinates and no candidate line passes through one.
    std::vector<Rational> bounds;  // strictly increasing, inside (0, 1)
    const std::size_t H = hits.size();
    if (ell > 1) {
        if (H == 0) {
            for (std::size_t i = 1; i < ell; ++i)
                bounds.push_back(Rational(static_cast<std::int64_t>(i),
                                          static_cast<std::int64_t>(ell)));
        } else {
            const std::size_t budget = (H + ell - 1) / ell;
            std::size_t prev = 0;
            Rational last_bound(0);
            for (std::size_t i = 1; i < ell; ++i) {
                std::size_t need_rest = (ell - i) * budget;
                std::size_t c_min = need_rest >= H ? 0 : H - need_rest;
                if (c_min < prev) c_min = prev;
                std::size_t c_max = std::min(prev + budget, H);
                std::size_t best_c = H + 1;
                Rational best_gap(-1);
                Rational best_lo, best_hi;
                for (std::size_t cpos = c_min; cpos <= c_max; ++cpos) {
                    Rational lo = cpos == 0 ? last_bound : hits[cpos - 1].param;
                    if (lo < last_bound) lo = last_bound;
                    Rational hi = cpos == H ? Rational(1) : hits[cpos].param;
                    Rational gap = hi - lo;
                    if (gap.sign() <= 0) continue;
                    if (gap > best_gap) {
                        best_gap = gap;
                        best_c = cpos;
                        best_lo = lo;
                        best_hi = hi;
                    }
                }
                if (best_c > H) {
                    // the whole window is tied; wedge a cut right of the
                    // previous bound (piece budgets may then exceed the
                    // balanced share, which only happens on coincident hits)
                    best_lo = last_bound;
                    best_hi = Rational(1);
                    best_c = prev;
                }
                Rational b = Rational::simplest_dyadic_between(best_lo, best_hi);
                bounds.push_back(b);
                last_bound = std::move(b);
                prev = best_c;
            }
        }
    }

    auto point_at = [&](const Rational& tp) {
        return Point{t.a.x + (t.b.x - t.a.x) * tp, t.a.y + (t.b.y - t.a.y) * tp};
    };

    // frame coverage for queries around the scene
    std::vector<Point> extra = {t.a, t.b};
    if (!occluders.empty()) {
        Rational x0, y0, x1, y1;
        occluders.bounding_box(x0, y0, x1, y1);
        Rational d = (x1 - x0) + (y1 - y0) + Rational(8);
        extra.push_back(Point{x0 - d, y0 - d});
        extra.push_back(Point{x1 + d, y1 + d});
        extra.push_back(Point{x0 - d, y1 + d});
        extra.push_back(Point{x1 + d, y0 - d});
    }

    // assemble per-piece curve sets first, then build and label the pieces
    // in parallel (each piece is independent; results land by index)
    std::size_t hit_cursor = 0;
    struct PieceSpec {
        Rational lo, hi;
        std::vector<Curve> curves;
        std::size_t candidate_lines = 0;
    };
    std::vector<PieceSpec> specs(ell);
    for (std::size_t piece_idx = 0; piece_idx < ell; ++piece_idx) {
        PieceSpec& spec = specs[piece_idx];
        spec.lo = piece_idx == 0 ? Rational(0) : bounds[piece_idx - 1];
        spec.hi = piece_idx + 1 == ell ? Rational(1) : bounds[piece_idx];
        Point pa = point_at(spec.lo);
        Point pb = point_at(spec.hi);
        while (hit_cursor < hits.size() && hits[hit_cursor].param <= spec.hi) {
            spec.curves.push_back(Curve::make_line(candidates[hits[hit_cursor].idx]));
            ++spec.candidate_lines;
            ++hit_cursor;
        }
        std::set<Line> base;
        for (const Segment& s : occluders.segments()) {
            for (const Point* e : {&s.a, &s.b}) {
                for (const Point* q : {&pa, &pb}) {
                    if (*e == *q) continue;
                    base.insert(Line::through(*q, *e));
                }
            }
        }
        for (const Segment& s : occluders.segments()) base.insert(Line::supporting(s));
        base.insert(tline);
        for (const Line& l : base) spec.curves.push_back(Curve::make_line(l));
    }

    ts.pieces.resize(ell);
    std::atomic<std::size_t> cursor{0};
    auto build_piece = [&](std::size_t i) {
        TargetStructure::Piece piece;
        piece.a = point_at(specs[i].lo);
        piece.b = point_at(specs[i].hi);
        piece.candidate_lines = specs[i].candidate_lines;
        piece.arrangement = build_arrangement(specs[i].curves, extra);
        const std::size_t nf = piece.arrangement.face_count();
        piece.face_visible.assign(nf, 0);
        ShadowLabeler labeler(occluders, piece.a, piece.b);
        for (std::size_t f = 0; f < nf; ++f)
            piece.face_visible[f] =
                labeler.visible(piece.arrangement.faces()[f].representative) ? 1 : 0;
        ts.pieces[i] = std::move(piece);
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (ell == 1 || hw == 1) {
        for (std::size_t i = 0; i < ell; ++i) build_piece(i);
        if (ell == 1) {
            // re-label the single piece with per-face parallelism
            label_pieces(occluders, ts);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < hw; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= ell) return;
                    build_piece(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    return ts;
}


bool target_query(const TargetStructure& ts, const Point& p) {
    bool seen = false;
    for (const auto& piece : ts.pieces) {
        LocateResult r = piece.arrangement.locate(p);
        if (r.on_boundary)
            throw BoundaryQueryError("query point lies on a piece partition boundary");
        if (piece.face_visible[r.face]) seen = true;
    }
    return seen;
}

// ------------------------------------------------------------------
// combined counter
// ------------------------------------------------------------------

std::size_t ApproxCounter::total_edges() const {
    std::size_t sum = 0;
    for (const auto& [id, ts] : structures) sum += ts.total_edges();
    return sum;
}

std::size_t ApproxCounter::total_faces() const {
    std::size_t sum = 0;
    for (const auto& [id, ts] : structures) sum += ts.total_faces();
    return sum;
}

ApproxCounter build_approx_counter(const Scene& scene, const SampleConfig& cfg,
                                   std::size_t ell) {
    ApproxCounter counter;
    counter.config = cfg;
    counter.ell = ell;
    std::size_t m = sample_size_for(cfg, scene.size());
    counter.sample = draw_sample(scene, m, cfg.seed);
    for (std::size_t id : counter.sample) ++counter.multiplicity[id];
    for (const auto& [id, mult] : counter.multiplicity)
        counter.structures.emplace(id,
                                   build_target_structure(scene, scene[id], ell));
    return counter;
}

Rational approx_query(const ApproxCounter& counter, const Point& p) {
    std::size_t hits = 0;
    for (const auto& [id, mult] : counter.multiplicity)
        if (target_query(counter.structures.at(id), p)) hits += mult;
    return Rational(static_cast<std::int64_t>(hits),
                    static_cast<std::int64_t>(counter.sample.size()));
}

}  // namespace viscount
