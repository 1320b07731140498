#include "viscount/scene_gen.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>

namespace viscount {

namespace {

constexpr std::int64_t kTicks = 1 << 16;  // base coordinate grid, per unit

Rational tick(std::int64_t t) { return Rational(t, kTicks); }

std::uint64_t isqrt(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::max(0.0, std::floor(std::sqrt(static_cast<double>(n)))));
    while ((r + 1) * (r + 1) <= n) ++r;
    while (r * r > n) --r;
    return r;
}

// ------------------------------------------------------------------
// kind A: one short randomly oriented segment per grid cell
// ------------------------------------------------------------------

std::vector<Segment> gen_a_layout(std::uint64_t n, SplitMix64& rng) {
    const std::int64_t g = static_cast<std::int64_t>(isqrt(n));
    if (g < 1) throw GenerationError("kind A needs n >= 1");
    std::vector<Segment> segs;
    segs.reserve(static_cast<std::size_t>(g * g));
    std::int64_t half_len_ticks = kTicks / (2 * g);  // target half extent
    if (g == 1) half_len_ticks = kTicks / 4;          // keep inside the unit cell
    for (std::int64_t cy = 0; cy < g; ++cy) {
        for (std::int64_t cx = 0; cx < g; ++cx) {
            std::int64_t jx = rng.range(-kTicks / 16, kTicks / 16);
            std::int64_t jy = rng.range(-kTicks / 16, kTicks / 16);
            std::int64_t mx = cx * kTicks + kTicks / 2 + jx;
            std::int64_t my = cy * kTicks + kTicks / 2 + jy;
            std::int64_t dx = 0, dy = 0;
            while (dx == 0 && dy == 0) {
                dx = rng.range(-128, 128);
                dy = rng.range(-128, 128);
            }
            std::int64_t m = std::max(std::llabs(dx), std::llabs(dy));
            std::int64_t s = std::max<std::int64_t>(1, half_len_ticks / m);
            Segment seg;
            seg.a = Point{tick(mx - dx * s), tick(my - dy * s)};
            seg.b = Point{tick(mx + dx * s), tick(my + dy * s)};
            seg.id = segs.size();
            if (seg.a == seg.b) {
                --cx;  // retry this cell with fresh randomness
                continue;
            }
            segs.push_back(seg);
        }
    }
    return segs;
}

// ------------------------------------------------------------------
// kind B: grow both ends of each kind-A segment along its supporting
// line until just short of the first obstruction (or the domain wall)
// ------------------------------------------------------------------

std::optional<Rational> first_obstruction(const std::vector<Segment>& segs,
                                          std::size_t self, const Ray& r) {
    std::optional<Rational> best;
    for (const Segment& s : segs) {
        if (s.id == self) continue;
        auto hit = ray_segment_first_hit(r, s);
        if (!hit || hit->param.sign() <= 0) continue;
        if (!best || hit->param < *best) best = hit->param;
    }
    return best;
}

// parameter at which the ray leaves the box [0, side] x [0, side]
Rational box_exit(const Ray& r, const Rational& side) {
    Rational best(-1);
    auto consider = [&](const Rational& t) {
        if (t.sign() <= 0) return;
        if (best.sign() < 0 || t < best) best = t;
    };
    if (!r.dx.is_zero()) {
        consider((Rational(0) - r.origin.x) / r.dx);
        consider((side - r.origin.x) / r.dx);
    }
    if (!r.dy.is_zero()) {
        consider((Rational(0) - r.origin.y) / r.dy);
        consider((side - r.origin.y) / r.dy);
    }
    assert(best.sign() > 0);
    return best;
}

std::int64_t ticks_floor(const Rational& v) {
    return (v * Rational(kTicks)).floor().as_int64();
}

std::vector<Segment> gen_b_layout(std::uint64_t n, SplitMix64& rng) {
    std::vector<Segment> segs = gen_a_layout(n, rng);
    const std::int64_t g = static_cast<std::int64_t>(isqrt(n));
    const Rational side(g);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (int end = 0; end < 2; ++end) {
            Point& e = end == 0 ? segs[i].a : segs[i].b;
            const Point& o = end == 0 ? segs[i].b : segs[i].a;
            Ray r{o, e.x - o.x, e.y - o.y};  // through e, outward past it
            auto hit = first_obstruction(segs, i, r);
            Rational stop = box_exit(r, side);
            if (hit && *hit < stop) stop = *hit;
            // keep a small random gap so nothing ever touches
            Rational beta(8 + static_cast<std::int64_t>(rng.below(8)), 1024);
            if (stop <= Rational(1)) continue;  // nothing to grow into
            // skip micro-extensions: the grid snap below needs headroom
            Rational maxc = r.dx.abs() < r.dy.abs() ? r.dy.abs() : r.dx.abs();
            if ((stop - Rational(1)) * maxc * Rational(kTicks) < Rational(4096))
                continue;
            Rational t = Rational(1) + (stop - Rational(1)) * (Rational(1) - beta);
            Point grown{o.x + r.dx * t, o.y + r.dy * t};
            // snap inward onto the tick grid
            e = Point{tick(ticks_floor(grown.x)), tick(ticks_floor(grown.y))};
            if (e == o) e = grown;  // degenerate snap, keep exact point
        }
    }
    return segs;
}

// ------------------------------------------------------------------
// peephole: two gap-aligned fences over a long target
// ------------------------------------------------------------------

std::vector<Segment> gen_peephole(std::uint64_t g, SplitMix64& rng,
                                  std::vector<std::size_t>& targets) {
    if (g < 2) throw GenerationError("peephole needs at least 2 gaps");
    const Rational W(static_cast<std::int64_t>(4 * g));
    const Rational half_gap(1, 8);
    std::vector<Rational> centers = peephole_gap_centers(g);
    std::vector<Segment> segs;
    auto jit = [&](std::int64_t scale) {
        return Rational(rng.range(-scale, scale), kTicks);
    };
    for (int fence = 0; fence < 2; ++fence) {
        Rational base(fence == 0 ? 8 : 4);
        for (std::size_t piece = 0; piece <= g; ++piece) {
            Rational x0 = piece == 0 ? Rational(0) : centers[piece - 1] + half_gap;
            Rational x1 = piece == g ? W : centers[piece] - half_gap;
            Segment s;
            s.a = Point{x0 + jit(48), base + jit(48)};
            s.b = Point{x1 + jit(48), base + jit(48)};
            s.id = segs.size();
            segs.push_back(s);
        }
    }
    Segment t;
    t.a = Point{Rational(-1, 4) + jit(48), jit(48)};
    t.b = Point{W + Rational(1, 4) + jit(48), jit(48)};
    t.id = segs.size();
    targets = {t.id};
    segs.push_back(t);
    return segs;
}

// ------------------------------------------------------------------
// shatter: k targets in a row, one viewpoint corridor per subset, one
// shield per (corridor, hidden target)
// ------------------------------------------------------------------

struct ShatterFrame {
    std::int64_t k;
    Rational depth;                 // viewpoint depth D (positive)
    std::vector<Rational> probe_x;  // corridor x positions
    std::vector<Rational> target_c; // target center x positions
};

ShatterFrame shatter_frame(std::uint64_t k) {
    ShatterFrame f;
    f.k = static_cast<std::int64_t>(k);
    const std::int64_t m = 1LL << k;
    const Rational spread(16 * m);
    f.depth = Rational(64) > spread * Rational(4) ? Rational(64) : spread * Rational(4);
    for (std::int64_t j = 0; j < m; ++j)
        f.probe_x.push_back(Rational(16 * j) - Rational(8 * (m - 1)));
    for (std::int64_t t = 0; t < f.k; ++t)
        f.target_c.push_back(Rational(8 * t) - Rational(4 * (f.k - 1)));
    return f;
}

std::vector<Segment> gen_shatter(std::uint64_t k, SplitMix64& rng,
                                 std::vector<std::size_t>& targets) {
    if (k < 1 || k > 16) throw GenerationError("shatter needs 1 <= k <= 16");
    ShatterFrame f = shatter_frame(k);
    const std::int64_t m = 1LL << k;
    std::vector<Segment> segs;
    auto jit = [&](std::int64_t scale) {
        return Rational(rng.range(-scale, scale), kTicks);
    };

    targets.clear();
    for (std::int64_t t = 0; t < f.k; ++t) {
        Segment s;
        s.a = Point{f.target_c[t] - Rational(1) + jit(16), jit(12)};
        s.b = Point{f.target_c[t] + Rational(1) + jit(16), jit(12)};
        s.id = segs.size();
        targets.push_back(s.id);
        segs.push_back(s);
    }

    // cone of corridor j onto the widened target t, cut at height y:
    // x(y) = px + (tx - px) * (y + D) / D with the target row at y ~ 0
    auto cone_range = [&](std::int64_t j, std::int64_t t, const Rational& y,
                          Rational& lo, Rational& hi) {
        Rational frac = (y + f.depth) / f.depth;
        Rational margin(5, 4);
        lo = f.probe_x[j] + (f.target_c[t] - margin - f.probe_x[j]) * frac;
        hi = f.probe_x[j] + (f.target_c[t] + margin - f.probe_x[j]) * frac;
    };

    struct Placed {
        Rational y, lo, hi;
    };
    std::vector<Placed> placed;
    const std::int64_t kLevels = 509;
    for (std::int64_t j = 0; j < m; ++j) {
        for (std::int64_t t = 0; t < f.k; ++t) {
            if ((j >> t) & 1) continue;  // target t stays visible in corridor j
            bool done = false;
            std::int64_t q0 = static_cast<std::int64_t>(rng.below(kLevels));
            for (std::int64_t step = 0; step < kLevels && !done; ++step) {
                std::int64_t q = 1 + (q0 + step * 181) % kLevels;
                Rational y = -(f.depth * Rational(q, kLevels + 1));
                Rational lo, hi;
                cone_range(j, t, y, lo, hi);
                Rational slack(1, 4);
                Rational wlo = lo - slack;
                Rational whi = hi + slack;
                // the shield must stay clear of every other corridor cone
                // near this height, and of every shield already placed
                bool ok = true;
                Rational window(1, 8);
                for (std::int64_t j2 = 0; j2 < m && ok; ++j2) {
                    for (std::int64_t t2 = 0; t2 < f.k && ok; ++t2) {
                        if (j2 == j && t2 == t) continue;
                        Rational l1, h1, l2, h2;
                        cone_range(j2, t2, y - window, l1, h1);
                        cone_range(j2, t2, y + window, l2, h2);
                        Rational cl = l1 < l2 ? l1 : l2;
                        Rational ch = h1 < h2 ? h2 : h1;
                        if (!(whi < cl || ch < wlo)) ok = false;
                    }
                }
                for (const Placed& p : placed) {
                    if (!ok) break;
                    if ((p.y - y).abs() < window && !(whi < p.lo || p.hi < wlo))
                        ok = false;
                }
                if (!ok) continue;
                Segment s;
                s.a = Point{lo - Rational(1, 8) + jit(8), y + jit(8)};
                s.b = Point{hi + Rational(1, 8) + jit(8), y + jit(8)};
                s.id = segs.size();
                segs.push_back(s);
                placed.push_back({y, wlo, whi});
                done = true;
            }
            if (!done)
                throw GenerationError("shatter: no clear height for a shield");
        }
    }
    return segs;
}

// ------------------------------------------------------------------
// nondegeneracy repair
// ------------------------------------------------------------------

Scene repair_nondegenerate(std::vector<Segment> segs, SplitMix64& rng,
                           const char* what) {
    for (int round = 0; round < 48; ++round) {
        Scene candidate;
        try {
            candidate = Scene(segs);
        } catch (const SceneParseError&) {
            candidate = Scene();  // crossing introduced; fall through to nudge
        }
        std::set<std::pair<std::string, std::string>> bad;
        bool have_scene = candidate.size() == segs.size();
        if (have_scene) {
            DegeneracyReport rep = validate_nondegenerate(candidate);
            if (rep.nondegenerate()) return candidate;
            for (const auto& tri : rep.collinear_triples)
                for (const Point& p : tri)
                    bad.insert({p.x.to_string(), p.y.to_string()});
            for (const auto& [i, j] : rep.crossing_pairs) {
                for (std::size_t id : {i, j}) {
                    bad.insert({segs[id].a.x.to_string(), segs[id].a.y.to_string()});
                    bad.insert({segs[id].b.x.to_string(), segs[id].b.y.to_string()});
                }
            }
            if (!rep.parallel_endpoint_line_pairs.empty()) {
                // nudge one endpoint of every segment; cheap and rare
                for (const Segment& s : segs)
                    bad.insert({s.a.x.to_string(), s.a.y.to_string()});
            }
        }
        for (Segment& s : segs) {
            for (Point* p : {&s.a, &s.b}) {
                bool hit = !have_scene ||
                           bad.count({p->x.to_string(), p->y.to_string()}) > 0;
                if (!hit) continue;
                p->x += Rational(rng.range(-2, 2), kTicks);
                p->y += Rational(rng.range(-2, 2), kTicks);
            }
        }
    }
    throw GenerationError(std::string(what) + ": could not reach a nondegenerate scene");
}

}  // namespace

std::vector<Rational> peephole_gap_centers(std::uint64_t g) {
    std::vector<Rational> centers;
    centers.reserve(g);
    for (std::uint64_t i = 0; i < g; ++i)
        centers.push_back(Rational(static_cast<std::int64_t>(4 * g) *
                                       static_cast<std::int64_t>(2 * i + 1),
                                   static_cast<std::int64_t>(2 * g)));
    return centers;
}

Point peephole_gap_probe(std::uint64_t g, std::size_t gap) {
    std::vector<Rational> centers = peephole_gap_centers(g);
    return Point{centers.at(gap) + Rational(1, 512), Rational(16)};
}

Point peephole_pocket_probe(std::uint64_t g) {
    std::vector<Rational> centers = peephole_gap_centers(g);
    Rational c = Rational::midpoint(centers[0], centers[1]);
    return Point{c + Rational(1, 512), Rational(8) + Rational(1, 8)};
}

std::vector<Point> shatter_probe_points(std::uint64_t k) {
    ShatterFrame f = shatter_frame(k);
    std::vector<Point> probes;
    probes.reserve(f.probe_x.size());
    for (const Rational& x : f.probe_x)
        probes.push_back(Point{x + Rational(1, 512), -f.depth});
    return probes;
}

GenResult generate(const SceneGenSpec& spec, const Rational& c_shrink) {
    // seeded independently of kind, so kinds A/B/C with one seed share the
    // same underlying layout stream (C really is B shrunk, B really is A grown)
    SplitMix64 rng(spec.seed * 0x2545F4914F6CDD1DULL + 0x9E3779B97F4A7C15ULL);
    GenResult out;
    std::vector<std::size_t> targets;
    std::vector<Segment> segs;
    switch (spec.kind) {
        case SceneKind::A:
            segs = gen_a_layout(spec.size, rng);
            break;
        case SceneKind::B:
            segs = gen_b_layout(spec.size, rng);
            break;
        case SceneKind::C: {
            if (c_shrink.sign() <= 0 || c_shrink >= Rational(1))
                throw GenerationError("kind C shrink factor must lie in (0, 1)");
            segs = gen_b_layout(spec.size, rng);
            for (Segment& s : segs) {
                Point mid{Rational::midpoint(s.a.x, s.b.x),
                          Rational::midpoint(s.a.y, s.b.y)};
                s.a = Point{mid.x + (s.a.x - mid.x) * c_shrink,
                            mid.y + (s.a.y - mid.y) * c_shrink};
                s.b = Point{mid.x + (s.b.x - mid.x) * c_shrink,
                            mid.y + (s.b.y - mid.y) * c_shrink};
            }
            break;
        }
        case SceneKind::peephole:
            segs = gen_peephole(spec.size, rng, targets);
            break;
        case SceneKind::shatter:
            segs = gen_shatter(spec.size, rng, targets);
            break;
    }
    out.scene = repair_nondegenerate(std::move(segs), rng, "generate");
    if (spec.kind == SceneKind::peephole || spec.kind == SceneKind::shatter)
        out.targets = targets;
    return out;
}

}  // namespace viscount
