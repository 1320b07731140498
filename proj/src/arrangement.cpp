#include "viscount/arrangement.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace viscount {

namespace {

// canonical lines parameterize as x = C - B*y (param y) when A == 1,
// y = C (param x) when A == 0
Rational line_param(const Line& l, const Point& p) {
    return l.a.is_zero() ? p.x : p.y;
}

Point line_point(const Line& l, const Rational& t) {
    if (l.a.is_zero()) return Point{t, l.c};
    return Point{l.c - l.b * t, t};
}

struct ParamInterval {
    std::optional<Rational> lo, hi;  // absent = unbounded
};

struct CurveGroup {
    Line line;
    std::vector<ParamInterval> raw;
    std::vector<ParamInterval> merged;

    bool covers(const Rational& t) const {
        for (const ParamInterval& iv : merged) {
            if (iv.lo && t < *iv.lo) continue;
            if (iv.hi && *iv.hi < t) continue;
            return true;
        }
        return false;
    }
};

void merge_intervals(CurveGroup& g) {
    auto key = [](const ParamInterval& iv) {
        return iv.lo ? std::make_pair(1, *iv.lo) : std::make_pair(0, Rational(0));
    };
    std::sort(g.raw.begin(), g.raw.end(), [&](const ParamInterval& a, const ParamInterval& b) {
        auto ka = key(a), kb = key(b);
        if (ka.first != kb.first) return ka.first < kb.first;
        return ka.second < kb.second;
    });
    for (const ParamInterval& iv : g.raw) {
        if (!g.merged.empty()) {
            ParamInterval& last = g.merged.back();
            bool joins = !last.hi || !iv.lo || *iv.lo <= *last.hi;
            if (joins) {
                if (last.hi && (!iv.hi || *last.hi < *iv.hi)) last.hi = iv.hi;
                if (!iv.hi) last.hi.reset();
                continue;
            }
        }
        g.merged.push_back(iv);
    }
}

}  // namespace

Curve Curve::make_line(const Line& l) {
    Curve c;
    c.type = Type::line;
    c.line = l;
    return c;
}

Curve Curve::make_ray(const Ray& r) {
    Curve c;
    c.type = Type::ray;
    c.p0 = r.origin;
    c.dx = r.dx;
    c.dy = r.dy;
    Point off{r.origin.x + r.dx, r.origin.y + r.dy};
    c.line = Line::through(r.origin, off);
    return c;
}

Curve Curve::make_segment(const Point& a, const Point& b) {
    assert(a != b);
    Curve c;
    c.type = Type::segment;
    c.p0 = a;
    c.p1 = b;
    c.line = Line::through(a, b);
    return c;
}

// ------------------------------------------------------------------
// slab point-location index
// ------------------------------------------------------------------

struct Subdivision::SlabIndex {
    std::vector<Rational> xs;  // distinct vertex x's, sorted
    std::vector<std::vector<std::uint32_t>> slab_edges;         // per gap
    std::vector<std::vector<std::uint32_t>> vertical_at;        // per xs entry
    std::vector<std::pair<Point, std::uint32_t>> vertex_by_point;
    std::size_t entries = 0;
};

void Subdivision::frame(Rational& x0, Rational& y0, Rational& x1, Rational& y1) const {
    x0 = fx0_;
    y0 = fy0_;
    x1 = fx1_;
    y1 = fy1_;
}

bool Subdivision::inside_frame(const Point& p) const {
    return fx0_ <= p.x && p.x <= fx1_ && fy0_ <= p.y && p.y <= fy1_;
}

const Subdivision::SlabIndex& Subdivision::slab_index() const {
    if (auto existing = std::atomic_load(&slabs_)) return *existing;
    std::lock_guard<std::mutex> lock(slab_mu_);
    if (!slabs_) {
        auto idx = std::make_shared<SlabIndex>();
        idx->xs.reserve(vertices_.size());
        for (const Vertex& v : vertices_) idx->xs.push_back(v.p.x);
        std::sort(idx->xs.begin(), idx->xs.end());
        idx->xs.erase(std::unique(idx->xs.begin(), idx->xs.end()), idx->xs.end());

        idx->vertex_by_point.reserve(vertices_.size());
        for (std::uint32_t i = 0; i < vertices_.size(); ++i)
            idx->vertex_by_point.emplace_back(vertices_[i].p, i);
        std::sort(idx->vertex_by_point.begin(), idx->vertex_by_point.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        auto xpos = [&](const Rational& x) {
            return static_cast<std::size_t>(
                std::lower_bound(idx->xs.begin(), idx->xs.end(), x) - idx->xs.begin());
        };

        idx->vertical_at.resize(idx->xs.size());
        idx->slab_edges.resize(idx->xs.empty() ? 0 : idx->xs.size() - 1);
        for (std::uint32_t e = 0; e < edges_.size(); ++e) {
            const Point& a = vertices_[edges_[e].v0].p;
            const Point& b = vertices_[edges_[e].v1].p;
            if (a.x == b.x) {
                idx->vertical_at[xpos(a.x)].push_back(e);
                ++idx->entries;
            }
        }
        // fill the slabs left to right, maintaining the vertical order of
        // live edges; between columns the order cannot change, and every
        // edge starts and ends exactly on a column
        struct ColumnEvents {
            std::vector<std::uint32_t> starting, ending;
        };
        std::vector<ColumnEvents> cols(idx->xs.size());
        for (std::uint32_t e = 0; e < edges_.size(); ++e) {
            const Point& a = vertices_[edges_[e].v0].p;
            const Point& b = vertices_[edges_[e].v1].p;
            if (a.x == b.x) continue;
            cols[xpos(a.x)].starting.push_back(e);
            cols[xpos(b.x)].ending.push_back(e);
        }
        std::vector<std::uint32_t> live;
        // "edge f runs strictly below point q" at any column inside f's span
        auto edge_below_point = [&](std::uint32_t f, const Point& q) {
            const Point& a = vertices_[edges_[f].v0].p;
            const Point& b = vertices_[edges_[f].v1].p;
            return orientation(a, b, q) > 0;
        };
        for (std::size_t s = 0; s < idx->xs.size(); ++s) {
            for (std::uint32_t e : cols[s].ending) {
                // locate by height at this column, then scan ties for the id
                const Point& endp = vertices_[edges_[e].v1].p;
                auto it = std::partition_point(
                    live.begin(), live.end(),
                    [&](std::uint32_t f) { return edge_below_point(f, endp); });
                while (it != live.end() && *it != e) ++it;
                assert(it != live.end());
                live.erase(it);
            }
            for (std::uint32_t e : cols[s].starting) {
                const Point& sp = vertices_[edges_[e].v0].p;
                const Point& far = vertices_[edges_[e].v1].p;
                auto it = std::partition_point(
                    live.begin(), live.end(), [&](std::uint32_t f) {
                        const Point& a = vertices_[edges_[f].v0].p;
                        const Point& b = vertices_[edges_[f].v1].p;
                        int o = orientation(a, b, sp);
                        if (o != 0) return o > 0;
                        // shared start vertex: order by slope past it
                        return orientation(a, b, far) > 0;
                    });
                live.insert(it, e);
            }
            if (s + 1 < idx->xs.size()) {
                idx->slab_edges[s] = live;
                idx->entries += live.size();
            }
        }
        std::atomic_store(&slabs_, std::shared_ptr<const SlabIndex>(std::move(idx)));
    }
    return *slabs_;
}

std::size_t Subdivision::slab_index_size() const { return slab_index().entries; }

LocateResult Subdivision::locate(const Point& p) const {
    locate_calls_.fetch_add(1, std::memory_order_relaxed);
    if (!inside_frame(p))
        throw LocateOutsideFrameError("locate: point outside the preprocessed frame");
    const SlabIndex& idx = slab_index();

    // exact vertex hit
    auto vit = std::lower_bound(idx.vertex_by_point.begin(), idx.vertex_by_point.end(), p,
                                [](const auto& a, const Point& q) { return a.first < q; });
    if (vit != idx.vertex_by_point.end() && vit->first == p) {
        LocateResult r;
        r.face = vertices_[vit->second].min_face;
        r.on_boundary = LocateResult::Boundary{true, vit->second};
        return r;
    }

    auto xit = std::lower_bound(idx.xs.begin(), idx.xs.end(), p.x);
    std::size_t xi = static_cast<std::size_t>(xit - idx.xs.begin());
    if (xit != idx.xs.end() && *xit == p.x) {
        // on a vertex column: vertical edges first
        for (std::uint32_t e : idx.vertical_at[xi]) {
            const Point& a = vertices_[edges_[e].v0].p;
            const Point& b = vertices_[edges_[e].v1].p;
            const Rational& lo = a.y < b.y ? a.y : b.y;
            const Rational& hi = a.y < b.y ? b.y : a.y;
            if (lo < p.y && p.y < hi) {
                LocateResult r;
                r.face = std::min(edges_[e].left, edges_[e].right);
                r.on_boundary = LocateResult::Boundary{false, e};
                return r;
            }
        }
        if (xi + 1 >= idx.xs.size()) --xi;  // rightmost column, use left slab
    } else {
        // strictly between columns: slab to the left of xit
        assert(xi > 0);
        --xi;
    }

    const std::vector<std::uint32_t>& slab = idx.slab_edges[xi];
    // edges strictly below p form a prefix of the slab order
    auto below = [&](std::uint32_t e) {
        const Point& a = vertices_[edges_[e].v0].p;
        const Point& b = vertices_[edges_[e].v1].p;
        return orientation(a, b, p) > 0;  // p strictly above edge e
    };
    auto it = std::partition_point(slab.begin(), slab.end(), below);
    if (it != slab.end()) {
        std::uint32_t e = *it;
        const Point& a = vertices_[edges_[e].v0].p;
        const Point& b = vertices_[edges_[e].v1].p;
        if (orientation(a, b, p) == 0) {
            LocateResult r;
            r.face = std::min(edges_[e].left, edges_[e].right);
            r.on_boundary = LocateResult::Boundary{false, e};
            return r;
        }
    }
    assert(it != slab.begin());
    std::uint32_t e_below = *(it - 1);
    LocateResult r;
    // canonical edges run by increasing x, so the left face is above
    r.face = edges_[e_below].left;
    return r;
}

namespace {

// deterministic dyadic ladder 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ...
Rational dyadic_fraction(unsigned a) {
    if (a == 0) return Rational(1, 2);
    unsigned level = 0;
    while ((2u << level) <= a + 1) ++level;
    std::int64_t denom = 1LL << (level + 1);
    std::int64_t idx = static_cast<std::int64_t>(a + 1 - (1u << level));
    return Rational(2 * idx + 1, denom);
}

}  // namespace

Point Subdivision::interior_point(std::size_t face, unsigned attempt) const {
    const std::vector<std::uint32_t>& bound = face_edges_[face];
    std::vector<Rational> xs;
    xs.reserve(2 * bound.size());
    for (std::uint32_t e : bound) {
        xs.push_back(vertices_[edges_[e].v0].p.x);
        xs.push_back(vertices_[edges_[e].v1].p.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    assert(xs.size() >= 2);
    Rational xstar =
        attempt == 0 ? Rational::simplest_dyadic_between(xs[0], xs[1])
                     : xs[0] + (xs[1] - xs[0]) * dyadic_fraction(2 * attempt - 1);
    std::vector<Rational> ys;
    for (std::uint32_t e : bound) {
        const Point& a = vertices_[edges_[e].v0].p;
        const Point& b = vertices_[edges_[e].v1].p;
        const Rational& xlo = a.x < b.x ? a.x : b.x;
        const Rational& xhi = a.x < b.x ? b.x : a.x;
        if (!(xlo < xstar && xstar < xhi)) continue;
        ys.push_back(a.y + (b.y - a.y) * (xstar - a.x) / (b.x - a.x));
    }
    std::sort(ys.begin(), ys.end());
    // with k crossings strictly below, parity odd means inside
    for (std::size_t k = 0; k + 1 < ys.size(); k += 2) {
        if (ys[k] < ys[k + 1]) {
            Rational ystar = attempt == 0
                                 ? Rational::simplest_dyadic_between(ys[k], ys[k + 1])
                                 : ys[k] + (ys[k + 1] - ys[k]) *
                                               dyadic_fraction(2 * attempt);
            return Point{xstar, ystar};
        }
    }
    assert(false && "face has no interior at the chosen abscissa");
    return Point{xstar, Rational(0)};
}

SubdivisionStats subdivision_stats(const Subdivision& sub) {
    return SubdivisionStats{sub.vertex_count(), sub.edge_count(), sub.face_count(),
                            sub.boundary_segment_count()};
}

bool Subdivision::euler_ok() const {
    // one virtual vertex at infinity absorbs all frame crossings
    std::vector<std::uint32_t> label(vertices_.size(), UINT32_MAX);
    std::uint32_t n_nodes = 0;
    bool has_inf = false;
    for (const Edge& e : edges_) {
        if (e.on_frame) continue;
        for (std::uint32_t v : {e.v0, e.v1}) {
            if (vertices_[v].on_frame)
                has_inf = true;
            else if (label[v] == UINT32_MAX)
                label[v] = n_nodes++;
        }
    }
    std::uint32_t inf_node = n_nodes;
    std::uint32_t total = n_nodes + (has_inf ? 1 : 0);
    std::vector<std::uint32_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t e_count = 0;
    for (const Edge& e : edges_) {
        if (e.on_frame) continue;
        ++e_count;
        std::uint32_t a = vertices_[e.v0].on_frame ? inf_node : label[e.v0];
        std::uint32_t b = vertices_[e.v1].on_frame ? inf_node : label[e.v1];
        parent[find(a)] = find(b);
    }
    std::size_t components = 0;
    for (std::uint32_t x = 0; x < total; ++x)
        if (find(x) == x) ++components;
    if (e_count == 0) return faces_.size() == 1;  // no curves: frame interior only
    long long v = static_cast<long long>(n_nodes) + (has_inf ? 1 : 0);
    long long f = static_cast<long long>(faces_.size());
    return v - static_cast<long long>(e_count) + f ==
           1 + static_cast<long long>(components);
}

// ------------------------------------------------------------------
// construction
// ------------------------------------------------------------------

Subdivision build_arrangement(const std::vector<Curve>& curves,
                              const std::vector<Point>& extra_points) {
    // group curves by supporting line
    std::map<Line, CurveGroup> groups;
    for (const Curve& c : curves) {
        CurveGroup& g = groups[c.line];
        g.line = c.line;
        ParamInterval iv;
        switch (c.type) {
            case Curve::Type::line:
                break;
            case Curve::Type::ray: {
                Rational t0 = line_param(c.line, c.p0);
                int fwd = c.line.a.is_zero() ? c.dx.sign() : c.dy.sign();
                if (fwd > 0)
                    iv.lo = t0;
                else
                    iv.hi = t0;
                break;
            }
            case Curve::Type::segment: {
                Rational ta = line_param(c.line, c.p0);
                Rational tb = line_param(c.line, c.p1);
                iv.lo = ta < tb ? ta : tb;
                iv.hi = ta < tb ? tb : ta;
                break;
            }
        }
        g.raw.push_back(iv);
    }
    for (auto& [line, g] : groups) merge_intervals(g);

    std::vector<CurveGroup*> glist;
    glist.reserve(groups.size());
    for (auto& [line, g] : groups) glist.push_back(&g);

    // cross-group intersections restricted to covered portions
    struct Hit {
        std::size_t group;
        Rational t;
    };
    std::vector<std::vector<Rational>> cuts(glist.size());
    std::vector<Point> candidates = extra_points;
    for (std::size_t i = 0; i < glist.size(); ++i) {
        for (std::size_t j = i + 1; j < glist.size(); ++j) {
            auto x = line_intersection(glist[i]->line, glist[j]->line);
            if (!x) continue;
            Rational ti = line_param(glist[i]->line, *x);
            Rational tj = line_param(glist[j]->line, *x);
            if (!glist[i]->covers(ti) || !glist[j]->covers(tj)) continue;
            cuts[i].push_back(ti);
            cuts[j].push_back(tj);
            candidates.push_back(*x);
        }
    }
    // finite piece endpoints
    for (std::size_t i = 0; i < glist.size(); ++i) {
        for (const ParamInterval& iv : glist[i]->merged) {
            if (iv.lo) candidates.push_back(line_point(glist[i]->line, *iv.lo));
            if (iv.hi) candidates.push_back(line_point(glist[i]->line, *iv.hi));
        }
    }

    // frame box: bounding box of everything that matters, expanded, with a
    // perpendicular-foot anchor per line so every group crosses the frame
    Rational cx(0), cy(0);
    if (!candidates.empty()) {
        Rational xmin = candidates[0].x, xmax = candidates[0].x;
        Rational ymin = candidates[0].y, ymax = candidates[0].y;
        for (const Point& p : candidates) {
            if (p.x < xmin) xmin = p.x;
            if (xmax < p.x) xmax = p.x;
            if (p.y < ymin) ymin = p.y;
            if (ymax < p.y) ymax = p.y;
        }
        cx = Rational::midpoint(xmin, xmax);
        cy = Rational::midpoint(ymin, ymax);
    }
    for (std::size_t i = 0; i < glist.size(); ++i) {
        const Line& l = glist[i]->line;
        // foot of the perpendicular from the center (a, b normalized)
        Rational d = l.a * cx + l.b * cy - l.c;
        Rational n2 = l.a * l.a + l.b * l.b;
        candidates.push_back(Point{cx - l.a * d / n2, cy - l.b * d / n2});
    }
    Rational xmin(0), xmax(0), ymin(0), ymax(0);
    if (!candidates.empty()) {
        xmin = xmax = candidates[0].x;
        ymin = ymax = candidates[0].y;
        for (const Point& p : candidates) {
            if (p.x < xmin) xmin = p.x;
            if (xmax < p.x) xmax = p.x;
            if (p.y < ymin) ymin = p.y;
            if (ymax < p.y) ymax = p.y;
        }
    }
    Rational diam = (xmax - xmin) + (ymax - ymin) + Rational(16);
    Rational fx0 = xmin - diam, fx1 = xmax + diam;
    Rational fy0 = ymin - diam, fy1 = ymax + diam;

    Subdivision sub;
    sub.fx0_ = fx0;
    sub.fy0_ = fy0;
    sub.fx1_ = fx1;
    sub.fy1_ = fy1;

    // vertex registry
    std::map<Point, std::uint32_t> vid;
    auto vertex_of = [&](const Point& p, bool on_frame) {
        auto it = vid.find(p);
        if (it != vid.end()) {
            if (on_frame) sub.vertices_[it->second].on_frame = true;
            return it->second;
        }
        std::uint32_t id = static_cast<std::uint32_t>(sub.vertices_.size());
        sub.vertices_.push_back({p, on_frame, Subdivision::kOutside});
        vid.emplace(p, id);
        return id;
    };

    struct RawEdge {
        std::uint32_t v0, v1;
        bool on_frame;
    };
    std::vector<RawEdge> raw_edges;

    // frame crossings per side, to cut the frame rectangle later
    std::vector<Rational> side_cuts_left, side_cuts_right, side_cuts_bottom, side_cuts_top;

    for (std::size_t i = 0; i < glist.size(); ++i) {
        const Line& l = glist[i]->line;
        // frame window in line parameters
        Rational wlo, whi;
        if (l.a.is_zero()) {  // y = c, param x
            if (l.c < fy0 || fy1 < l.c) continue;
            wlo = fx0;
            whi = fx1;
        } else if (l.b.is_zero()) {  // x = c, param y
            if (l.c < fx0 || fx1 < l.c) continue;
            wlo = fy0;
            whi = fy1;
        } else {
            // x = c - b*y within [fx0, fx1] and y within [fy0, fy1]
            Rational y_at_x0 = (l.c - fx0) / l.b;
            Rational y_at_x1 = (l.c - fx1) / l.b;
            Rational lo = y_at_x0 < y_at_x1 ? y_at_x0 : y_at_x1;
            Rational hi = y_at_x0 < y_at_x1 ? y_at_x1 : y_at_x0;
            wlo = lo < fy0 ? fy0 : lo;
            whi = hi < fy1 ? hi : fy1;
            if (!(wlo < whi)) continue;
        }

        std::sort(cuts[i].begin(), cuts[i].end());
        cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());

        for (const ParamInterval& iv : glist[i]->merged) {
            Rational lo = iv.lo && *iv.lo > wlo ? *iv.lo : wlo;
            Rational hi = iv.hi && *iv.hi < whi ? *iv.hi : whi;
            if (!(lo < hi)) continue;
            std::vector<Rational> ts;
            ts.push_back(lo);
            auto it = std::upper_bound(cuts[i].begin(), cuts[i].end(), lo);
            for (; it != cuts[i].end() && *it < hi; ++it) ts.push_back(*it);
            ts.push_back(hi);
            std::vector<std::uint32_t> vs;
            vs.reserve(ts.size());
            for (const Rational& t : ts) {
                Point p = line_point(l, t);
                bool on_frame = p.x == fx0 || p.x == fx1 || p.y == fy0 || p.y == fy1;
                if (on_frame) {
                    if (p.x == fx0) side_cuts_left.push_back(p.y);
                    if (p.x == fx1) side_cuts_right.push_back(p.y);
                    if (p.y == fy0) side_cuts_bottom.push_back(p.x);
                    if (p.y == fy1) side_cuts_top.push_back(p.x);
                }
                vs.push_back(vertex_of(p, on_frame));
            }
            for (std::size_t k = 0; k + 1 < vs.size(); ++k)
                raw_edges.push_back({vs[k], vs[k + 1], false});
        }
    }

    // the frame rectangle, cut at curve crossings
    auto add_side = [&](bool vertical, const Rational& fixed, Rational from,
                        Rational to, std::vector<Rational>& cuts_on_side) {
        cuts_on_side.push_back(from);
        cuts_on_side.push_back(to);
        std::sort(cuts_on_side.begin(), cuts_on_side.end());
        cuts_on_side.erase(std::unique(cuts_on_side.begin(), cuts_on_side.end()),
                           cuts_on_side.end());
        for (std::size_t k = 0; k + 1 < cuts_on_side.size(); ++k) {
            Point a = vertical ? Point{fixed, cuts_on_side[k]}
                               : Point{cuts_on_side[k], fixed};
            Point b = vertical ? Point{fixed, cuts_on_side[k + 1]}
                               : Point{cuts_on_side[k + 1], fixed};
            raw_edges.push_back({vertex_of(a, true), vertex_of(b, true), true});
        }
    };
    add_side(true, fx0, fy0, fy1, side_cuts_left);
    add_side(true, fx1, fy0, fy1, side_cuts_right);
    add_side(false, fy0, fx0, fx1, side_cuts_bottom);
    add_side(false, fy1, fx0, fx1, side_cuts_top);

    // canonical edge orientation: v0 < v1 by point order
    for (RawEdge& e : raw_edges) {
        if (!(sub.vertices_[e.v0].p < sub.vertices_[e.v1].p)) std::swap(e.v0, e.v1);
    }

    // ---------------- half-edge structure ----------------
    const std::size_t ne = raw_edges.size();
    std::vector<std::uint32_t> he_from(2 * ne), he_to(2 * ne);
    for (std::size_t e = 0; e < ne; ++e) {
        he_from[2 * e] = raw_edges[e].v0;
        he_to[2 * e] = raw_edges[e].v1;
        he_from[2 * e + 1] = raw_edges[e].v1;
        he_to[2 * e + 1] = raw_edges[e].v0;
    }
    std::vector<std::vector<std::uint32_t>> out(sub.vertices_.size());
    for (std::uint32_t h = 0; h < 2 * ne; ++h) out[he_from[h]].push_back(h);
    // cache unreduced direction vectors once per half-edge
    std::vector<std::pair<BigInt, BigInt>> he_dir(2 * ne);
    for (std::uint32_t h = 0; h < 2 * ne; ++h) {
        const Point& a = sub.vertices_[he_from[h]].p;
        const Point& b = sub.vertices_[he_to[h]].p;
        he_dir[h] = {(b.x - a.x).num() * (b.y - a.y).den(),
                     (b.y - a.y).num() * (b.x - a.x).den()};
    }
    auto dir_half = [](const std::pair<BigInt, BigInt>& d) {
        int sy = d.second.sign();
        if (sy > 0) return 0;
        if (sy < 0) return 1;
        return d.first.sign() > 0 ? 0 : 1;
    };
    for (std::size_t v = 0; v < out.size(); ++v) {
        std::sort(out[v].begin(), out[v].end(), [&](std::uint32_t h1, std::uint32_t h2) {
            const auto& d1 = he_dir[h1];
            const auto& d2 = he_dir[h2];
            int k1 = dir_half(d1);
            int k2 = dir_half(d2);
            if (k1 != k2) return k1 < k2;
            int c = (d1.first * d2.second).cmp(d2.first * d1.second);
            if (c != 0) return c > 0;  // positive cross: d1 first
            return h1 < h2;            // equal directions impossible on merged groups
        });
    }
    std::vector<std::uint32_t> pos(2 * ne);
    for (std::uint32_t v = 0; v < out.size(); ++v)
        for (std::uint32_t k = 0; k < out[v].size(); ++k) pos[out[v][k]] = k;

    // next(h): clockwise predecessor of twin(h) around to(h); faces on the left
    std::vector<std::uint32_t> nxt(2 * ne);
    for (std::uint32_t h = 0; h < 2 * ne; ++h) {
        std::uint32_t t = h ^ 1;
        std::uint32_t v = he_from[t];
        const auto& ring = out[v];
        std::uint32_t k = pos[t];
        nxt[h] = ring[(k + ring.size() - 1) % ring.size()];
    }

    // face loops; the signed area decides outer boundary (positive) versus
    // hole (zero or negative).  Terms are summed pairwise so denominators
    // stay near their reduced size instead of compounding along the walk.
    std::vector<std::uint32_t> loop_of(2 * ne, UINT32_MAX);
    std::vector<std::uint32_t> loop_member;  // one half-edge per loop
    std::vector<int> loop_area_sign;
    std::vector<Rational> terms;
    auto sum_range = [&](auto&& self, std::size_t lo, std::size_t hi) -> Rational {
        if (hi - lo == 1) return terms[lo];
        std::size_t mid = lo + (hi - lo) / 2;
        return self(self, lo, mid) + self(self, mid, hi);
    };
    for (std::uint32_t h0 = 0; h0 < 2 * ne; ++h0) {
        if (loop_of[h0] != UINT32_MAX) continue;
        std::uint32_t loop = static_cast<std::uint32_t>(loop_member.size());
        terms.clear();
        std::uint32_t h = h0;
        do {
            loop_of[h] = loop;
            const Point& a = sub.vertices_[he_from[h]].p;
            const Point& b = sub.vertices_[he_to[h]].p;
            terms.push_back(a.x * b.y - b.x * a.y);
            h = nxt[h];
        } while (h != h0);
        loop_member.push_back(h0);
        loop_area_sign.push_back(sum_range(sum_range, 0, terms.size()).sign());
    }
    const std::size_t nloops = loop_member.size();

    // outer region: the loop left of the frame's bottom side walked right
    // to left (its left face lies beyond the frame)
    std::uint32_t outer_loop = UINT32_MAX;
    for (std::uint32_t e = 0; e < ne && outer_loop == UINT32_MAX; ++e) {
        if (!raw_edges[e].on_frame) continue;
        const Point& a = sub.vertices_[raw_edges[e].v0].p;
        const Point& b = sub.vertices_[raw_edges[e].v1].p;
        if (a.y == fy0 && b.y == fy0) outer_loop = loop_of[2 * e + 1];
    }
    assert(outer_loop != UINT32_MAX);

    // positive loops become faces
    std::vector<std::size_t> face_of_loop(nloops, Subdivision::kOutside);
    for (std::uint32_t l = 0; l < nloops; ++l) {
        if (l == outer_loop) continue;
        if (loop_area_sign[l] > 0) {
            face_of_loop[l] = sub.faces_.size();
            sub.faces_.push_back({Point{}, false});
        }
    }

    // attach hole loops: shoot a ray up (tilting on vertex hits) from the
    // loop's top vertex; the hit edge's near side hosts the hole
    std::vector<std::uint32_t> hole_parent(nloops, UINT32_MAX);
    for (std::uint32_t l = 0; l < nloops; ++l) {
        if (l == outer_loop || face_of_loop[l] != Subdivision::kOutside) continue;
        // topmost (then leftmost) vertex of the loop
        std::uint32_t h = loop_member[l];
        std::uint32_t best = he_from[h];
        std::uint32_t hh = h;
        do {
            std::uint32_t v = he_from[hh];
            const Point& pv = sub.vertices_[v].p;
            const Point& pb = sub.vertices_[best].p;
            if (pv.y > pb.y || (pv.y == pb.y && pv.x < pb.x)) best = v;
            hh = nxt[hh];
        } while (hh != h);
        const Point origin = sub.vertices_[best].p;

        for (int attempt = 0;; ++attempt) {
            Rational dx(attempt == 0 ? 0 : 1);
            Rational dy(attempt == 0 ? 1 : (1 << std::min(attempt + 3, 24)));
            Ray up{origin, dx, dy};
            std::optional<RayHit> hit;
            std::uint32_t hit_edge = UINT32_MAX;
            for (std::uint32_t e = 0; e < ne; ++e) {
                Segment es{sub.vertices_[raw_edges[e].v0].p,
                           sub.vertices_[raw_edges[e].v1].p, e};
                auto hh2 = ray_segment_first_hit(up, es);
                if (!hh2 || hh2->param.sign() <= 0) continue;
                if (!hit || hh2->param < hit->param) {
                    hit = hh2;
                    hit_edge = e;
                }
            }
            assert(hit);  // the frame top edge is always above
            const Point& hp = hit->point;
            if (hp == sub.vertices_[raw_edges[hit_edge].v0].p ||
                hp == sub.vertices_[raw_edges[hit_edge].v1].p)
                continue;  // vertex hit, tilt and retry
            // which side of the hit edge faces the ray origin
            int side = orientation(sub.vertices_[raw_edges[hit_edge].v0].p,
                                   sub.vertices_[raw_edges[hit_edge].v1].p, origin);
            assert(side != 0);
            std::uint32_t near_he = side > 0 ? 2 * hit_edge : 2 * hit_edge + 1;
            hole_parent[l] = loop_of[near_he];
            break;
        }
    }
    // resolve hole chains to faces
    std::vector<char> resolving(nloops, 0);
    auto resolve = [&](std::uint32_t l, auto&& self) -> std::size_t {
        if (l == outer_loop) return Subdivision::kOutside;
        if (face_of_loop[l] != Subdivision::kOutside || loop_area_sign[l] > 0)
            return face_of_loop[l];
        if (resolving[l]) return Subdivision::kOutside;
        resolving[l] = 1;
        std::size_t f = self(hole_parent[l], self);
        face_of_loop[l] = f;
        resolving[l] = 0;
        return f;
    };
    for (std::uint32_t l = 0; l < nloops; ++l) resolve(l, resolve);

    // edge faces
    sub.edges_.reserve(ne);
    for (std::uint32_t e = 0; e < ne; ++e) {
        Subdivision::Edge edge;
        edge.v0 = raw_edges[e].v0;
        edge.v1 = raw_edges[e].v1;
        edge.left = face_of_loop[loop_of[2 * e]];
        edge.right = face_of_loop[loop_of[2 * e + 1]];
        edge.on_frame = raw_edges[e].on_frame;
        sub.edges_.push_back(edge);
    }

    // per-face boundary edges, one entry per bounding half-edge (so an edge
    // with the same face on both sides appears twice, as the crossing-parity
    // scan for interior points requires)
    sub.face_edges_.assign(sub.faces_.size(), {});
    for (std::uint32_t h = 0; h < 2 * ne; ++h) {
        std::size_t f = face_of_loop[loop_of[h]];
        if (f != Subdivision::kOutside) sub.face_edges_[f].push_back(h / 2);
    }

    // unbounded flag, interior counts, vertex min face
    for (const Subdivision::Edge& e : sub.edges_) {
        if (!e.on_frame) continue;
        if (e.left != Subdivision::kOutside) sub.faces_[e.left].unbounded = true;
        if (e.right != Subdivision::kOutside) sub.faces_[e.right].unbounded = true;
    }
    sub.interior_edges_ = 0;
    for (const Subdivision::Edge& e : sub.edges_)
        if (!e.on_frame) ++sub.interior_edges_;
    sub.interior_vertices_ = 0;
    for (const Subdivision::Vertex& v : sub.vertices_)
        if (!v.on_frame) ++sub.interior_vertices_;
    for (const Subdivision::Edge& e : sub.edges_) {
        for (std::uint32_t v : {e.v0, e.v1}) {
            for (std::size_t f : {e.left, e.right}) {
                if (f != Subdivision::kOutside && f < sub.vertices_[v].min_face)
                    sub.vertices_[v].min_face = f;
            }
        }
    }

    // representative interior point per face
    for (std::size_t f = 0; f < sub.faces_.size(); ++f)
        sub.faces_[f].representative = sub.interior_point(f, 0);

    return sub;
}

}  // namespace viscount
