#include "viscount/vsp.h"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <set>
#include <thread>

#include "viscount/visibility.h"

namespace viscount {

std::vector<Line> candidate_lines_full(const Scene& scene) {
    std::vector<Point> pts;
    for (const Segment& s : scene.segments()) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::set<Line> lines;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            lines.insert(Line::through(pts[i], pts[j]));
    return std::vector<Line>(lines.begin(), lines.end());
}

namespace {

// probe points straddling q across the direction (dx, dy), at offset eps
std::pair<Point, Point> straddle(const Point& q, const Rational& dx,
                                 const Rational& dy, const Rational& eps) {
    Rational nx = -dy * eps;
    Rational ny = dx * eps;
    return {Point{q.x + nx, q.y + ny}, Point{q.x - nx, q.y - ny}};
}

bool probe_pair_clean(const Point& a, const Point& b,
                      const std::vector<Line>& all_lines, const Line& own) {
    for (const Line& l : all_lines) {
        if (l == own) continue;
        // reject if either probe lies on l or the open probe segment crosses it
        Rational va = l.a * a.x + l.b * a.y - l.c;
        Rational vb = l.a * b.x + l.b * b.y - l.c;
        int sa = va.sign();
        int sb = vb.sign();
        if (sa == 0 || sb == 0 || sa != sb) return false;
    }
    return true;
}

}  // namespace

PrunedLineSet candidate_pieces_pruned(const Scene& scene, bool keep_drop_test) {
    PrunedLineSet out;
    for (const Segment& s : scene.segments())
        out.supporting.push_back(Line::supporting(s));
    std::sort(out.supporting.begin(), out.supporting.end());
    out.supporting.erase(std::unique(out.supporting.begin(), out.supporting.end()),
                         out.supporting.end());

    VisibilityGraph vg = visibility_graph(scene);
    out.graph_edges = vg.edge_count();

    for (const auto& [u, v] : vg.edges) {
        if (u / 2 == v / 2) continue;  // own supporting line, already present
        Point pa = VisibilityGraph::vertex_point(scene, u);
        Point pb = VisibilityGraph::vertex_point(scene, v);
        if (pa == pb) continue;  // coincident endpoints span no line
        for (int side = 0; side < 2; ++side) {
            const Point& from = side == 0 ? pa : pb;
            const Point& far = side == 0 ? pb : pa;
            Ray ray{from, from.x - far.x, from.y - far.y};
            auto hit = ray_first_hit(scene, ray, {u / 2, v / 2});
            PrunedPiece piece;
            piece.from_vertex = side == 0 ? u : v;
            piece.pair_vertex = side == 0 ? v : u;
            if (hit) {
                piece.cut = hit->second;
                if (hit->second == from) continue;  // blocked immediately
                piece.piece = Curve::make_segment(from, hit->second);
            } else {
                piece.piece = Curve::make_ray(ray);
            }
            out.pieces.push_back(std::move(piece));
        }
    }

    if (keep_drop_test && !out.pieces.empty()) {
        // all candidate supporting lines, for exact probe placement
        std::vector<Line> all_lines = out.supporting;
        for (const PrunedPiece& p : out.pieces) all_lines.push_back(p.piece.line);
        std::sort(all_lines.begin(), all_lines.end());
        all_lines.erase(std::unique(all_lines.begin(), all_lines.end()),
                        all_lines.end());

        std::vector<PrunedPiece> kept;
        for (PrunedPiece& p : out.pieces) {
            // midpoint of the piece (rays probe one direction-unit out)
            Point q;
            Rational dx, dy;
            if (p.piece.type == Curve::Type::segment) {
                q = Point{Rational::midpoint(p.piece.p0.x, p.piece.p1.x),
                          Rational::midpoint(p.piece.p0.y, p.piece.p1.y)};
                dx = p.piece.p1.x - p.piece.p0.x;
                dy = p.piece.p1.y - p.piece.p0.y;
            } else {
                q = Point{p.piece.p0.x + p.piece.dx, p.piece.p0.y + p.piece.dy};
                dx = p.piece.dx;
                dy = p.piece.dy;
            }
            bool decided = false;
            bool changes = true;
            Rational eps(1, 1024);
            for (int halving = 0; halving < 200; ++halving) {
                auto [qa, qb] = straddle(q, dx, dy, eps);
                if (!probe_pair_clean(qa, qb, all_lines, p.piece.line)) {
                    eps = eps * Rational(1, 2);
                    continue;
                }
                changes = visible_set(scene, qa).visible != visible_set(scene, qb).visible;
                decided = true;
                break;
            }
            if (!decided || changes) kept.push_back(std::move(p));
        }
        out.pieces = std::move(kept);
    }
    return out;
}

namespace {

void annotate_faces(const Scene& scene, VspStructure& vsp, std::size_t bitvec_limit) {
    const std::size_t nf = vsp.subdivision.face_count();
    const std::size_t n = scene.size();
    vsp.face_count.assign(nf, 0);
    bool keep_bits = n <= bitvec_limit;
    if (keep_bits) vsp.face_bits.assign(nf, {});

    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        while (true) {
            std::size_t f = cursor.fetch_add(1);
            if (f >= nf) return;
            Point p = vsp.subdivision.faces()[f].representative;
            for (unsigned attempt = 1; attempt <= 64; ++attempt) {
                if (in_general_position(scene, p)) break;
                p = vsp.subdivision.interior_point(f, attempt);
            }
            VisibleSet vs = visible_set(scene, p);
            vsp.face_count[f] = static_cast<std::uint32_t>(vs.count());
            if (keep_bits) {
                std::vector<std::uint64_t> bits((n + 63) / 64, 0);
                for (std::size_t id : vs.visible) bits[id / 64] |= 1ULL << (id % 64);
                vsp.face_bits[f] = std::move(bits);
            }
        }
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (nf < 64 || hw == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
}

}  // namespace

VspStructure build_vsp(const Scene& scene, VspMode mode, bool keep_drop_test,
                       std::size_t bitvec_limit) {
    std::vector<Curve> curves;
    if (mode == VspMode::full) {
        for (const Line& l : candidate_lines_full(scene))
            curves.push_back(Curve::make_line(l));
    } else {
        PrunedLineSet pruned = candidate_pieces_pruned(scene, keep_drop_test);
        for (const Line& l : pruned.supporting) curves.push_back(Curve::make_line(l));
        for (const PrunedPiece& p : pruned.pieces) curves.push_back(p.piece);
    }

    // make sure the frame comfortably covers the scene's surroundings
    std::vector<Point> extra;
    if (!scene.empty()) {
        Rational x0, y0, x1, y1;
        scene.bounding_box(x0, y0, x1, y1);
        Rational d = (x1 - x0) + (y1 - y0) + Rational(8);
        extra = {Point{x0 - d, y0 - d}, Point{x1 + d, y0 - d}, Point{x0 - d, y1 + d},
                 Point{x1 + d, y1 + d}};
    }

    VspStructure vsp;
    vsp.mode = mode;
    vsp.scene_size = scene.size();
    vsp.subdivision = build_arrangement(curves, extra);
    annotate_faces(scene, vsp, bitvec_limit);
    return vsp;
}

std::size_t vsp_query(const VspStructure& vsp, const Point& p) {
    LocateResult r = vsp.subdivision.locate(p);
    if (r.on_boundary)
        throw BoundaryQueryError("query point lies on a partition boundary");
    return vsp.face_count[r.face];
}

RelaxedVsp coarsen_vsp(std::shared_ptr<const VspStructure> vsp, std::size_t k) {
    RelaxedVsp out;
    out.base = vsp;
    out.k = k;
    const Subdivision& sub = vsp->subdivision;
    const auto& counts = vsp->face_count;
    const std::size_t modulus = k + 1;

    // classify separating edges; an edge whose sides differ by d >= 2 spans
    // every level in [lo, hi) and is kept under any residue choice
    struct SepEdge {
        std::uint32_t edge;
        std::uint32_t lo, hi;
    };
    std::vector<SepEdge> separating;
    for (std::uint32_t e = 0; e < sub.edges().size(); ++e) {
        const auto& edge = sub.edges()[e];
        if (edge.on_frame) continue;
        std::uint32_t c1 = counts[edge.left];
        std::uint32_t c2 = counts[edge.right];
        if (c1 == c2) continue;
        separating.push_back({e, std::min(c1, c2), std::max(c1, c2)});
    }
    out.separating_edges = separating.size();

    std::size_t best_kappa = 1;
    std::size_t best_kept = separating.size() + 1;
    for (std::size_t kappa = 1; kappa <= modulus; ++kappa) {
        std::size_t kept = 0;
        for (const SepEdge& s : separating) {
            if (s.hi - s.lo >= modulus) {
                ++kept;  // covers a full residue cycle
                continue;
            }
            // some level in [lo, hi) congruent to kappa mod (k+1)?
            std::size_t lo_mod = s.lo % modulus;
            std::size_t span = s.hi - s.lo;
            std::size_t target = kappa % modulus;
            std::size_t offset = (target + modulus - lo_mod) % modulus;
            if (offset < span) ++kept;
        }
        if (kept < best_kept) {
            best_kept = kept;
            best_kappa = kappa;
        }
    }
    out.kappa = best_kappa;

    // union faces across every dropped edge
    std::vector<std::uint32_t> parent(sub.face_count());
    for (std::uint32_t f = 0; f < parent.size(); ++f) parent[f] = f;
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto is_kept = [&](const SepEdge& s) {
        if (s.hi - s.lo >= modulus) return true;
        std::size_t lo_mod = s.lo % modulus;
        std::size_t target = best_kappa % modulus;
        std::size_t offset = (target + modulus - lo_mod) % modulus;
        return offset < (s.hi - s.lo);
    };
    std::vector<char> edge_kept(sub.edges().size(), 0);
    for (const SepEdge& s : separating) {
        if (is_kept(s)) {
            edge_kept[s.edge] = 1;
            out.kept_edges.push_back(s.edge);
        }
    }
    for (std::uint32_t e = 0; e < sub.edges().size(); ++e) {
        const auto& edge = sub.edges()[e];
        if (edge.on_frame || edge_kept[e]) continue;
        if (edge.left == Subdivision::kOutside || edge.right == Subdivision::kOutside)
            continue;
        parent[find(static_cast<std::uint32_t>(edge.left))] =
            find(static_cast<std::uint32_t>(edge.right));
    }
    out.super_of.resize(parent.size());
    out.super_count.resize(parent.size());
    for (std::uint32_t f = 0; f < parent.size(); ++f) {
        out.super_of[f] = find(f);
        out.super_count[f] = counts[out.super_of[f]];
    }
    return out;
}

std::size_t relaxed_query(const RelaxedVsp& rvsp, const Point& p) {
    LocateResult r = rvsp.base->subdivision.locate(p);
    if (r.on_boundary)
        throw BoundaryQueryError("query point lies on a partition boundary");
    return rvsp.super_count[r.face];
}

}  // namespace viscount
