#include "viscount/visibility_graph.h"

#include <algorithm>
#include <map>
#include <optional>

#include "radial_sweep.h"

namespace viscount {

namespace {

struct EndpointEvent {
    Rational dx, dy;
    std::uint32_t vertex;
    Point at;
    std::size_t seg;
    int kind;  // 0 start, 1 end, 2 edge-on / incident far end
};

// Endpoints visible from the position of vertex u, as vertex ids.
// The viewpoint sits on its own segment(s); each incident segment blocks
// its entire outgoing ray, all other segments behave as in visible_set.
void visible_vertices_from(const Scene& scene, std::uint32_t u,
                           std::vector<std::uint32_t>& out) {
    out.clear();
    const Point q = VisibilityGraph::vertex_point(scene, u);
    const std::size_t n = scene.size();

    // outgoing directions of segments incident at q
    std::vector<std::pair<Rational, Rational>> own_dirs;
    for (const Segment& s : scene.segments()) {
        if (s.a == q) own_dirs.emplace_back(s.b.x - q.x, s.b.y - q.y);
        if (s.b == q) own_dirs.emplace_back(s.a.x - q.x, s.a.y - q.y);
    }

    std::vector<EndpointEvent> events;
    events.reserve(2 * n);
    for (const Segment& s : scene.segments()) {
        bool incident = s.a == q || s.b == q;
        for (int e = 0; e < 2; ++e) {
            const Point& pt = e == 0 ? s.a : s.b;
            if (pt == q) continue;  // self position
            Rational dx = pt.x - q.x;
            Rational dy = pt.y - q.y;
            int kind;
            if (incident || orientation(q, s.a, s.b) == 0) {
                kind = 2;
            } else {
                int o = orientation(q, s.a, s.b);
                bool is_start = (o > 0) == (e == 0);
                kind = is_start ? 0 : 1;
            }
            events.push_back(
                {std::move(dx), std::move(dy),
                 static_cast<std::uint32_t>(2 * s.id + e), pt, s.id, kind});
        }
    }
    if (events.empty()) return;

    std::sort(events.begin(), events.end(),
              [](const EndpointEvent& a, const EndpointEvent& b) {
                  return compare_directions_ccw(a.dx, a.dy, b.dx, b.dy) < 0;
              });

    detail::SweepFrame st{&scene.segments(), q, events.front().dx, events.front().dy};
    detail::RadialLess less{&st};
    detail::ActiveSet active(less);
    std::vector<std::optional<detail::ActiveSet::iterator>> where(n);

    Ray ref{q, st.dx, st.dy};
    for (const Segment& s : scene.segments()) {
        if (s.a == q || s.b == q) continue;
        if (orientation(q, s.a, s.b) == 0) continue;
        auto hit = ray_segment_first_hit(ref, s);
        if (!hit || hit->param.sign() <= 0) continue;
        if (hit->point == s.a || hit->point == s.b) continue;
        where[s.id] = active.insert(s.id).first;
    }

    std::size_t g0 = 0;
    while (g0 < events.size()) {
        std::size_t g1 = g0;
        while (g1 < events.size() &&
               compare_directions_ccw(events[g0].dx, events[g0].dy, events[g1].dx,
                                      events[g1].dy) == 0)
            ++g1;

        st.dx = events[g0].dx;
        st.dy = events[g0].dy;

        bool own_blocked = false;
        for (const auto& d : own_dirs) {
            if (compare_directions_ccw(d.first, d.second, st.dx, st.dy) == 0) {
                own_blocked = true;
                break;
            }
        }

        if (!own_blocked) {
            std::optional<Rational> tmin;
            for (std::size_t k = g0; k < g1; ++k) {
                Rational t = st.point_param(events[k].at);
                if (!tmin || t < *tmin) tmin = t;
            }
            if (!active.empty()) {
                Rational tb = st.param(*active.begin());
                if (tb < *tmin) tmin.reset();  // an interior crossing is closer
            }
            if (tmin) {
                for (std::size_t k = g0; k < g1; ++k)
                    if (st.point_param(events[k].at) == *tmin)
                        out.push_back(events[k].vertex);
            }
        }

        for (std::size_t k = g0; k < g1; ++k) {
            if (events[k].kind != 1) continue;
            if (where[events[k].seg]) {
                active.erase(*where[events[k].seg]);
                where[events[k].seg].reset();
            }
        }
        for (std::size_t k = g0; k < g1; ++k) {
            if (events[k].kind != 0) continue;
            if (!where[events[k].seg])
                where[events[k].seg] = active.insert(events[k].seg).first;
        }

        g0 = g1;
    }
}

}  // namespace

VisibilityGraph visibility_graph(const Scene& scene) {
    VisibilityGraph g;
    g.n_segments = scene.size();
    const std::uint32_t nv = static_cast<std::uint32_t>(2 * scene.size());

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    // same-segment pairs always present
    for (std::size_t i = 0; i < scene.size(); ++i)
        edges.emplace_back(static_cast<std::uint32_t>(2 * i),
                           static_cast<std::uint32_t>(2 * i + 1));
    // coincident vertex positions: the open segment between them is empty,
    // hence unblocked
    for (std::uint32_t u = 0; u < nv; ++u) {
        for (std::uint32_t v = u + 1; v < nv; ++v) {
            if (VisibilityGraph::vertex_point(scene, u) ==
                VisibilityGraph::vertex_point(scene, v))
                edges.emplace_back(u, v);
        }
    }

    std::vector<std::uint32_t> vis;
    for (std::uint32_t u = 0; u < nv; ++u) {
        visible_vertices_from(scene, u, vis);
        for (std::uint32_t v : vis) {
            if (u < v)
                edges.emplace_back(u, v);
            else if (v < u)
                edges.emplace_back(v, u);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    return g;
}

VisibilityGraph visibility_graph_naive(const Scene& scene) {
    VisibilityGraph g;
    g.n_segments = scene.size();
    const std::uint32_t nv = static_cast<std::uint32_t>(2 * scene.size());
    for (std::uint32_t u = 0; u < nv; ++u) {
        Point pu = VisibilityGraph::vertex_point(scene, u);
        for (std::uint32_t v = u + 1; v < nv; ++v) {
            Point pv = VisibilityGraph::vertex_point(scene, v);
            if (u / 2 == v / 2 || pu == pv) {
                g.edges.emplace_back(u, v);
                continue;
            }
            bool blocked = false;
            for (const Segment& s : scene.segments()) {
                if (open_segment_blocked(pu, pv, s)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) g.edges.emplace_back(u, v);
        }
    }
    return g;
}

}  // namespace viscount
