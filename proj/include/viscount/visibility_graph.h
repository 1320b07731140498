#ifndef VISCOUNT_VISIBILITY_GRAPH_H
#define VISCOUNT_VISIBILITY_GRAPH_H

#include <cstdint>
#include <vector>

#include "viscount/scene.h"

namespace viscount {

// Graph on the 2n segment endpoints, one vertex per (segment, endpoint)
// slot.  Vertex v corresponds to endpoint v % 2 of segment v / 2.  An edge
// joins u and v when the open segment between their positions meets no
// scene segment; the two endpoints of one segment are always joined.
struct VisibilityGraph {
    std::size_t n_segments = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v

    std::size_t vertex_count() const { return 2 * n_segments; }
    std::size_t edge_count() const { return edges.size(); }

    static Point vertex_point(const Scene& scene, std::uint32_t v) {
        const Segment& s = scene[v / 2];
        return v % 2 == 0 ? s.a : s.b;
    }
};

// One rotational sweep per endpoint; O(n^2 log n) overall.
VisibilityGraph visibility_graph(const Scene& scene);

// Quadratic-per-pair reference used by the tests.
VisibilityGraph visibility_graph_naive(const Scene& scene);

}  // namespace viscount

#endif
