#ifndef VISCOUNT_ARRANGEMENT_H
#define VISCOUNT_ARRANGEMENT_H

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "viscount/geometry.h"

namespace viscount {

// Input curve for an arrangement: a full line, a ray, or a segment.
struct Curve {
    enum class Type { line, ray, segment };

    Type type;
    Line line;       // supporting line, canonical
    Point p0, p1;    // segment endpoints / ray origin in p0
    Rational dx, dy; // ray direction

    static Curve make_line(const Line& l);
    static Curve make_ray(const Ray& r);
    static Curve make_segment(const Point& a, const Point& b);  // pre: a != b
};

struct LocateResult {
    std::size_t face = 0;
    // set exactly when the query point lies on an edge or vertex
    struct Boundary {
        bool is_vertex;
        std::size_t id;
    };
    std::optional<Boundary> on_boundary;
};

struct LocateOutsideFrameError : std::runtime_error {
    explicit LocateOutsideFrameError(const std::string& w) : std::runtime_error(w) {}
};

struct BoundaryQueryError : std::runtime_error {
    explicit BoundaryQueryError(const std::string& w) : std::runtime_error(w) {}
};

// Planar subdivision induced by a curve set, clipped to a rational frame
// box that strictly contains every curve intersection, piece endpoint and
// caller-supplied query point.  Faces are the cells inside the frame; a
// face is unbounded when the ideal arrangement extends it past the frame.
// The region beyond the frame is tracked as the sentinel face kOutside.
class Subdivision {
  public:
    static constexpr std::size_t kOutside = static_cast<std::size_t>(-1);

    struct Vertex {
        Point p;
        bool on_frame;
        std::size_t min_face;  // smallest incident face id
    };

    struct Edge {
        std::uint32_t v0, v1;   // canonical: vertices[v0].p < vertices[v1].p
        std::size_t left;       // face on the left of v0 -> v1 (kOutside beyond frame)
        std::size_t right;
        bool on_frame;
    };

    struct Face {
        Point representative;   // strictly interior
        bool unbounded;         // touches the frame
    };

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }

    // stats in the unclipped sense: frame artifacts excluded
    std::size_t vertex_count() const { return interior_vertices_; }
    std::size_t edge_count() const { return interior_edges_; }
    std::size_t face_count() const { return faces_.size(); }
    std::size_t boundary_segment_count() const { return interior_edges_; }

    void frame(Rational& x0, Rational& y0, Rational& x1, Rational& y1) const;
    bool inside_frame(const Point& p) const;

    // point location; throws LocateOutsideFrameError beyond the frame
    LocateResult locate(const Point& p) const;
    std::uint64_t locate_calls() const { return locate_calls_.load(); }

    // entries across all slab lists; the point-location index cost
    std::size_t slab_index_size() const;

    // Euler relation with a vertex at infinity for frame-crossing edges:
    // V - E + F = 1 + C over connected components
    bool euler_ok() const;

    // A strictly interior point of the face.  Attempt 0 is the stored
    // representative; higher attempts walk a deterministic ladder of interior
    // positions so callers can dodge measure-zero coincidences.
    Point interior_point(std::size_t face, unsigned attempt) const;

    Subdivision() = default;
    Subdivision(const Subdivision&) = delete;
    Subdivision& operator=(const Subdivision&) = delete;
    Subdivision(Subdivision&& o) noexcept { steal(std::move(o)); }
    Subdivision& operator=(Subdivision&& o) noexcept {
        if (this != &o) steal(std::move(o));
        return *this;
    }

  private:
    friend Subdivision build_arrangement(const std::vector<Curve>&,
                                         const std::vector<Point>&);

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Face> faces_;
    std::vector<std::vector<std::uint32_t>> face_edges_;  // slit edges twice
    std::size_t interior_vertices_ = 0;
    std::size_t interior_edges_ = 0;
    Rational fx0_, fy0_, fx1_, fy1_;

    // slab index built on first locate; the mutex only guards construction
    struct SlabIndex;
    mutable std::mutex slab_mu_;
    mutable std::shared_ptr<const SlabIndex> slabs_;
    mutable std::atomic<std::uint64_t> locate_calls_{0};

    void steal(Subdivision&& o) noexcept {
        vertices_ = std::move(o.vertices_);
        edges_ = std::move(o.edges_);
        faces_ = std::move(o.faces_);
        face_edges_ = std::move(o.face_edges_);
        interior_vertices_ = o.interior_vertices_;
        interior_edges_ = o.interior_edges_;
        fx0_ = std::move(o.fx0_);
        fy0_ = std::move(o.fy0_);
        fx1_ = std::move(o.fx1_);
        fy1_ = std::move(o.fy1_);
        slabs_ = std::atomic_load(&o.slabs_);
        locate_calls_.store(o.locate_calls_.load());
    }

    const SlabIndex& slab_index() const;
};

struct SubdivisionStats {
    std::size_t vertices;
    std::size_t edges;
    std::size_t faces;
    std::size_t boundary_segment_count;
};

SubdivisionStats subdivision_stats(const Subdivision& sub);

// Arrangement of the given curves; duplicates and collinear overlaps merge.
// extra_points are guaranteed to end up strictly inside the frame.
Subdivision build_arrangement(const std::vector<Curve>& curves,
                              const std::vector<Point>& extra_points = {});

}  // namespace viscount

#endif
