#ifndef VISCOUNT_SCENE_H
#define VISCOUNT_SCENE_H

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "viscount/geometry.h"

namespace viscount {

// Ordered collection of non-crossing segments, ids dense 0..n-1.
// Segments may share endpoints but never meet anywhere else.
class Scene {
  public:
    Scene() = default;
    explicit Scene(std::vector<Segment> segments);  // throws on crossings

    std::size_t size() const { return segments_.size(); }
    bool empty() const { return segments_.empty(); }
    const Segment& operator[](std::size_t i) const { return segments_[i]; }
    const std::vector<Segment>& segments() const { return segments_; }

    // axis-aligned bounding box of all endpoints; pre: non-empty
    void bounding_box(Rational& xmin, Rational& ymin, Rational& xmax,
                      Rational& ymax) const;

    bool point_on_any_segment(const Point& p) const;

    // Scene with segment `id` removed; remaining ids are re-densified in
    // order and the mapping old->new is the obvious one (shift above id).
    Scene without(std::size_t id) const;

    // Scene with one extra segment appended under id n.
    Scene with_extra(const Segment& s) const;

  private:
    std::vector<Segment> segments_;
};

struct DegeneracyReport {
    std::vector<std::pair<std::size_t, std::size_t>> crossing_pairs;
    std::vector<std::array<Point, 3>> collinear_triples;
    std::vector<std::pair<Line, Line>> parallel_endpoint_line_pairs;

    bool nondegenerate() const {
        return crossing_pairs.empty() && collinear_triples.empty() &&
               parallel_endpoint_line_pairs.empty();
    }
};

// true iff s and t share any point other than a common endpoint
bool segments_conflict(const Segment& s, const Segment& t);

// Exhaustive check of the three nondegeneracy conditions: segments meet
// only at common endpoints, no three distinct endpoints collinear, no two
// distinct endpoint-pair lines parallel.
DegeneracyReport validate_nondegenerate(const Scene& scene);

struct SceneParseError : std::runtime_error {
    explicit SceneParseError(const std::string& what) : std::runtime_error(what) {}
};

Scene load_scene(const std::string& text);
Scene load_scene_file(const std::string& path);
std::string save_scene(const Scene& scene);
void save_scene_file(const Scene& scene, const std::string& path);

// First non-skipped segment hit along r at strictly positive parameter.
// Ties through a shared endpoint go to the smallest id.
// pre: r.origin not interior to any non-skipped segment.
std::optional<std::pair<std::size_t, Point>> ray_first_hit(
    const Scene& scene, const Ray& r, const std::set<std::size_t>& skip = {});

}  // namespace viscount

#endif
