#ifndef VISCOUNT_VISIBILITY_H
#define VISCOUNT_VISIBILITY_H

#include <set>
#include <stdexcept>
#include <vector>

#include "viscount/scene.h"

namespace viscount {

struct VisibleSet {
    Point viewpoint;
    std::set<std::size_t> visible;

    std::size_t count() const { return visible.size(); }
};

struct ViewpointOnSegmentError : std::runtime_error {
    explicit ViewpointOnSegmentError(const std::string& w) : std::runtime_error(w) {}
};

struct GeneralPositionError : std::runtime_error {
    explicit GeneralPositionError(const std::string& w) : std::runtime_error(w) {}
};

// Ids of all segments weakly visible from p, by rotational sweep over the
// 2n endpoint events.  Exact at every viewpoint off the segments, including
// viewpoints on endpoint-pair lines (sight along the event ray counts).
// throws ViewpointOnSegmentError if p lies on a scene segment.
VisibleSet visible_set(const Scene& scene, const Point& p);

std::size_t visibility_count(const Scene& scene, const Point& p);

// true iff p lies on no scene segment and on no line through two distinct
// scene endpoints
bool in_general_position(const Scene& scene, const Point& p);

// Independent oracle: sorts endpoint directions, shoots one ray through
// each angular gap, marks first-hit segments.  Requires general position;
// the violation is detected exactly and reported.
VisibleSet visible_set_oracle(const Scene& scene, const Point& p);

// Weak visibility of a target segment t through the scene: true iff some
// point of t connects to p by an open segment missing every scene segment.
// pre: p on neither t nor any scene segment; t crosses no scene segment.
bool is_target_visible(const Scene& scene, const Point& p, const Segment& t);

// Same decision by a different route: each occluder's shadow is projected
// from p onto the target's line and the target is visible iff the shadows
// fail to cover it.  Used for bulk face labeling; the sweep-backed
// is_target_visible stays the reference the tests compare against.
// pre: p strictly off the target's supporting line and off every occluder.
bool target_visible_shadows(const Scene& occluders, const Point& p,
                            const Point& ta, const Point& tb);

}  // namespace viscount

#endif
