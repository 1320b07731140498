#ifndef VISCOUNT_RADIAL_SWEEP_H
#define VISCOUNT_RADIAL_SWEEP_H

#include <optional>
#include <set>
#include <vector>

#include "viscount/geometry.h"

namespace viscount::detail {

// Shared state for a rotational sweep around a fixed point: the current ray
// direction advances between event groups, and the radial order of the
// non-crossing segments intersecting the ray stays consistent in between.
struct SweepFrame {
    const std::vector<Segment>* segs;
    Point p;
    Rational dx, dy;

    // intersection parameter of segment i's supporting line with the
    // current ray, in units of |d|
    Rational param(std::size_t i) const {
        const Segment& s = (*segs)[i];
        Rational ex = s.b.x - s.a.x;
        Rational ey = s.b.y - s.a.y;
        Rational denom = dx * ey - dy * ex;
        Rational wx = s.a.x - p.x;
        Rational wy = s.a.y - p.y;
        return (wx * ey - wy * ex) / denom;
    }

    Rational point_param(const Point& e) const {
        Rational vx = e.x - p.x;
        Rational vy = e.y - p.y;
        return (vx * dx + vy * dy) / (dx * dx + dy * dy);
    }
};

struct RadialLess {
    SweepFrame* st;

    bool operator()(std::size_t i, std::size_t j) const {
        if (i == j) return false;
        Rational ti = st->param(i);
        Rational tj = st->param(j);
        int c = ti.cmp(tj);
        if (c != 0) return c < 0;
        // both touch the ray at the same point; order by who is nearer just
        // after an infinitesimal counter-clockwise rotation
        const Segment& si = (*st->segs)[i];
        const Segment& sj = (*st->segs)[j];
        auto forward = [&](const Segment& s) -> std::optional<Point> {
            if (cross_sign(st->dx, st->dy, s.a.x - st->p.x, s.a.y - st->p.y) > 0)
                return s.a;
            if (cross_sign(st->dx, st->dy, s.b.x - st->p.x, s.b.y - st->p.y) > 0)
                return s.b;
            return std::nullopt;
        };
        auto ei = forward(si);
        auto ej = forward(sj);
        if (ei && ej) {
            // v = E - q for the shared ray point q; nearer just after the
            // rotation has the smaller cotangent dot/cross
            Point q{st->p.x + st->dx * ti, st->p.y + st->dy * ti};
            Rational v1x = ei->x - q.x, v1y = ei->y - q.y;
            Rational v2x = ej->x - q.x, v2y = ej->y - q.y;
            Rational d1 = st->dx * v1x + st->dy * v1y;
            Rational c1 = st->dx * v1y - st->dy * v1x;
            Rational d2 = st->dx * v2x + st->dy * v2y;
            Rational c2 = st->dx * v2y - st->dy * v2x;
            int cc = (d1 * c2).cmp(d2 * c1);
            if (cc != 0) return cc < 0;
        }
        return i < j;
    }
};

using ActiveSet = std::set<std::size_t, RadialLess>;

}  // namespace viscount::detail

#endif
