#ifndef VISCOUNT_SHADOW_LABELER_H
#define VISCOUNT_SHADOW_LABELER_H

#include <optional>
#include <vector>

#include "viscount/scene.h"

namespace viscount {

// Bulk form of the shadow-interval visibility test: everything that does
// not depend on the viewpoint (occluder levels against the target line,
// target-line crossings) is computed once, and the per-viewpoint work runs
// on unreduced fractions so no gcd normalization happens in the loop.
class ShadowLabeler {
  public:
    ShadowLabeler(const Scene& occluders, const Point& ta, const Point& tb);

    // weak visibility of the target piece from p
    // pre: p strictly off the target's supporting line and off every occluder
    bool visible(const Point& p) const;

  private:
    struct Frac {
        BigInt n, d;  // d > 0

        static Frac of(const Rational& r) { return {r.num(), r.den()}; }
        int cmp(const Frac& o) const { return (n * o.d).cmp(o.n * d); }
        int cmp_int(std::int64_t v) const { return n.cmp(d * BigInt(v)); }
    };

    struct Occluder {
        Point lo_pt, hi_pt;   // ordered by level against the target line
        Rational g_lo, g_hi;  // levels; g_lo <= g_hi
        std::optional<Point> zero_cut;  // crossing with the target line
    };

    struct Shadow {
        std::optional<Frac> lo, hi;
    };

    Point ta_, tb_;
    Rational ex_, ey_;
    std::vector<Occluder> occluders_;

    Frac project(const Point& p, const Rational& sx, const Rational& sy) const;
    mutable std::vector<Shadow> scratch_;
};

}  // namespace viscount

#endif
