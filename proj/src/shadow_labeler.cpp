#include "shadow_labeler.h"

#include <algorithm>
#include <cassert>

namespace viscount {

ShadowLabeler::ShadowLabeler(const Scene& occluders, const Point& ta, const Point& tb)
    : ta_(ta), tb_(tb), ex_(tb.x - ta.x), ey_(tb.y - ta.y) {
    occluders_.reserve(occluders.size());
    for (const Segment& s : occluders.segments()) {
        Occluder oc;
        Rational ga = ex_ * (s.a.y - ta_.y) - ey_ * (s.a.x - ta_.x);
        Rational gb = ex_ * (s.b.y - ta_.y) - ey_ * (s.b.x - ta_.x);
        if (ga <= gb) {
            oc.lo_pt = s.a;
            oc.hi_pt = s.b;
            oc.g_lo = std::move(ga);
            oc.g_hi = std::move(gb);
        } else {
            oc.lo_pt = s.b;
            oc.hi_pt = s.a;
            oc.g_lo = std::move(gb);
            oc.g_hi = std::move(ga);
        }
        if (oc.g_lo.sign() < 0 && oc.g_hi.sign() > 0) {
            Rational t = -oc.g_lo / (oc.g_hi - oc.g_lo);
            oc.zero_cut = Point{oc.lo_pt.x + (oc.hi_pt.x - oc.lo_pt.x) * t,
                                oc.lo_pt.y + (oc.hi_pt.y - oc.lo_pt.y) * t};
        }
        occluders_.push_back(std::move(oc));
    }
}

// target-line parameter of the ray p -> s, as an unreduced fraction
ShadowLabeler::Frac ShadowLabeler::project(const Point& p, const Rational& sx,
                                           const Rational& sy) const {
    Rational wx = sx - p.x;
    Rational wy = sy - p.y;
    // num = cross(w, ta - p); den = cross(e, w)
    Rational ax = ta_.x - p.x;
    Rational ay = ta_.y - p.y;
    BigInt num_n = (wx.num() * ay.num()) * (wy.den() * ax.den()) -
                   (wy.num() * ax.num()) * (wx.den() * ay.den());
    BigInt num_d = wx.den() * wy.den() * ax.den() * ay.den();
    BigInt den_n = (ex_.num() * wy.num()) * (ey_.den() * wx.den()) -
                   (ey_.num() * wx.num()) * (ex_.den() * wy.den());
    BigInt den_d = ex_.den() * ey_.den() * wx.den() * wy.den();
    // t = (num_n / num_d) / (den_n / den_d)
    BigInt n = num_n * den_d;
    BigInt d = den_n * num_d;
    if (d.sign() < 0) {
        n = -n;
        d = -d;
    }
    return Frac{std::move(n), std::move(d)};
}

bool ShadowLabeler::visible(const Point& p) const {
    Rational gp = ex_ * (p.y - ta_.y) - ey_ * (p.x - ta_.x);
    assert(!gp.is_zero());
    const bool flip = gp.sign() < 0;
    if (flip) gp = -gp;

    scratch_.clear();
    for (const Occluder& oc : occluders_) {
        Rational glo = flip ? -oc.g_hi : oc.g_lo;
        Rational ghi = flip ? -oc.g_lo : oc.g_hi;
        const Point* lo_pt = flip ? &oc.hi_pt : &oc.lo_pt;
        const Point* hi_pt = flip ? &oc.lo_pt : &oc.hi_pt;
        if (ghi.sign() <= 0 || glo >= gp) continue;
        if (glo == ghi) {
            // parallel to the target line, strictly inside the slab
            Frac t1 = project(p, oc.lo_pt.x, oc.lo_pt.y);
            Frac t2 = project(p, oc.hi_pt.x, oc.hi_pt.y);
            Shadow sh;
            if (t1.cmp(t2) <= 0) {
                sh.lo = std::move(t1);
                sh.hi = std::move(t2);
            } else {
                sh.lo = std::move(t2);
                sh.hi = std::move(t1);
            }
            if (sh.hi->cmp_int(0) < 0 || sh.lo->cmp_int(1) > 0) continue;
            scratch_.push_back(std::move(sh));
            continue;
        }
        bool cut_low = glo.sign() < 0;
        bool cut_high = ghi > gp;
        bool at_p_level = ghi == gp;
        Shadow sh;
        if (cut_high || at_p_level) {
            // shadow runs to infinity; its direction follows the position of
            // the upper crossing (or upper endpoint) along the target axis
            Rational starx, stary;
            if (cut_high) {
                Rational t = (gp - glo) / (ghi - glo);
                starx = lo_pt->x + (hi_pt->x - lo_pt->x) * t;
                stary = lo_pt->y + (hi_pt->y - lo_pt->y) * t;
            } else {
                starx = hi_pt->x;
                stary = hi_pt->y;
            }
            Rational side = (starx - p.x) * ex_ + (stary - p.y) * ey_;
            Frac tn = cut_low && oc.zero_cut
                          ? project(p, oc.zero_cut->x, oc.zero_cut->y)
                          : project(p, lo_pt->x, lo_pt->y);
            if (side.sign() > 0)
                sh.lo = std::move(tn);
            else
                sh.hi = std::move(tn);
        } else {
            Frac t1 = cut_low && oc.zero_cut
                          ? project(p, oc.zero_cut->x, oc.zero_cut->y)
                          : project(p, lo_pt->x, lo_pt->y);
            Frac t2 = project(p, hi_pt->x, hi_pt->y);
            if (t1.cmp(t2) <= 0) {
                sh.lo = std::move(t1);
                sh.hi = std::move(t2);
            } else {
                sh.lo = std::move(t2);
                sh.hi = std::move(t1);
            }
        }
        if (sh.hi && sh.hi->cmp_int(0) < 0) continue;
        if (sh.lo && sh.lo->cmp_int(1) > 0) continue;
        scratch_.push_back(std::move(sh));
    }

    std::sort(scratch_.begin(), scratch_.end(), [](const Shadow& a, const Shadow& b) {
        if (!a.lo) return static_cast<bool>(b.lo);
        if (!b.lo) return false;
        return a.lo->cmp(*b.lo) < 0;
    });
    Frac reach{BigInt(0), BigInt(1)};
    bool started = false;
    for (const Shadow& sh : scratch_) {
        if (!started) {
            if (sh.lo && sh.lo->cmp_int(0) > 0) return true;
            started = true;
        } else if (sh.lo && sh.lo->cmp(reach) > 0) {
            return true;
        }
        if (!sh.hi) return false;
        if (sh.hi->cmp(reach) > 0) reach = *sh.hi;
        if (reach.cmp_int(1) >= 0) return false;
    }
    return true;
}

}  // namespace viscount
