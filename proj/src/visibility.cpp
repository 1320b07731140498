#include "viscount/visibility.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>

#include "radial_sweep.h"

namespace viscount {

namespace {

enum class EventKind { start, end, edge_on };

struct Event {
    Rational dx, dy;   // direction endpoint - viewpoint
    EventKind kind;
    std::size_t seg;
    Point at;
};

}  // namespace

bool in_general_position(const Scene& scene, const Point& p) {
    if (scene.point_on_any_segment(p)) return false;
    // collect canonical directions to all distinct endpoints; a repeat means
    // two endpoints collinear with p
    std::vector<Point> pts;
    for (const Segment& s : scene.segments()) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::pair<std::string, std::string>> dirs;
    dirs.reserve(pts.size());
    for (const Point& e : pts) {
        Rational rx = e.x - p.x;
        Rational ry = e.y - p.y;
        BigInt nx = rx.num() * ry.den();
        BigInt ny = ry.num() * rx.den();
        BigInt g = BigInt::gcd(nx, ny);
        nx = nx / g;
        ny = ny / g;
        if (nx.sign() < 0 || (nx.sign() == 0 && ny.sign() < 0)) {
            nx = -nx;
            ny = -ny;
        }
        dirs.emplace_back(nx.to_string(), ny.to_string());
    }
    std::sort(dirs.begin(), dirs.end());
    return std::adjacent_find(dirs.begin(), dirs.end()) == dirs.end();
}

VisibleSet visible_set(const Scene& scene, const Point& p) {
    if (scene.point_on_any_segment(p))
        throw ViewpointOnSegmentError("viewpoint lies on a scene segment");

    VisibleSet out;
    out.viewpoint = p;
    const std::size_t n = scene.size();
    if (n == 0) return out;

    std::vector<Event> events;
    events.reserve(2 * n);
    for (const Segment& s : scene.segments()) {
        int o = orientation(p, s.a, s.b);
        Rational adx = s.a.x - p.x, ady = s.a.y - p.y;
        Rational bdx = s.b.x - p.x, bdy = s.b.y - p.y;
        if (o == 0) {
            // edge-on: both endpoints share a ray from p; participates only
            // in at-angle hits
            events.push_back({adx, ady, EventKind::edge_on, s.id, s.a});
            events.push_back({bdx, bdy, EventKind::edge_on, s.id, s.b});
        } else if (o > 0) {
            events.push_back({adx, ady, EventKind::start, s.id, s.a});
            events.push_back({bdx, bdy, EventKind::end, s.id, s.b});
        } else {
            events.push_back({bdx, bdy, EventKind::start, s.id, s.b});
            events.push_back({adx, ady, EventKind::end, s.id, s.a});
        }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return compare_directions_ccw(a.dx, a.dy, b.dx, b.dy) < 0;
    });

    detail::SweepFrame st{&scene.segments(), p, events.front().dx, events.front().dy};
    detail::RadialLess less{&st};
    detail::ActiveSet active(less);
    std::vector<std::optional<detail::ActiveSet::iterator>> where(n);

    // initial active set: segments properly crossed in their interior by the
    // reference ray
    Ray ref{p, st.dx, st.dy};
    for (const Segment& s : scene.segments()) {
        if (orientation(p, s.a, s.b) == 0) continue;
        auto hit = ray_segment_first_hit(ref, s);
        if (!hit || hit->param.sign() <= 0) continue;
        if (hit->point == s.a || hit->point == s.b) continue;  // event boundary
        where[s.id] = active.insert(s.id).first;
    }

    std::vector<char> vis(n, 0);
    auto mark = [&](std::size_t id) { vis[id] = 1; };

    std::size_t g0 = 0;
    while (g0 < events.size()) {
        std::size_t g1 = g0;
        while (g1 < events.size() &&
               compare_directions_ccw(events[g0].dx, events[g0].dy, events[g1].dx,
                                      events[g1].dy) == 0)
            ++g1;

        // move the ray to this event direction
        st.dx = events[g0].dx;
        st.dy = events[g0].dy;

        // at-angle first hit: nearest event endpoint vs nearest crossing
        std::optional<Rational> tmin;
        for (std::size_t k = g0; k < g1; ++k) {
            Rational t = st.point_param(events[k].at);
            if (!tmin || t < *tmin) tmin = t;
        }
        std::optional<Rational> tbegin;
        if (!active.empty()) {
            tbegin = st.param(*active.begin());
            if (!tmin || *tbegin < *tmin) tmin = tbegin;
        }
        if (tmin) {
            for (std::size_t k = g0; k < g1; ++k)
                if (st.point_param(events[k].at) == *tmin) mark(events[k].seg);
            if (tbegin && *tbegin == *tmin) mark(*active.begin());
        }

        // removals before insertions at a shared direction
        for (std::size_t k = g0; k < g1; ++k) {
            if (events[k].kind != EventKind::end) continue;
            if (where[events[k].seg]) {
                active.erase(*where[events[k].seg]);
                where[events[k].seg].reset();
            }
        }
        for (std::size_t k = g0; k < g1; ++k) {
            if (events[k].kind != EventKind::start) continue;
            where[events[k].seg] = active.insert(events[k].seg).first;
        }

        // nearest active segment is visible throughout the next open interval
        if (!active.empty()) mark(*active.begin());

        g0 = g1;
    }

    for (std::size_t i = 0; i < n; ++i)
        if (vis[i]) out.visible.insert(i);
    return out;
}

std::size_t visibility_count(const Scene& scene, const Point& p) {
    return visible_set(scene, p).count();
}

VisibleSet visible_set_oracle(const Scene& scene, const Point& p) {
    if (scene.point_on_any_segment(p))
        throw GeneralPositionError("viewpoint lies on a scene segment");
    if (!in_general_position(scene, p))
        throw GeneralPositionError("viewpoint lies on a line through two endpoints");

    VisibleSet out;
    out.viewpoint = p;
    if (scene.empty()) return out;

    // distinct endpoint directions in counter-clockwise order
    std::vector<std::pair<Rational, Rational>> dirs;
    for (const Segment& s : scene.segments()) {
        dirs.emplace_back(s.a.x - p.x, s.a.y - p.y);
        dirs.emplace_back(s.b.x - p.x, s.b.y - p.y);
    }
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
        return compare_directions_ccw(a.first, a.second, b.first, b.second) < 0;
    });
    dirs.erase(std::unique(dirs.begin(), dirs.end(),
                           [](const auto& a, const auto& b) {
                               return compare_directions_ccw(a.first, a.second,
                                                             b.first, b.second) == 0;
                           }),
               dirs.end());

    for (std::size_t k = 0; k < dirs.size(); ++k) {
        const auto& d1 = dirs[k];
        const auto& d2 = dirs[(k + 1) % dirs.size()];
        int cs = cross_sign(d1.first, d1.second, d2.first, d2.second);
        Rational mx, my;
        if (cs > 0) {  // gap smaller than pi: any positive combination
            mx = d1.first + d2.first;
            my = d1.second + d2.second;
        } else if (cs == 0) {  // gap exactly pi (or the single-direction wrap)
            mx = -d1.second;
            my = d1.first;
        } else {  // gap larger than pi: antipode of the small-gap interior
            mx = -(d1.first + d2.first);
            my = -(d1.second + d2.second);
        }
        Ray mid{p, mx, my};
        std::optional<RayHit> best;
        for (const Segment& s : scene.segments()) {
            auto hit = ray_segment_first_hit(mid, s);
            if (!hit || hit->param.sign() <= 0) continue;
            if (!best || hit->param < best->param) best = std::move(hit);
        }
        if (best) out.visible.insert(best->id);
    }
    return out;
}

namespace {

struct Shadow {
    std::optional<Rational> lo, hi;  // target-line parameters, absent = open end
};

}  // namespace

bool target_visible_shadows(const Scene& occluders, const Point& p,
                            const Point& ta, const Point& tb) {
    // signed level against the target line, scaled so the target sits at 0
    // and p at gp > 0
    Rational ex = tb.x - ta.x;
    Rational ey = tb.y - ta.y;
    auto level = [&](const Point& q) {
        return ex * (q.y - ta.y) - ey * (q.x - ta.x);
    };
    Rational gp = level(p);
    assert(!gp.is_zero());
    int flip = gp.sign();
    if (flip < 0) gp = -gp;

    // target-line parameter of the ray p -> s
    auto project = [&](const Point& s) {
        Rational wx = s.x - p.x;
        Rational wy = s.y - p.y;
        Rational denom = ex * wy - ey * wx;
        Rational num = wx * (ta.y - p.y) - wy * (ta.x - p.x);
        return num / denom;
    };

    std::vector<Shadow> shadows;
    for (const Segment& s : occluders.segments()) {
        Rational ga = level(s.a);
        Rational gb = level(s.b);
        if (flip < 0) {
            ga = -ga;
            gb = -gb;
        }
        // portion of s with level strictly inside (0, gp) casts the shadow
        const Point* lo_pt = &s.a;
        const Point* hi_pt = &s.b;
        Rational glo = ga, ghi = gb;
        if (glo > ghi) {
            std::swap(glo, ghi);
            std::swap(lo_pt, hi_pt);
        }
        if (ghi.sign() <= 0 || glo >= gp) continue;  // fully outside the slab
        if (glo == ghi) {
            // parallel to the target line, strictly inside the slab
            Rational t1 = project(s.a);
            Rational t2 = project(s.b);
            Shadow sh;
            sh.lo = t1 < t2 ? t1 : t2;
            sh.hi = t1 < t2 ? t2 : t1;
            if (sh.hi->sign() < 0 || *sh.lo > Rational(1)) continue;
            shadows.push_back(std::move(sh));
            continue;
        }
        bool cut_low = glo.sign() < 0;   // crosses the target line
        bool cut_high = ghi > gp;        // crosses the parallel through p
        bool at_p_level = ghi == gp;     // endpoint exactly level with p
        auto cut_point = [&](const Rational& g) {
            // affine interpolation along s at level g
            Rational t = (g - glo) / (ghi - glo);
            return Point{lo_pt->x + (hi_pt->x - lo_pt->x) * t,
                         lo_pt->y + (hi_pt->y - lo_pt->y) * t};
        };
        Shadow sh;
        if (cut_high) {
            // the shadow runs to infinity on the side of the target line
            // direction at p's level
            Point star = cut_point(gp);
            Rational side = (star.x - p.x) * ex + (star.y - p.y) * ey;
            Point near = cut_low ? cut_point(Rational(0)) : *lo_pt;
            Rational tn = project(near);
            if (side.sign() > 0)
                sh.lo = tn;  // [tn, +inf)
            else
                sh.hi = tn;  // (-inf, tn]
        } else {
            Point a = cut_low ? cut_point(Rational(0)) : *lo_pt;
            const Point& b = *hi_pt;
            Rational t1 = project(a);
            Rational t2 = at_p_level ? t1 : project(b);
            if (at_p_level) {
                // the endpoint at p's level sends the shadow to infinity
                Rational side = (hi_pt->x - p.x) * ex + (hi_pt->y - p.y) * ey;
                if (side.sign() > 0)
                    sh.lo = t1;
                else
                    sh.hi = t1;
            } else {
                sh.lo = t1 < t2 ? t1 : t2;
                sh.hi = t1 < t2 ? t2 : t1;
            }
        }
        // clip to the target span early
        if (sh.hi && sh.hi->sign() < 0) continue;
        if (sh.lo && *sh.lo > Rational(1)) continue;
        shadows.push_back(std::move(sh));
    }

    // visible iff the closed shadows fail to cover [0, 1]
    std::sort(shadows.begin(), shadows.end(), [](const Shadow& a, const Shadow& b) {
        if (!a.lo) return static_cast<bool>(b.lo);
        if (!b.lo) return false;
        return *a.lo < *b.lo;
    });
    Rational reach(0);
    bool started = false;
    for (const Shadow& sh : shadows) {
        Rational lo = sh.lo ? *sh.lo : Rational(-1);
        if (!started) {
            if (lo.sign() > 0) return true;  // gap at the start
            started = true;
        } else if (lo > reach) {
            return true;  // gap strictly inside
        }
        if (!sh.hi) return false;  // covered to +infinity
        if (*sh.hi > reach) reach = *sh.hi;
        if (reach >= Rational(1)) return false;
    }
    return true;
}

bool is_target_visible(const Scene& scene, const Point& p, const Segment& t) {
    if (point_on_segment(p, t))
        throw ViewpointOnSegmentError("viewpoint lies on the target");
    for (const Segment& s : scene.segments())
        if (segments_conflict(s, t))
            throw std::invalid_argument("target crosses a scene segment");
    Scene ext = scene.with_extra(t);
    VisibleSet vs = visible_set(ext, p);
    return vs.visible.count(scene.size()) > 0;
}

}  // namespace viscount
