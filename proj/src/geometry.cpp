#include "viscount/geometry.h"

#include <cassert>
#include <stdexcept>

namespace viscount {

namespace {

// cross of (q - p) and (r - p) with denominators cleared; sign only
int orient_sign(const Point& p, const Point& q, const Point& r) {
    // Work over a common homogeneous form per point: (X, Y, W), W > 0.
    // sign det = sign[(q-p) x (r-p)] since all W factors are positive.
    const BigInt& pxn = p.x.num();
    const BigInt& pxd = p.x.den();
    const BigInt& pyn = p.y.num();
    const BigInt& pyd = p.y.den();
    const BigInt& qxn = q.x.num();
    const BigInt& qxd = q.x.den();
    const BigInt& qyn = q.y.num();
    const BigInt& qyd = q.y.den();
    const BigInt& rxn = r.x.num();
    const BigInt& rxd = r.x.den();
    const BigInt& ryn = r.y.num();
    const BigInt& ryd = r.y.den();
    // u = q - p, v = r - p, each as (num, den) with positive den
    BigInt ux = qxn * pxd - pxn * qxd;  // den qxd*pxd
    BigInt uy = qyn * pyd - pyn * qyd;  // den qyd*pyd
    BigInt vx = rxn * pxd - pxn * rxd;  // den rxd*pxd
    BigInt vy = ryn * pyd - pyn * ryd;  // den ryd*pyd
    // cross = ux*vy/(qxd pxd ryd pyd) - uy*vx/(qyd pyd rxd pxd)
    // common positive denominator: pxd pyd qxd qyd rxd ryd
    BigInt lhs = ux * vy * (qyd * rxd);
    BigInt rhs = uy * vx * (qxd * ryd);
    return (lhs - rhs).sign();
}

}  // namespace

int orientation(const Point& p, const Point& q, const Point& r) {
    return orient_sign(p, q, r);
}

int cross_sign(const Rational& ux, const Rational& uy, const Rational& vx,
               const Rational& vy) {
    BigInt lhs = ux.num() * vy.num() * (uy.den() * vx.den());
    BigInt rhs = uy.num() * vx.num() * (ux.den() * vy.den());
    return (lhs - rhs).sign();
}

int dot_sign(const Rational& ux, const Rational& uy, const Rational& vx,
             const Rational& vy) {
    BigInt lhs = ux.num() * vx.num() * (uy.den() * vy.den());
    BigInt rhs = uy.num() * vy.num() * (ux.den() * vx.den());
    return (lhs + rhs).sign();
}

Line Line::through(const Point& p, const Point& q) {
    assert(p != q);
    Rational a = q.y - p.y;
    Rational b = p.x - q.x;
    Rational c = a * p.x + b * p.y;
    if (!a.is_zero()) {
        c = c / a;
        b = b / a;
        a = Rational(1);
    } else {
        c = c / b;
        b = Rational(1);
    }
    return Line{a, b, c};
}

bool operator<(const Line& l, const Line& m) {
    int c = l.a.cmp(m.a);
    if (c != 0) return c < 0;
    c = l.b.cmp(m.b);
    if (c != 0) return c < 0;
    return l.c < m.c;
}

bool point_on_segment(const Point& p, const Segment& s) {
    if (orientation(s.a, s.b, p) != 0) return false;
    // collinear: check p within the bounding range of [a, b]
    int cx = s.a.x.cmp(s.b.x);
    if (cx != 0) {
        const Rational& lo = cx < 0 ? s.a.x : s.b.x;
        const Rational& hi = cx < 0 ? s.b.x : s.a.x;
        return lo <= p.x && p.x <= hi;
    }
    const Rational& lo = s.a.y < s.b.y ? s.a.y : s.b.y;
    const Rational& hi = s.a.y < s.b.y ? s.b.y : s.a.y;
    return lo <= p.y && p.y <= hi;
}

bool point_strictly_inside(const Point& p, const Segment& s) {
    return point_on_segment(p, s) && p != s.a && p != s.b;
}

namespace {

// p collinear with a-b; is p strictly between a and b?
bool strictly_between_collinear(const Point& p, const Point& a, const Point& b) {
    int cx = a.x.cmp(b.x);
    if (cx != 0) {
        const Rational& lo = cx < 0 ? a.x : b.x;
        const Rational& hi = cx < 0 ? b.x : a.x;
        return lo < p.x && p.x < hi;
    }
    const Rational& lo = a.y < b.y ? a.y : b.y;
    const Rational& hi = a.y < b.y ? b.y : a.y;
    return lo < p.y && p.y < hi;
}

}  // namespace

bool open_segment_blocked(const Point& p, const Point& q, const Segment& s) {
    assert(p != q);
    int o1 = orientation(p, q, s.a);
    int o2 = orientation(p, q, s.b);
    int o3 = orientation(s.a, s.b, p);
    int o4 = orientation(s.a, s.b, q);
    if (o1 == 0 && o2 == 0) {
        // everything collinear: does s overlap the open interval (p, q)?
        // overlap iff some endpoint of one lies strictly inside the other,
        // or s covers (p,q) entirely
        if (strictly_between_collinear(s.a, p, q)) return true;
        if (strictly_between_collinear(s.b, p, q)) return true;
        if (strictly_between_collinear(p, s.a, s.b)) return true;
        // s could equal [p,q] exactly or cover it with endpoints matching
        if (point_on_segment(p, s) && point_on_segment(q, s) && p != q) {
            // (p,q) open subset of s; nonempty since p != q
            return true;
        }
        return false;
    }
    if (o1 == 0) return strictly_between_collinear(s.a, p, q);
    if (o2 == 0) return strictly_between_collinear(s.b, p, q);
    if (o1 * o2 > 0) return false;  // s entirely on one side of line pq
    // s straddles line(p,q); crossing point is interior to s
    if (o3 * o4 < 0) return true;          // strictly between p and q
    return false;                           // hits line(s) at p or q, or outside
}

std::optional<Point> line_intersection(const Line& l1, const Line& l2) {
    Rational det = l1.a * l2.b - l2.a * l1.b;
    if (det.is_zero()) return std::nullopt;
    Rational x = (l1.c * l2.b - l2.c * l1.b) / det;
    Rational y = (l1.a * l2.c - l2.a * l1.c) / det;
    return Point{x, y};
}

std::optional<RayHit> ray_segment_first_hit(const Ray& r, const Segment& s) {
    // Solve r.origin + t * d = s.a + u * (s.b - s.a), t > 0, 0 <= u <= 1.
    Rational ex = s.b.x - s.a.x;
    Rational ey = s.b.y - s.a.y;
    Rational denom = r.dx * ey - r.dy * ex;
    Rational wx = s.a.x - r.origin.x;
    Rational wy = s.a.y - r.origin.y;
    if (denom.is_zero()) {
        if (cross_sign(wx, wy, r.dx, r.dy) != 0) return std::nullopt;  // parallel apart
        // collinear: parameter range covered by s along the ray axis
        Rational dd = r.dx * r.dx + r.dy * r.dy;
        Rational ta = (wx * r.dx + wy * r.dy) / dd;
        Rational tb = ((s.b.x - r.origin.x) * r.dx + (s.b.y - r.origin.y) * r.dy) / dd;
        Rational lo = ta < tb ? ta : tb;
        Rational hi = ta < tb ? tb : ta;
        if (hi.sign() <= 0) return std::nullopt;  // fully behind, or touch at origin
        if (lo.sign() > 0) {
            Point hit{r.origin.x + r.dx * lo, r.origin.y + r.dy * lo};
            return RayHit{s.id, hit, lo};
        }
        // s covers the origin: blocked immediately.  Reported with param 0
        // so that callers enforcing the positive-parameter contract can
        // treat it as an origin touch; the origin-interior case is excluded
        // by the ray-shooting precondition.
        return RayHit{s.id, r.origin, Rational(0)};
    }
    Rational t = (wx * ey - wy * ex) / denom;
    if (t.sign() <= 0) return std::nullopt;
    Rational u = (wx * r.dy - wy * r.dx) / denom;
    if (u.sign() < 0 || u > Rational(1)) return std::nullopt;
    Point hit{r.origin.x + r.dx * t, r.origin.y + r.dy * t};
    return RayHit{s.id, hit, t};
}

namespace {

// 0 for direction in [0, pi) starting at (1,0) inclusive, 1 for [pi, 2pi)
int half_of(const Rational& dx, const Rational& dy) {
    int sy = dy.sign();
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return dx.sign() > 0 ? 0 : 1;
}

}  // namespace

int compare_directions_ccw(const Rational& ux, const Rational& uy,
                           const Rational& vx, const Rational& vy) {
    int hu = half_of(ux, uy);
    int hv = half_of(vx, vy);
    if (hu != hv) return hu < hv ? -1 : 1;
    int c = cross_sign(ux, uy, vx, vy);
    if (c > 0) return -1;  // u strictly before v
    if (c < 0) return 1;
    return 0;
}

}  // namespace viscount
