#ifndef VISCOUNT_GEOMETRY_H
#define VISCOUNT_GEOMETRY_H

#include <optional>
#include <vector>

#include "viscount/rational.h"

namespace viscount {

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    // lexicographic (x, then y); used for canonical orderings
    friend bool operator<(const Point& a, const Point& b) {
        int c = a.x.cmp(b.x);
        if (c != 0) return c < 0;
        return a.y < b.y;
    }
};

struct Segment {
    Point a;
    Point b;
    std::size_t id = 0;
};

// A x + B y = C, normalized so the leading nonzero coefficient is 1.
struct Line {
    Rational a;
    Rational b;
    Rational c;

    static Line through(const Point& p, const Point& q);  // pre: p != q
    static Line supporting(const Segment& s) { return through(s.a, s.b); }

    friend bool operator==(const Line& l, const Line& m) {
        return l.a == m.a && l.b == m.b && l.c == m.c;
    }
    friend bool operator<(const Line& l, const Line& m);
};

struct Ray {
    Point origin;
    Rational dx;
    Rational dy;  // (dx, dy) != (0, 0)
};

// sign of the signed area of triangle p q r: +1 counter-clockwise,
// -1 clockwise, 0 collinear
int orientation(const Point& p, const Point& q, const Point& r);

// sign of cross product of direction vectors
int cross_sign(const Rational& ux, const Rational& uy, const Rational& vx,
               const Rational& vy);
int dot_sign(const Rational& ux, const Rational& uy, const Rational& vx,
             const Rational& vy);

bool point_on_segment(const Point& p, const Segment& s);        // closed
bool point_strictly_inside(const Point& p, const Segment& s);   // open

// true iff the open segment (p, q) meets the closed segment s
bool open_segment_blocked(const Point& p, const Point& q, const Segment& s);

std::optional<Point> line_intersection(const Line& l1, const Line& l2);

struct RayHit {
    std::size_t id;
    Point point;
    Rational param;  // position along the ray, in units of the direction
};

// First intersection of r with s at strictly positive ray parameter,
// if any.  For collinear overlap this is the nearest covered point.
std::optional<RayHit> ray_segment_first_hit(const Ray& r, const Segment& s);

// Exact angular order of directions counter-clockwise from (1, 0).
// Returns -1/0/+1 as direction u precedes/equals/follows v.
int compare_directions_ccw(const Rational& ux, const Rational& uy,
                           const Rational& vx, const Rational& vy);

}  // namespace viscount

#endif
