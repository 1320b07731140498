#include "viscount/scene.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace viscount {

// Segments may share endpoints; any other common point is a violation.
bool segments_conflict(const Segment& s, const Segment& t) {
    bool share_aa = s.a == t.a;
    bool share_ab = s.a == t.b;
    bool share_ba = s.b == t.a;
    bool share_bb = s.b == t.b;
    if ((share_aa && share_bb) || (share_ab && share_ba)) return true;  // identical
    // an endpoint of one strictly inside the other
    if (point_strictly_inside(t.a, s) || point_strictly_inside(t.b, s)) return true;
    if (point_strictly_inside(s.a, t) || point_strictly_inside(s.b, t)) return true;
    // proper crossing of the interiors
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return false;
}

Scene::Scene(std::vector<Segment> segments) : segments_(std::move(segments)) {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        segments_[i].id = i;
        if (segments_[i].a == segments_[i].b)
            throw SceneParseError("segment " + std::to_string(i) + " is degenerate (a == b)");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        for (std::size_t j = i + 1; j < segments_.size(); ++j) {
            if (segments_conflict(segments_[i], segments_[j])) {
                throw SceneParseError("segments " + std::to_string(i) + " and " +
                                      std::to_string(j) +
                                      " cross (segments may meet only at common endpoints)");
            }
        }
    }
}

void Scene::bounding_box(Rational& xmin, Rational& ymin, Rational& xmax,
                         Rational& ymax) const {
    xmin = xmax = segments_.front().a.x;
    ymin = ymax = segments_.front().a.y;
    for (const Segment& s : segments_) {
        for (const Point* p : {&s.a, &s.b}) {
            if (p->x < xmin) xmin = p->x;
            if (xmax < p->x) xmax = p->x;
            if (p->y < ymin) ymin = p->y;
            if (ymax < p->y) ymax = p->y;
        }
    }
}

bool Scene::point_on_any_segment(const Point& p) const {
    for (const Segment& s : segments_)
        if (point_on_segment(p, s)) return true;
    return false;
}

Scene Scene::without(std::size_t id) const {
    std::vector<Segment> rest;
    rest.reserve(segments_.size() - 1);
    for (const Segment& s : segments_)
        if (s.id != id) rest.push_back(s);
    Scene out;
    out.segments_ = std::move(rest);
    for (std::size_t i = 0; i < out.segments_.size(); ++i) out.segments_[i].id = i;
    return out;
}

Scene Scene::with_extra(const Segment& s) const {
    Scene out;
    out.segments_ = segments_;
    Segment t = s;
    t.id = out.segments_.size();
    out.segments_.push_back(t);
    return out;
}

namespace {

// canonical direction + line offset of the pair (p, q): every endpoint pair
// on the same line gets the same key, parallel distinct lines share dir only
struct PairKey {
    BigInt dx, dy;      // reduced, sign-canonical direction
    Rational offset;    // dy*x - dx*y, constant along the line
    std::size_t i, j;   // point indices

    static PairKey make(const std::vector<Point>& pts, std::size_t i, std::size_t j) {
        Rational rx = pts[j].x - pts[i].x;
        Rational ry = pts[j].y - pts[i].y;
        BigInt nx = rx.num() * ry.den();
        BigInt ny = ry.num() * rx.den();
        BigInt g = BigInt::gcd(nx, ny);
        nx = nx / g;
        ny = ny / g;
        if (nx.sign() < 0 || (nx.sign() == 0 && ny.sign() < 0)) {
            nx = -nx;
            ny = -ny;
        }
        Rational off = Rational(ny, BigInt(1)) * pts[i].x - Rational(nx, BigInt(1)) * pts[i].y;
        return PairKey{std::move(nx), std::move(ny), std::move(off), i, j};
    }

    static int cmp_dir(const PairKey& a, const PairKey& b) {
        int c = a.dx.cmp(b.dx);
        if (c != 0) return c;
        return a.dy.cmp(b.dy);
    }
};

}  // namespace

DegeneracyReport validate_nondegenerate(const Scene& scene) {
    DegeneracyReport rep;
    const auto& segs = scene.segments();
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (segments_conflict(segs[i], segs[j])) rep.crossing_pairs.emplace_back(i, j);

    // distinct endpoint positions
    std::vector<Point> pts;
    pts.reserve(segs.size() * 2);
    for (const Segment& s : segs) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<PairKey> keys;
    keys.reserve(pts.size() * (pts.size() - 1) / 2);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            keys.push_back(PairKey::make(pts, i, j));
    std::sort(keys.begin(), keys.end(), [](const PairKey& a, const PairKey& b) {
        int c = PairKey::cmp_dir(a, b);
        if (c != 0) return c < 0;
        return a.offset < b.offset;
    });

    // walk groups of equal direction; subgroups of equal (dir, offset) are
    // single lines
    std::size_t g0 = 0;
    while (g0 < keys.size()) {
        std::size_t g1 = g0;
        while (g1 < keys.size() && PairKey::cmp_dir(keys[g0], keys[g1]) == 0) ++g1;
        // subgroups by offset
        std::vector<std::pair<std::size_t, std::size_t>> lines;  // [begin, end)
        std::size_t s0 = g0;
        while (s0 < g1) {
            std::size_t s1 = s0;
            while (s1 < g1 && keys[s1].offset == keys[s0].offset) ++s1;
            lines.emplace_back(s0, s1);
            s0 = s1;
        }
        // collinear triples on each line carrying >= 3 distinct points
        for (const auto& [s, e] : lines) {
            std::vector<std::size_t> ids;
            for (std::size_t k = s; k < e; ++k) {
                ids.push_back(keys[k].i);
                ids.push_back(keys[k].j);
            }
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            for (std::size_t a = 0; a < ids.size(); ++a)
                for (std::size_t b = a + 1; b < ids.size(); ++b)
                    for (std::size_t c = b + 1; c < ids.size(); ++c)
                        rep.collinear_triples.push_back(
                            {pts[ids[a]], pts[ids[b]], pts[ids[c]]});
        }
        g0 = g1;
    }

    // supporting lines of distinct direction classes must pairwise meet:
    // report distinct parallel supporting lines
    std::vector<Line> support;
    support.reserve(segs.size());
    for (const Segment& s : segs) support.push_back(Line::supporting(s));
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            if (support[i] == support[j]) continue;  // identical: collinearity case
            if (support[i].a == support[j].a && support[i].b == support[j].b)
                rep.parallel_endpoint_line_pairs.emplace_back(support[i], support[j]);
        }
    }
    return rep;
}

Scene load_scene(const std::string& text) {
    std::vector<Segment> segs;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        std::array<std::string, 4> tok;
        for (int k = 0; k < 4; ++k) {
            if (!(ls >> tok[k]))
                throw SceneParseError("line " + std::to_string(lineno) +
                                      ": expected four coordinates");
        }
        std::string extra;
        if (ls >> extra)
            throw SceneParseError("line " + std::to_string(lineno) +
                                  ": trailing tokens after four coordinates");
        Segment s;
        try {
            s.a.x = Rational::from_string(tok[0]);
            s.a.y = Rational::from_string(tok[1]);
            s.b.x = Rational::from_string(tok[2]);
            s.b.y = Rational::from_string(tok[3]);
        } catch (const std::exception& e) {
            throw SceneParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        s.id = segs.size();
        segs.push_back(std::move(s));
    }
    return Scene(std::move(segs));
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneParseError("cannot open scene file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scene(buf.str());
}

std::string save_scene(const Scene& scene) {
    std::string out;
    for (const Segment& s : scene.segments()) {
        out += s.a.x.to_string();
        out += ' ';
        out += s.a.y.to_string();
        out += ' ';
        out += s.b.x.to_string();
        out += ' ';
        out += s.b.y.to_string();
        out += '\n';
    }
    return out;
}

void save_scene_file(const Scene& scene, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SceneParseError("cannot open output file: " + path);
    out << save_scene(scene);
}

std::optional<std::pair<std::size_t, Point>> ray_first_hit(
    const Scene& scene, const Ray& r, const std::set<std::size_t>& skip) {
    std::optional<RayHit> best;
    for (const Segment& s : scene.segments()) {
        if (skip.count(s.id)) continue;
        auto hit = ray_segment_first_hit(r, s);
        if (!hit || hit->param.sign() <= 0) continue;
        if (!best || hit->param < best->param ||
            (hit->param == best->param && hit->id < best->id)) {
            best = std::move(hit);
        }
    }
    if (!best) return std::nullopt;
    return std::make_pair(best->id, best->point);
}

}  // namespace viscount
