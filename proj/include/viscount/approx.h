#ifndef VISCOUNT_APPROX_H
#define VISCOUNT_APPROX_H

#include <map>
#include <optional>
#include <vector>

#include "viscount/arrangement.h"
#include "viscount/scene.h"
#include "viscount/scene_gen.h"

namespace viscount {

enum class SampleMode { chernoff, vc, paper_practical };

struct SampleConfig {
    Rational delta = Rational(1, 10);      // absolute ratio error
    Rational fail_prob = Rational(1, 20);  // failure probability
    SampleMode mode = SampleMode::chernoff;
    std::optional<std::size_t> explicit_m;
    std::uint64_t seed = 0;
    Rational vc_constant = Rational(1, 4);  // the constant hidden in the bound
};

// smallest m with 2 exp(-2 m delta^2) <= fail_prob
std::size_t chernoff_sample_size(const Rational& delta, const Rational& fail_prob);

// ceil(C d^2 log2(n) log2(d log2(n)/delta) / delta^2) with d = 2
std::size_t vc_sample_size(std::size_t n, const Rational& delta,
                           const Rational& fail_prob, const Rational& C);

// ceil(10 log2(n)^2), the sample size used by the reported experiments
std::size_t practical_sample_size(std::size_t n);

std::size_t sample_size_for(const SampleConfig& cfg, std::size_t n);

// m i.i.d. uniform draws with replacement, in draw order
std::vector<std::size_t> draw_sample(const Scene& scene, std::size_t m,
                                     std::uint64_t seed);

// multiplicity-weighted fraction of sampled targets weakly visible from p
Rational sample_estimate(const Scene& scene, const std::vector<std::size_t>& sample,
                         const Point& p);

// One target split into ell sub-segments, each with its own labeled
// arrangement of the candidate lines that reach it.
class TargetStructure {
  public:
    struct Piece {
        Point a, b;
        Subdivision arrangement;
        std::vector<char> face_visible;
        std::size_t candidate_lines = 0;  // split lines reaching this piece
    };

    Segment target;
    std::size_t ell = 1;
    std::vector<Piece> pieces;
    std::size_t lines_hitting_target = 0;  // H before the split
    std::size_t graph_edges = 0;           // m of the occluder visibility graph

    std::size_t total_edges() const;
    std::size_t total_faces() const;
    std::uint64_t locate_calls() const;
};

// Candidate lines come from the occluder visibility graph by default, or
// from every occluder endpoint pair when all_pairs is set.  If t matches a
// scene segment it is excluded from its own occluder set.
TargetStructure build_target_structure(const Scene& scene, const Segment& t,
                                       std::size_t ell, bool all_pairs = false);

// OR of the per-piece face labels at p: is any part of the target visible
bool target_query(const TargetStructure& ts, const Point& p);

class ApproxCounter {
  public:
    std::vector<std::size_t> sample;                   // draw order
    std::map<std::size_t, std::size_t> multiplicity;   // id -> draws
    std::map<std::size_t, TargetStructure> structures; // one per distinct id
    std::size_t ell = 1;
    SampleConfig config;

    std::size_t sample_size() const { return sample.size(); }
    std::size_t total_edges() const;
    std::size_t total_faces() const;
};

ApproxCounter build_approx_counter(const Scene& scene, const SampleConfig& cfg,
                                   std::size_t ell);

// multiplicity-weighted fraction of sampled targets visible from p
Rational approx_query(const ApproxCounter& counter, const Point& p);

}  // namespace viscount

#endif
