#ifndef VISCOUNT_BENCH_H
#define VISCOUNT_BENCH_H

#include <string>
#include <vector>

#include "viscount/approx.h"
#include "viscount/scene_gen.h"

namespace viscount {

enum class Experiment { counts, variance, memtime };

// ell ladder entries: 1, n^(1/4), n^(1/2), or a fixed value
struct EllPolicy {
    enum class Kind { one, quarter_root, sqrt_root, fixed };
    Kind kind = Kind::one;
    std::size_t fixed = 1;

    static EllPolicy parse(const std::string& text);
    std::size_t resolve(std::size_t n) const;
    std::string label() const;
};

struct ExperimentSpec {
    Experiment experiment = Experiment::counts;
    std::vector<SceneKind> kinds = {SceneKind::A, SceneKind::B, SceneKind::C};
    std::vector<std::size_t> sizes = {16, 64, 256};  // strictly increasing
    std::size_t seeds = 1;                           // seeds 0..seeds-1 per size
    std::vector<EllPolicy> ell_policies = {};        // memtime only
    SampleMode sample_mode = SampleMode::paper_practical;
    std::size_t probe_grid = 10;      // counts: probe_grid^2 viewpoints
    std::size_t variance_samples = 30;
    std::size_t variance_viewpoints = 20;
    std::size_t memtime_queries = 100;
};

// Deterministic general-position probe viewpoints: a jittered grid over the
// scene bounding box, re-jittered exactly when a probe lands degenerate.
std::vector<Point> probe_grid_points(const Scene& scene, std::size_t grid,
                                     std::uint64_t seed);

std::string kind_name(SceneKind kind);

// Each returns the full CSV text (header + rows, LF line endings).
std::string run_counts(const ExperimentSpec& spec);
std::string run_variance(const ExperimentSpec& spec);
std::string run_memtime(const ExperimentSpec& spec);
std::string run_experiment(const ExperimentSpec& spec);

}  // namespace viscount

#endif
