#ifndef VISCOUNT_SCENE_GEN_H
#define VISCOUNT_SCENE_GEN_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "viscount/scene.h"

namespace viscount {

// Deterministic 64-bit stream; the fixed random source for all generators
// and benchmark probe jitter.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound >= 1; rejection keeps it unbiased
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

enum class SceneKind { A, B, C, peephole, shatter };

struct SceneGenSpec {
    SceneKind kind;
    std::uint64_t size;   // n for A/B/C, gap count g for peephole, k for shatter
    std::uint64_t seed;
};

struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& w) : std::runtime_error(w) {}
};

struct GenResult {
    Scene scene;
    std::optional<std::vector<std::size_t>> targets;
};

// Generate a benchmark scene.  Deterministic in (spec, shrink); every
// returned scene passes validate_nondegenerate (a bounded perturbation pass
// repairs residual coincidences, GenerationError if it cannot).
// c_shrink scales kind C segments about their midpoints (default 1/2).
GenResult generate(const SceneGenSpec& spec, const Rational& c_shrink = Rational(1, 2));

// Construction landmarks used by tests and the acceptance suite.
// Peephole: gap i of both fences is vertically aligned near x = centers[i];
// a viewpoint straight above a gap center sees the target through the two
// gaps, the pocket probe just above a mid fence piece sees it through none.
std::vector<Rational> peephole_gap_centers(std::uint64_t g);
Point peephole_gap_probe(std::uint64_t g, std::size_t gap);
Point peephole_pocket_probe(std::uint64_t g);

// Shatter: probe j realizes exactly the target subset with bit pattern j.
std::vector<Point> shatter_probe_points(std::uint64_t k);

}  // namespace viscount

#endif
