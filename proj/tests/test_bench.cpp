#include "doctest.h"

#include <sstream>

#include "viscount/bench.h"
#include "viscount/visibility.h"

using namespace viscount;

namespace {

// CSV with wall-time columns blanked, for determinism comparisons
std::string mask_times(const std::string& csv, const std::vector<int>& time_cols) {
    std::istringstream in(csv);
    std::string line, out;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            out += line + "\n";
            header = false;
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        int col = 0;
        std::string masked;
        while (std::getline(ls, cell, ',')) {
            bool timed = false;
            for (int t : time_cols) timed |= col == t;
            masked += (timed ? std::string("-") : cell) + ",";
            ++col;
        }
        out += masked + "\n";
    }
    return out;
}

std::size_t row_count(const std::string& csv) {
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    return rows - 1;  // minus header
}

}  // namespace

TEST_CASE("probe grids are deterministic and in general position") {
    GenResult g = generate({SceneKind::A, 16, 2});
    auto p1 = probe_grid_points(g.scene, 5, 3);
    auto p2 = probe_grid_points(g.scene, 5, 3);
    REQUIRE(p1.size() == p2.size());
    CHECK(p1.size() == 25);
    for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p2[i]);
    for (const Point& p : p1) CHECK(in_general_position(g.scene, p));
}

TEST_CASE("counts experiment shape and determinism") {
    ExperimentSpec spec;
    spec.experiment = Experiment::counts;
    spec.kinds = {SceneKind::A, SceneKind::B};
    spec.sizes = {9, 16};
    spec.seeds = 2;
    spec.probe_grid = 4;
    std::string csv = run_counts(spec);
    CHECK(csv.rfind("kind,n,seed,probe_count,min,avg,max\n", 0) == 0);
    CHECK(row_count(csv) == 2 * 2 * 2);
    CHECK(csv == run_counts(spec));
}

TEST_CASE("variance experiment reports zero sigma for full-scene samples") {
    // a sample containing each segment once has zero deviation by identity
    GenResult g = generate({SceneKind::A, 9, 1});
    std::vector<std::size_t> whole;
    for (std::size_t i = 0; i < g.scene.size(); ++i) whole.push_back(i);
    auto probes = probe_grid_points(g.scene, 3, 5);
    for (const Point& p : probes) {
        Rational est = sample_estimate(g.scene, whole, p);
        Rational truth(static_cast<std::int64_t>(visibility_count(g.scene, p)),
                       static_cast<std::int64_t>(g.scene.size()));
        CHECK(est == truth);
    }
}

TEST_CASE("variance experiment csv") {
    ExperimentSpec spec;
    spec.experiment = Experiment::variance;
    spec.kinds = {SceneKind::A};
    spec.sizes = {9};
    spec.variance_samples = 8;
    spec.variance_viewpoints = 4;
    std::string csv = run_variance(spec);
    CHECK(csv.rfind("kind,n,m,trials,sigma\n", 0) == 0);
    CHECK(row_count(csv) == 1);
    CHECK(csv == run_variance(spec));
}

TEST_CASE("memtime experiment csv and structural identity") {
    ExperimentSpec spec;
    spec.experiment = Experiment::memtime;
    spec.kinds = {SceneKind::A};
    spec.sizes = {4};
    spec.memtime_queries = 9;
    spec.ell_policies = {EllPolicy::parse("1"), EllPolicy::parse("2")};
    std::string csv = run_memtime(spec);
    CHECK(csv.rfind("kind,n,ell,m,edges,faces,build_ms,query_us_mean,locations_per_query\n",
                    0) == 0);
    CHECK(row_count(csv) == 2);
    // locations_per_query = ell * m exactly
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 9);
        std::size_t ell = EllPolicy::parse(cells[2]).resolve(4);
        CHECK(std::stoull(cells[8]) == ell * std::stoull(cells[3]));
    }
    // deterministic apart from the wall-time columns (6 and 7)
    CHECK(mask_times(csv, {6, 7}) == mask_times(run_memtime(spec), {6, 7}));
}

TEST_CASE("ell policies") {
    CHECK(EllPolicy::parse("1").resolve(64) == 1);
    CHECK(EllPolicy::parse("quarter_root").resolve(64) == 3);
    CHECK(EllPolicy::parse("sqrt").resolve(64) == 8);
    CHECK(EllPolicy::parse("17").resolve(64) == 17);
    CHECK(EllPolicy::parse("sqrt").label() == "sqrt");
}
