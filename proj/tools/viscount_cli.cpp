#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "viscount/bench.h"
#include "viscount/visibility.h"
#include "viscount/visibility_graph.h"
#include "viscount/vsp.h"

using namespace viscount;

namespace {

using Clock = std::chrono::steady_clock;

SceneKind parse_kind(const std::string& text) {
    if (text == "A") return SceneKind::A;
    if (text == "B") return SceneKind::B;
    if (text == "C") return SceneKind::C;
    if (text == "peephole") return SceneKind::peephole;
    if (text == "shatter") return SceneKind::shatter;
    throw CLI::ValidationError("kind", "expected A, B, C, peephole or shatter");
}

Point parse_query(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("query", "expected X,Y");
    return Point{Rational::from_string(text.substr(0, comma)),
                 Rational::from_string(text.substr(comma + 1))};
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << data;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar visibility counting toolkit"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark scene");
    std::string gen_kind, gen_out;
    std::uint64_t gen_n = 16, gen_seed = 0;
    gen_cmd->add_option("--kind", gen_kind, "A|B|C|peephole|shatter")->required();
    gen_cmd->add_option("--n", gen_n,
                        "size parameter: segment budget for A/B/C, gaps for "
                        "peephole, targets for shatter")
        ->required();
    gen_cmd->add_option("--seed", gen_seed, "generator seed")->required();
    gen_cmd->add_option("--out", gen_out, "output scene file")->required();

    // ---- validate ----
    auto* val_cmd = app.add_subcommand("validate", "check nondegeneracy");
    std::string val_file;
    val_cmd->add_option("file", val_file, "scene file")->required();

    // ---- count ----
    auto* count_cmd = app.add_subcommand("count", "visibility count at a viewpoint");
    std::string count_file, count_x, count_y;
    bool count_oracle = false;
    count_cmd->add_option("file", count_file, "scene file")->required();
    count_cmd->add_option("--x", count_x, "viewpoint x (integer or p/q)")->required();
    count_cmd->add_option("--y", count_y, "viewpoint y (integer or p/q)")->required();
    count_cmd->add_flag("--oracle", count_oracle,
                        "answer with the midpoint-ray oracle instead of the sweep");

    // ---- vgraph ----
    auto* vg_cmd = app.add_subcommand("vgraph", "endpoint visibility graph");
    std::string vg_file;
    bool vg_stats = false;
    vg_cmd->add_option("file", vg_file, "scene file")->required();
    vg_cmd->add_flag("--stats", vg_stats, "print sizes only");

    // ---- vsp ----
    auto* vsp_cmd = app.add_subcommand("vsp", "visibility space partition");
    std::string vsp_file, vsp_mode = "full", vsp_query_at;
    bool vsp_kdt = false, vsp_stats = false;
    vsp_cmd->add_option("file", vsp_file, "scene file")->required();
    vsp_cmd->add_option("--mode", vsp_mode, "full|pruned")->required();
    vsp_cmd->add_flag("--keep-drop-test", vsp_kdt,
                      "drop pruned pieces whose crossing changes nothing");
    vsp_cmd->add_flag("--stats", vsp_stats, "print structure statistics");
    vsp_cmd->add_option("--query", vsp_query_at, "X,Y count query");

    // ---- relax ----
    auto* relax_cmd = app.add_subcommand("relax", "k-relaxed partition");
    std::string relax_file, relax_query_at;
    std::size_t relax_k = 0;
    relax_cmd->add_option("file", relax_file, "scene file")->required();
    relax_cmd->add_option("--k", relax_k, "count slack")->required();
    relax_cmd->add_option("--query", relax_query_at, "X,Y count query");

    // ---- approx ----
    auto* approx_cmd = app.add_subcommand("approx", "sampled visibility ratio");
    std::string ap_file, ap_mode = "practical", ap_delta = "1/10",
                ap_fail = "1/20", ap_ell = "1", ap_query_at, ap_vc_c = "1/4";
    std::uint64_t ap_seed = 0;
    approx_cmd->add_option("file", ap_file, "scene file")->required();
    approx_cmd->add_option("--mode", ap_mode, "chernoff|vc|practical")->required();
    approx_cmd->add_option("--delta", ap_delta, "absolute ratio error");
    approx_cmd->add_option("--fail-prob", ap_fail, "failure probability");
    approx_cmd->add_option("--ell", ap_ell, "1|quarter_root|sqrt|INT");
    approx_cmd->add_option("--seed", ap_seed, "sample seed")->required();
    approx_cmd->add_option("--vc-constant", ap_vc_c, "constant for the vc bound");
    approx_cmd->add_option("--query", ap_query_at, "X,Y ratio query");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "experiment CSV");
    std::string be_experiment, be_kinds = "A,B,C", be_sizes = "16,64,256",
                be_out, be_ells = "1";
    std::size_t be_seeds = 1;
    bench_cmd->add_option("--experiment", be_experiment, "counts|variance|memtime")
        ->required();
    bench_cmd->add_option("--kinds", be_kinds, "comma list of scene kinds");
    bench_cmd->add_option("--sizes", be_sizes, "comma list of sizes, increasing");
    bench_cmd->add_option("--seeds", be_seeds, "seeds per size");
    bench_cmd->add_option("--ells", be_ells,
                          "comma list of ell policies (memtime only)");
    bench_cmd->add_option("--out", be_out, "output CSV file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            GenResult r = generate({parse_kind(gen_kind), gen_n, gen_seed});
            save_scene_file(r.scene, gen_out);
            std::cout << "wrote " << r.scene.size() << " segments to " << gen_out;
            if (r.targets) {
                std::cout << " (targets:";
                for (std::size_t id : *r.targets) std::cout << ' ' << id;
                std::cout << ")";
            }
            std::cout << "\n";
        } else if (*val_cmd) {
            Scene scene = load_scene_file(val_file);
            DegeneracyReport rep = validate_nondegenerate(scene);
            std::cout << "segments: " << scene.size() << "\n"
                      << "crossing_pairs: " << rep.crossing_pairs.size() << "\n"
                      << "collinear_triples: " << rep.collinear_triples.size() << "\n"
                      << "parallel_endpoint_line_pairs: "
                      << rep.parallel_endpoint_line_pairs.size() << "\n"
                      << (rep.nondegenerate() ? "nondegenerate" : "degenerate")
                      << "\n";
            return rep.nondegenerate() ? 0 : 1;
        } else if (*count_cmd) {
            Scene scene = load_scene_file(count_file);
            Point p{Rational::from_string(count_x), Rational::from_string(count_y)};
            VisibleSet vs =
                count_oracle ? visible_set_oracle(scene, p) : visible_set(scene, p);
            std::cout << "count: " << vs.count() << "\nvisible:";
            for (std::size_t id : vs.visible) std::cout << ' ' << id;
            std::cout << "\n";
        } else if (*vg_cmd) {
            Scene scene = load_scene_file(vg_file);
            VisibilityGraph g = visibility_graph(scene);
            std::cout << "vertices: " << g.vertex_count()
                      << "\nedges: " << g.edge_count() << "\n";
            if (!vg_stats) {
                for (const auto& [u, v] : g.edges)
                    std::cout << u << " " << v << "\n";
            }
        } else if (*vsp_cmd) {
            Scene scene = load_scene_file(vsp_file);
            VspMode mode;
            if (vsp_mode == "full")
                mode = VspMode::full;
            else if (vsp_mode == "pruned")
                mode = VspMode::pruned;
            else
                throw CLI::ValidationError("mode", "expected full or pruned");
            auto t0 = Clock::now();
            VspStructure vsp = build_vsp(scene, mode, vsp_kdt);
            auto t1 = Clock::now();
            if (vsp_stats) {
                SubdivisionStats st = subdivision_stats(vsp.subdivision);
                std::size_t nsep = 0;
                for (const auto& e : vsp.subdivision.edges()) {
                    if (e.on_frame) continue;
                    if (vsp.face_count[e.left] != vsp.face_count[e.right]) ++nsep;
                }
                std::cout << "V: " << st.vertices << "\nE: " << st.edges
                          << "\nF: " << st.faces << "\nN: "
                          << st.boundary_segment_count << "\nN_sep: " << nsep
                          << "\nbuild_ms: "
                          << std::chrono::duration<double, std::milli>(t1 - t0)
                                 .count()
                          << "\nedges_total: " << vsp.subdivision.edges().size()
                          << "\n";
            }
            if (!vsp_query_at.empty()) {
                Point p = parse_query(vsp_query_at);
                std::cout << "count: " << vsp_query(vsp, p) << "\n";
            }
        } else if (*relax_cmd) {
            Scene scene = load_scene_file(relax_file);
            auto vsp = std::make_shared<VspStructure>(build_vsp(scene, VspMode::full));
            RelaxedVsp r = coarsen_vsp(vsp, relax_k);
            std::cout << "k: " << r.k << "\nkappa: " << r.kappa
                      << "\nseparating_edges: " << r.separating_edges
                      << "\nkept_edges: " << r.size() << "\n";
            if (!relax_query_at.empty()) {
                Point p = parse_query(relax_query_at);
                std::cout << "count: " << relaxed_query(r, p) << "\n";
            }
        } else if (*approx_cmd) {
            Scene scene = load_scene_file(ap_file);
            SampleConfig cfg;
            if (ap_mode == "chernoff")
                cfg.mode = SampleMode::chernoff;
            else if (ap_mode == "vc")
                cfg.mode = SampleMode::vc;
            else if (ap_mode == "practical")
                cfg.mode = SampleMode::paper_practical;
            else
                throw CLI::ValidationError("mode", "expected chernoff, vc or practical");
            cfg.delta = Rational::from_string(ap_delta);
            cfg.fail_prob = Rational::from_string(ap_fail);
            cfg.vc_constant = Rational::from_string(ap_vc_c);
            cfg.seed = ap_seed;
            std::size_t ell = EllPolicy::parse(ap_ell).resolve(scene.size());
            ApproxCounter counter = build_approx_counter(scene, cfg, ell);
            std::cout << "m: " << counter.sample_size() << "\nell: " << ell
                      << "\nedges: " << counter.total_edges()
                      << "\nfaces: " << counter.total_faces() << "\n";
            if (!ap_query_at.empty()) {
                Point p = parse_query(ap_query_at);
                Rational ratio = approx_query(counter, p);
                std::cout << "ratio: " << ratio.to_string() << " ("
                          << ratio.to_double() << ")\n";
            }
        } else if (*bench_cmd) {
            ExperimentSpec spec;
            if (be_experiment == "counts")
                spec.experiment = Experiment::counts;
            else if (be_experiment == "variance")
                spec.experiment = Experiment::variance;
            else if (be_experiment == "memtime")
                spec.experiment = Experiment::memtime;
            else
                throw CLI::ValidationError("experiment",
                                           "expected counts, variance or memtime");
            spec.kinds.clear();
            std::istringstream ks(be_kinds);
            std::string tok;
            while (std::getline(ks, tok, ',')) spec.kinds.push_back(parse_kind(tok));
            spec.sizes.clear();
            std::istringstream ss(be_sizes);
            while (std::getline(ss, tok, ',')) spec.sizes.push_back(std::stoull(tok));
            for (std::size_t i = 1; i < spec.sizes.size(); ++i)
                if (spec.sizes[i] <= spec.sizes[i - 1])
                    throw CLI::ValidationError("sizes", "must be strictly increasing");
            spec.seeds = be_seeds;
            if (spec.seeds < 1)
                throw CLI::ValidationError("seeds", "must be at least 1");
            spec.ell_policies.clear();
            std::istringstream es(be_ells);
            while (std::getline(es, tok, ','))
                spec.ell_policies.push_back(EllPolicy::parse(tok));
            std::string csv = run_experiment(spec);
            write_file(be_out, csv);
            std::cout << "wrote " << be_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
