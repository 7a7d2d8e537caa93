// critwin: simulation and analytics laboratory for the critical window of
// gamma-growing random graphs.
//
//   critwin <subcommand> --config <file> [--seed-offset N] [--out PREFIX] [--threads N]
//
// Subcommands: gen, window-scan, tail, susceptibility, local-limit,
// coupling-audit, verify. Each experiment writes one CSV and one JSON summary
// under the output prefix; identical configs produce byte-identical CSVs.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "critwin/config.hpp"
#include "critwin/experiments.hpp"
#include "critwin/graph.hpp"
#include "critwin/model.hpp"
#include "critwin/output.hpp"
#include "critwin/svgplot.hpp"

namespace {

using namespace critwin;

struct CommonArgs {
    std::string config_path;
    std::string out_prefix = "critwin_";
    std::int64_t seed_offset = 0;
    int threads = 0;
    bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* c = cmd->add_option("--config", args.config_path, "experiment config file");
    if (config_required) c->required();
    cmd->add_option("--out", args.out_prefix, "output path prefix");
    cmd->add_option("--seed-offset", args.seed_offset, "offset added to every config seed");
    cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
    cmd->add_flag("--svg", args.svg, "also emit a self-contained SVG chart");
}

ExperimentConfig load(const CommonArgs& args, const std::string& experiment) {
    ExperimentConfig cfg = load_config(args.config_path);
    cfg.experiment = experiment;
    cfg.out_prefix = args.out_prefix;
    cfg.threads = args.threads;
    if (args.seed_offset != 0) {
        for (auto& s : cfg.seeds) s += static_cast<std::uint64_t>(args.seed_offset);
    }
    return cfg;
}

int emit(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows, double wall_s) {
    const std::string csv_path = cfg.out_prefix + cfg.experiment + ".csv";
    const std::string json_path = cfg.out_prefix + cfg.experiment + "_summary.json";
    {
        std::ofstream os(csv_path);
        if (!os) {
            std::cerr << "cannot write " << csv_path << "\n";
            return 1;
        }
        write_csv(os, rows);
    }
    RunSummary summary;
    summary.experiment = cfg.experiment;
    summary.config_echo = cfg.raw_text;
    summary.content_hash = git_blob_sha1(cfg.raw_text);
    summary.wall_time_s = wall_s;
    summary.n_rows = static_cast<std::int64_t>(rows.size());
    summary.outputs = {csv_path};
    {
        std::ofstream os(json_path);
        if (!os) {
            std::cerr << "cannot write " << json_path << "\n";
            return 1;
        }
        write_summary_json(os, summary);
    }
    std::cout << cfg.experiment << ": " << rows.size() << " rows -> " << csv_path << " ("
              << wall_s << " s)\n";
    return 0;
}

template <typename Runner>
int run_and_emit(const CommonArgs& args, const std::string& name, Runner&& runner) {
    const ExperimentConfig cfg = load(args, name);
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = runner(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (args.svg) {
        PlotSpec spec;
        if (plot_rows(name, rows, spec)) {
            const std::string svg_path = cfg.out_prefix + name + ".svg";
            std::ofstream os(svg_path);
            write_svg_plot(os, spec);
            std::cout << "chart -> " << svg_path << "\n";
        }
    }
    return emit(cfg, rows, wall);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critical-window laboratory for gamma-growing random graphs"};
    app.require_subcommand(1);

    CommonArgs args;

    // --- gen: sample one graph and write the edge list --------------------
    auto* gen = app.add_subcommand("gen", "sample a graph and write its edge list");
    double gen_gamma = 0.0;
    std::int64_t gen_n = 1000;
    double gen_beta = 0.25;
    double gen_alpha = 0.0;
    bool gen_use_alpha = false;
    std::string gen_kernel = "polynomial";
    std::uint64_t gen_seed = 1;
    std::int64_t gen_m = 1;
    std::string gen_out;
    gen->add_option("--gamma", gen_gamma, "model exponent in [0, 1/2)");
    gen->add_option("--n", gen_n, "graph size")->required();
    auto* ob = gen->add_option("--beta", gen_beta, "absolute edge density");
    gen->add_option("--alpha", gen_alpha, "window coordinate (overrides --beta)")
        ->excludes(ob)
        ->each([&](const std::string&) { gen_use_alpha = true; });
    gen->add_option("--kernel", gen_kernel, "polynomial | exponential_lower");
    gen->add_option("--seed", gen_seed, "graph seed");
    gen->add_option("--range-m", gen_m, "left end of the induced vertex range");
    gen->add_option("--out", gen_out, "edge list path (default stdout)");

    CommonArgs ws_args, tail_args, sus_args, ll_args, ca_args, vf_args;
    auto* ws = app.add_subcommand("window-scan", "largest-component scaling across the window");
    add_common(ws, ws_args);
    auto* tl = app.add_subcommand("tail", "component-size tail study");
    add_common(tl, tail_args);
    auto* su = app.add_subcommand("susceptibility", "susceptibility runs");
    add_common(su, sus_args);
    auto* ll = app.add_subcommand("local-limit", "graph vs local-limit comparisons");
    add_common(ll, ll_args);
    auto* ca = app.add_subcommand("coupling-audit", "path-wise coupling inclusion audit");
    add_common(ca, ca_args);
    auto* vf = app.add_subcommand("verify", "closed-form vs Monte Carlo oracle suite");
    add_common(vf, vf_args, /*config_required=*/false);
    double vf_corrupt = 0.0;
    std::int64_t vf_paths = 1000000;
    std::int64_t vf_brw_reps = 100000;
    vf->add_option("--corrupt-si", vf_corrupt,
                   "test hook: additive Si corruption (must fail the suite)");
    vf->add_option("--mc-paths", vf_paths, "walk paths per closed-form check");
    vf->add_option("--brw-reps", vf_brw_reps, "BRW replications for tree-side checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            ModelParams p;
            p.gamma = gen_gamma;
            p.n = gen_n;
            p.kernel = kernel_from_name(gen_kernel);
            p.beta_spec =
                gen_use_alpha ? BetaSpec::window(gen_alpha) : BetaSpec::absolute(gen_beta);
            const SampledGraph g = sample_graph(p, gen_seed, gen_m, gen_n);
            if (gen_out.empty()) {
                write_edge_list(std::cout, g);
            } else {
                std::ofstream os(gen_out);
                if (!os) {
                    std::cerr << "cannot write " << gen_out << "\n";
                    return 1;
                }
                write_edge_list(os, g);
                std::cout << "wrote " << g.edges.size() << " edges -> " << gen_out << "\n";
            }
            return 0;
        }
        if (ws->parsed()) return run_and_emit(ws_args, "window_scan", run_window_scan);
        if (tl->parsed()) return run_and_emit(tail_args, "tail", run_tail);
        if (su->parsed()) return run_and_emit(sus_args, "susceptibility", run_susceptibility);
        if (ll->parsed()) return run_and_emit(ll_args, "local_limit", run_local_limit);
        if (ca->parsed()) return run_and_emit(ca_args, "coupling_audit", run_coupling_audit);
        if (vf->parsed()) {
            ExperimentConfig cfg;
            if (!vf_args.config_path.empty()) {
                cfg = load(vf_args, "verify");
            } else {
                cfg.experiment = "verify";
                cfg.out_prefix = vf_args.out_prefix;
                cfg.raw_text = "critwin-config v1\n";
            }
            VerifyOptions opts;
            opts.si_corruption = vf_corrupt;
            opts.mc_paths = vf_paths;
            opts.brw_reps = vf_brw_reps;
            const auto t0 = std::chrono::steady_clock::now();
            const auto checks = run_verify_checks(opts);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            int failed = 0;
            std::vector<ResultRow> rows;
            for (const auto& c : checks) {
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
                if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
                std::cout << "\n";
                if (!c.pass) ++failed;
                ResultRow r;
                r.experiment = cfg.experiment;
                r.kernel = kernel_name(cfg.kernel);
                r.statistic = c.name;
                r.estimate = c.pass ? 1.0 : 0.0;
                r.n_reps = 1;
                r.flag = c.pass ? "" : "fail";
                rows.push_back(r);
            }
            std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
            const int rc = emit(cfg, rows, wall);
            return rc != 0 ? rc : (failed > 0 ? 2 : 0);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
