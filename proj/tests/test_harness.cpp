// Harness layer: config parsing, deterministic CSV emission (including
// across thread counts), the verify suite and its mutation hook, and smoke
// runs of every experiment at toy scale.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>

#include "critwin/config.hpp"
#include "critwin/experiments.hpp"
#include "critwin/output.hpp"

using namespace critwin;

namespace {

const char* kToyConfig =
    "critwin-config v1\n"
    "# toy grid\n"
    "gamma = 0, 0.3\n"
    "n = 2000\n"
    "alpha = -2, 0\n"
    "kernel = polynomial\n"
    "seeds = 1, 2, 3\n"
    "k_grid = 1, 2, 4, 8\n"
    "k_trunc = 8\n"
    "reps = 200\n"
    "max_particles = 100000\n";

std::string csv_of(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    write_csv(os, rows);
    return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig cfg = parse_config_text(kToyConfig);
    CHECK(cfg.gamma == std::vector<double>{0.0, 0.3});
    CHECK(cfg.n == std::vector<std::int64_t>{2000});
    CHECK(cfg.window_mode);
    CHECK(cfg.alpha == std::vector<double>{-2.0, 0.0});
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(cfg.k_grid == std::vector<std::int64_t>{1, 2, 4, 8});
    CHECK(cfg.reps == 200);

    CHECK_THROWS(parse_config_text("gamma = 0\n"));  // missing header
    CHECK_THROWS(parse_config_text("critwin-config v1\nbogus_key = 3\n"));
    CHECK_THROWS(parse_config_text("critwin-config v1\nseeds = 1, 1\n"));   // duplicate seeds
    CHECK_THROWS(parse_config_text("critwin-config v1\ngamma = 0.7\n"));    // outside [0, 1/2)
    CHECK_THROWS(parse_config_text("critwin-config v1\nalpha = 0\nbeta = 0.2\n"));
    CHECK_THROWS(parse_config_text("critwin-config v1\nk_grid = 4, 2\n"));

    const ExperimentConfig auto_seeds = parse_config_text(
        "critwin-config v1\nseed_base = 100\nseed_count = 4\nn = 50\n");
    CHECK(auto_seeds.seeds == std::vector<std::uint64_t>{100, 101, 102, 103});

    // scientific-notation integers
    const ExperimentConfig sci = parse_config_text("critwin-config v1\nn = 1e4\nseeds = 7\n");
    CHECK(sci.n == std::vector<std::int64_t>{10000});
}

TEST_CASE("git blob hash matches git's own value") {
    // `echo -n 'hello' | git hash-object --stdin` = b6fc4c620b67d95f953a5c1c1230aaab5db5a1b0
    CHECK(git_blob_sha1("hello") == "b6fc4c620b67d95f953a5c1c1230aaab5db5a1b0");
    CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_CASE("csv emission is sorted and stable") {
    ResultRow a;
    a.experiment = "x";
    a.statistic = "s";
    a.gamma = 0.3;
    a.estimate = 1.5;
    ResultRow b = a;
    b.gamma = 0.0;
    const std::string out1 = csv_of({a, b});
    const std::string out2 = csv_of({b, a});
    CHECK(out1 == out2);
    CHECK(out1.find("experiment,gamma,n,alpha,beta,kernel,seed,k,statistic") == 0);
}

TEST_CASE("experiments are deterministic and thread-count independent") {
    ExperimentConfig cfg = parse_config_text(kToyConfig);
    cfg.experiment = "susceptibility";
    cfg.threads = 1;
    const std::string once = csv_of(run_susceptibility(cfg));
    cfg.threads = 4;
    const std::string again = csv_of(run_susceptibility(cfg));
    CHECK(once == again);
    CHECK(once.find("susceptibility") != std::string::npos);
}

TEST_CASE("tail experiment emits tail and compensated rows") {
    ExperimentConfig cfg = parse_config_text(kToyConfig);
    cfg.experiment = "tail";
    const auto rows = run_tail(cfg);
    bool saw_k1 = false, saw_comp = false;
    for (const auto& r : rows) {
        if (r.statistic == "tail_prob" && r.k == 1) {
            CHECK(r.estimate == 1.0);
            saw_k1 = true;
        }
        if (r.statistic == "compensated_tail") {
            CHECK(r.k >= 2);
            saw_comp = true;
        }
    }
    CHECK(saw_k1);
    CHECK(saw_comp);
}

TEST_CASE("window scan reports monotone level sweeps per seed") {
    ExperimentConfig cfg = parse_config_text(kToyConfig);
    cfg.experiment = "window_scan";
    const auto rows = run_window_scan(cfg);
    int monotone_rows = 0;
    for (const auto& r : rows) {
        if (r.statistic == "monotone_in_level") {
            CHECK(r.estimate == 1.0);  // shared-uniform mode: exact monotonicity
            ++monotone_rows;
        }
    }
    CHECK(monotone_rows == 2 * 3);  // gamma cells x seeds
}

TEST_CASE("local limit experiment produces both sides and differences") {
    ExperimentConfig cfg = parse_config_text(kToyConfig);
    cfg.experiment = "local_limit";
    cfg.gamma = {0.0};
    cfg.alpha = {0.0};
    cfg.reps = 2000;
    const auto rows = run_local_limit(cfg);
    bool brw = false, graph = false, diff = false;
    for (const auto& r : rows) {
        if (r.statistic == "brw_frac_ge_k") brw = true;
        if (r.statistic == "graph_frac_ge_k") graph = true;
        if (r.statistic == "diff_frac_ge_k") diff = true;
        if (r.statistic == "brw_mean_progeny") CHECK(r.estimate >= 1.0);
    }
    CHECK(brw);
    CHECK(graph);
    CHECK(diff);
}

TEST_CASE("coupling audit experiment reports zero violations") {
    ExperimentConfig cfg = parse_config_text(kToyConfig);
    cfg.experiment = "coupling_audit";
    cfg.gamma = {0.0};
    cfg.alpha = {0.0};
    cfg.n = {500};
    cfg.reps = 60;
    const auto rows = run_coupling_audit(cfg);
    int violation_rows = 0;
    for (const auto& r : rows) {
        if (r.statistic.find("violations") != std::string::npos) {
            CHECK(r.estimate == 0.0);
            ++violation_rows;
        }
    }
    CHECK(violation_rows == 4);  // {inclusion, kernel} x {lower, upper}
}

TEST_CASE("verify suite passes clean and fails under the mutation hook") {
    VerifyOptions opts;
    opts.mc_paths = 30000;  // keep the unit-test run quick
    opts.brw_reps = 8000;
    const auto checks = run_verify_checks(opts);
    int failed = 0;
    for (const auto& c : checks) {
        INFO(c.name, ": ", c.detail);
        if (!c.pass) ++failed;
    }
    CHECK(failed == 0);

    VerifyOptions corrupted = opts;
    corrupted.si_corruption = 0.05;
    corrupted.mc_paths = 5000;
    corrupted.brw_reps = 2000;
    const auto bad = run_verify_checks(corrupted);
    int bad_failed = 0;
    for (const auto& c : bad)
        if (!c.pass) ++bad_failed;
    CHECK(bad_failed >= 1);
}

TEST_CASE("log susceptibility increases with n at criticality") {
    double prev = -1.0;
    for (const std::int64_t n : {10000LL, 100000LL, 1000000LL}) {
        ExperimentConfig cfg;
        cfg.experiment = "susceptibility";
        cfg.gamma = {0.0};
        cfg.n = {n};
        cfg.alpha = {0.0};
        cfg.seeds = {1, 2, 3, 4, 5, 6};
        const auto rows = run_susceptibility(cfg);
        double agg = -1.0;
        for (const auto& r : rows)
            if (r.statistic == "log_susceptibility" && r.seed < 0) agg = r.estimate;
        REQUIRE(agg >= 0.0);
        CHECK(agg > prev);
        prev = agg;
    }
}

TEST_CASE("normalized largest-component quartile bands overlap across alpha") {
    ExperimentConfig cfg;
    cfg.experiment = "window_scan";
    cfg.gamma = {0.0};
    cfg.n = {1000000};
    cfg.alpha = {-20.0, 0.0, 8.0};
    cfg.seeds.clear();
    for (std::uint64_t s = 1; s <= 20; ++s) cfg.seeds.push_back(s);
    const auto rows = run_window_scan(cfg);
    struct Band {
        double lo = 0.0, hi = 0.0;
    };
    std::map<double, Band> bands;
    for (const auto& r : rows) {
        if (r.statistic == "normalized_largest_q25") bands[r.alpha].lo = r.estimate;
        if (r.statistic == "normalized_largest_q75") bands[r.alpha].hi = r.estimate;
    }
    REQUIRE(bands.size() == 3);
    for (auto a = bands.begin(); a != bands.end(); ++a)
        for (auto b = std::next(a); b != bands.end(); ++b) {
            INFO("bands [", a->second.lo, ",", a->second.hi, "] vs [", b->second.lo, ",",
                 b->second.hi, "]");
            CHECK(a->second.lo <= b->second.hi);
            CHECK(b->second.lo <= a->second.hi);
        }
}

TEST_CASE("local-limit truncated log-mean increases in k on both sides") {
    ExperimentConfig cfg;
    cfg.experiment = "local_limit";
    cfg.gamma = {0.0};
    cfg.n = {50000};
    cfg.alpha = {0.0};
    cfg.seeds = {1, 2, 3, 4};
    cfg.k_grid = {2, 8, 32, 128};
    cfg.reps = 20000;
    const auto rows = run_local_limit(cfg);
    const auto increasing = [&](const std::string& stat) {
        double prev = -1.0;
        int seen = 0;
        for (const auto& r : rows) {
            if (r.statistic != stat) continue;
            CHECK(r.estimate >= prev);
            prev = r.estimate;
            ++seen;
        }
        CHECK(seen == 4);
    };
    increasing("brw_trunc_logmean");
    increasing("graph_trunc_logmean");
}

TEST_CASE("wall-time guard marks cells partial instead of crashing") {
    ExperimentConfig cfg = parse_config_text(kToyConfig);
    cfg.experiment = "susceptibility";
    cfg.n = {200000};
    cfg.time_limit_s = 1e-9;  // expires immediately
    const auto rows = run_susceptibility(cfg);
    CHECK(!rows.empty());
    for (const auto& r : rows) CHECK(r.flag == "partial");
}

TEST_CASE("verify rows carry pass flags") {
    ExperimentConfig cfg;
    cfg.experiment = "verify";
    VerifyOptions opts;
    opts.mc_paths = 2000;
    opts.brw_reps = 1000;
    const auto rows = run_verify(cfg, opts);
    CHECK(rows.size() > 10);
    for (const auto& r : rows) CHECK((r.estimate == 0.0 || r.estimate == 1.0));
}
