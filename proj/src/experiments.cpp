#include "critwin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <thread>

#include "critwin/analytics.hpp"
#include "critwin/brw.hpp"
#include "critwin/coupling.hpp"
#include "critwin/graph.hpp"
#include "critwin/stats.hpp"

namespace critwin {

void parallel_tasks(int threads, std::int64_t count,
                    const std::function<void(std::int64_t)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads == 1 || count <= 1) {
        for (std::int64_t t = 0; t < count; ++t) fn(t);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::int64_t t = next.fetch_add(1);
                if (t >= count) return;
                fn(t);
            }
        });
    }
    for (auto& th : pool) th.join();
}

namespace {

struct Cell {
    double gamma;
    std::int64_t n;
    double level;  // alpha or beta, per config mode
    ResolvedParams params;
};

std::vector<Cell> grid_cells(const ExperimentConfig& cfg) {
    std::vector<Cell> cells;
    for (const double g : cfg.gamma)
        for (const std::int64_t size : cfg.n)
            for (const double level : cfg.levels()) {
                Cell c{g, size, level, {}};
                c.params = resolve(cfg.cell_params(g, size, level));
                cells.push_back(c);
            }
    return cells;
}

ResultRow base_row(const ExperimentConfig& cfg, const Cell& c) {
    ResultRow r;
    r.experiment = cfg.experiment;
    r.gamma = c.gamma;
    r.n = c.params.n;
    r.alpha = c.params.alpha;
    r.beta = c.params.beta;
    r.kernel = kernel_name(cfg.kernel);
    return r;
}

struct WallClock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Wall-time and resource guards: a task started past the deadline (or tripping
// a resource cap) yields a flagged partial marker instead of data or a crash.
// A tripped guard aborts cells, so it also forfeits byte-reproducibility of
// that run; guards are off (time_limit_s = 0) by default.
struct TaskGuard {
    const ExperimentConfig* cfg;
    WallClock clock;
    bool expired() const {
        return cfg->time_limit_s > 0.0 && clock.seconds() > cfg->time_limit_s;
    }
};

// Graph-side per-seed component statistics shared by several experiments.
struct SeedStats {
    std::int64_t largest = 0;
    double susceptibility = 0.0;
    double log_susceptibility = 0.0;
    std::vector<double> frac_ge;        // aligned with k_grid
    std::vector<double> trunc_mean;     // (1/range) sum_{|C|<=k} |C|^2
    std::vector<double> trunc_logmean;  // (1/range) sum_{|C|<=k} |C|^2 log |C|
};

SeedStats seed_stats(const GraphComponents& comps, const std::vector<std::int64_t>& k_grid) {
    SeedStats s;
    s.largest = comps.largest;
    s.susceptibility = susceptibility(comps);
    s.log_susceptibility = log_susceptibility(comps);
    if (!k_grid.empty()) {
        for (const auto& [k, frac] : tail_counts(comps, k_grid)) {
            (void)k;
            s.frac_ge.push_back(frac);
        }
        const double denom = static_cast<double>(comps.range_size());
        s.trunc_mean.assign(k_grid.size(), 0.0);
        s.trunc_logmean.assign(k_grid.size(), 0.0);
        // sizes descending; accumulate from the smallest upward
        for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
            double acc = 0.0, acc_log = 0.0;
            for (auto it = comps.sizes.rbegin(); it != comps.sizes.rend(); ++it) {
                const double sz = static_cast<double>(*it);
                if (*it > k_grid[ki]) break;
                acc += sz * sz;
                acc_log += sz * sz * std::log(sz);
            }
            s.trunc_mean[ki] = acc / denom;
            s.trunc_logmean[ki] = acc_log / denom;
        }
    }
    return s;
}

double compensate(std::int64_t k, double frac) {
    const double lk = std::log(static_cast<double>(k));
    return static_cast<double>(k) * lk * lk * frac;
}

}  // namespace

std::vector<ResultRow> run_susceptibility(const ExperimentConfig& cfg) {
    const auto cells = grid_cells(cfg);
    const std::int64_t n_seeds = static_cast<std::int64_t>(cfg.seeds.size());
    const std::int64_t tasks = static_cast<std::int64_t>(cells.size()) * n_seeds;
    std::vector<SeedStats> stats(static_cast<std::size_t>(tasks));
    std::vector<std::string> flags(static_cast<std::size_t>(tasks));
    TaskGuard guard{&cfg, {}};
    parallel_tasks(cfg.threads, tasks, [&](std::int64_t t) {
        if (guard.expired()) {
            flags[static_cast<std::size_t>(t)] = "partial";
            return;
        }
        const Cell& c = cells[static_cast<std::size_t>(t / n_seeds)];
        const std::uint64_t seed = cfg.seeds[static_cast<std::size_t>(t % n_seeds)];
        try {
            const GraphComponents comps = components_streamed(c.params, seed, 1, c.params.n);
            stats[static_cast<std::size_t>(t)] = seed_stats(comps, {});
        } catch (const ResourceLimitError&) {
            flags[static_cast<std::size_t>(t)] = "partial";
        }
    });

    std::vector<ResultRow> rows;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        MeanVar sus, logsus;
        bool any_partial = false;
        for (std::int64_t si = 0; si < n_seeds; ++si) {
            const std::size_t t = ci * static_cast<std::size_t>(n_seeds) +
                                  static_cast<std::size_t>(si);
            ResultRow r = base_row(cfg, cells[ci]);
            r.seed = static_cast<std::int64_t>(cfg.seeds[static_cast<std::size_t>(si)]);
            r.n_reps = 1;
            if (!flags[t].empty()) {
                any_partial = true;
                r.flag = flags[t];
                r.statistic = "susceptibility";
                rows.push_back(r);
                continue;
            }
            const SeedStats& s = stats[t];
            r.statistic = "susceptibility";
            r.estimate = s.susceptibility;
            rows.push_back(r);
            r.statistic = "log_susceptibility";
            r.estimate = s.log_susceptibility;
            rows.push_back(r);
            sus.add(s.susceptibility);
            logsus.add(s.log_susceptibility);
        }
        if (sus.count() == 0) continue;
        ResultRow agg = base_row(cfg, cells[ci]);
        agg.n_reps = sus.count();
        if (any_partial) agg.flag = "partial";
        agg.statistic = "susceptibility";
        agg.estimate = sus.mean();
        agg.half_width = half_width_95(sus);
        rows.push_back(agg);
        agg.statistic = "log_susceptibility";
        agg.estimate = logsus.mean();
        agg.half_width = half_width_95(logsus);
        rows.push_back(agg);
    }
    return rows;
}

std::vector<ResultRow> run_tail(const ExperimentConfig& cfg) {
    const auto cells = grid_cells(cfg);
    const std::int64_t n_seeds = static_cast<std::int64_t>(cfg.seeds.size());
    const std::int64_t tasks = static_cast<std::int64_t>(cells.size()) * n_seeds;
    std::vector<SeedStats> stats(static_cast<std::size_t>(tasks));
    std::vector<bool> valid(static_cast<std::size_t>(tasks), false);
    TaskGuard guard{&cfg, {}};
    parallel_tasks(cfg.threads, tasks, [&](std::int64_t t) {
        if (guard.expired()) return;
        const Cell& c = cells[static_cast<std::size_t>(t / n_seeds)];
        const std::uint64_t seed = cfg.seeds[static_cast<std::size_t>(t % n_seeds)];
        try {
            const GraphComponents comps = components_streamed(c.params, seed, 1, c.params.n);
            stats[static_cast<std::size_t>(t)] = seed_stats(comps, cfg.k_grid);
            valid[static_cast<std::size_t>(t)] = true;
        } catch (const ResourceLimitError&) {
        }
    });

    std::vector<ResultRow> rows;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        for (std::size_t ki = 0; ki < cfg.k_grid.size(); ++ki) {
            const std::int64_t k = cfg.k_grid[ki];
            MeanVar frac;
            bool any_partial = false;
            for (std::int64_t si = 0; si < n_seeds; ++si) {
                const std::size_t t = ci * static_cast<std::size_t>(n_seeds) +
                                      static_cast<std::size_t>(si);
                ResultRow per = base_row(cfg, cells[ci]);
                per.seed = static_cast<std::int64_t>(cfg.seeds[static_cast<std::size_t>(si)]);
                per.k = k;
                per.n_reps = 1;
                per.statistic = "tail_prob";
                if (!valid[t]) {
                    any_partial = true;
                    per.flag = "partial";
                    rows.push_back(per);
                    continue;
                }
                per.estimate = stats[t].frac_ge[ki];
                rows.push_back(per);
                frac.add(stats[t].frac_ge[ki]);
            }
            if (frac.count() == 0) continue;
            ResultRow r = base_row(cfg, cells[ci]);
            if (any_partial) r.flag = "partial";
            r.k = k;
            r.n_reps = frac.count();
            r.statistic = "tail_prob";
            r.estimate = frac.mean();
            r.half_width = half_width_95(frac);
            rows.push_back(r);
            if (k >= 2) {
                r.statistic = "compensated_tail";
                r.estimate = compensate(k, frac.mean());
                r.half_width = compensate(k, half_width_95(frac));
                rows.push_back(r);
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_window_scan(const ExperimentConfig& cfg) {
    // levels scanned in ascending resolved-beta order within each (gamma, n);
    // one envelope at the largest beta keeps the per-pair uniforms shared, so
    // raw |L_n| is non-decreasing in the level for each seed.
    struct ScanCell {
        double gamma;
        std::int64_t n;
        std::vector<Cell> levels;  // ascending beta
        double beta_env;
    };
    std::vector<ScanCell> scans;
    for (const double g : cfg.gamma)
        for (const std::int64_t size : cfg.n) {
            ScanCell sc{g, size, {}, 0.0};
            for (const double level : cfg.levels()) {
                Cell c{g, size, level, resolve(cfg.cell_params(g, size, level))};
                sc.levels.push_back(c);
            }
            std::sort(sc.levels.begin(), sc.levels.end(),
                      [](const Cell& a, const Cell& b) { return a.params.beta < b.params.beta; });
            sc.beta_env = sc.levels.back().params.beta;
            scans.push_back(sc);
        }

    const std::int64_t n_seeds = static_cast<std::int64_t>(cfg.seeds.size());
    const std::int64_t tasks = static_cast<std::int64_t>(scans.size()) * n_seeds;
    // per (scan, seed): largest component per level; empty = guard tripped
    std::vector<std::vector<std::int64_t>> largest(static_cast<std::size_t>(tasks));
    TaskGuard guard{&cfg, {}};
    parallel_tasks(cfg.threads, tasks, [&](std::int64_t t) {
        if (guard.expired()) return;
        const ScanCell& sc = scans[static_cast<std::size_t>(t / n_seeds)];
        const std::uint64_t seed = cfg.seeds[static_cast<std::size_t>(t % n_seeds)];
        auto& out = largest[static_cast<std::size_t>(t)];
        try {
            for (const Cell& c : sc.levels) {
                const GraphComponents comps =
                    components_streamed(c.params, seed, 1, c.params.n, sc.beta_env);
                out.push_back(comps.largest);
            }
        } catch (const ResourceLimitError&) {
            out.clear();
        }
    });

    std::vector<ResultRow> rows;
    for (std::size_t sci = 0; sci < scans.size(); ++sci) {
        const ScanCell& sc = scans[sci];
        for (std::int64_t si = 0; si < n_seeds; ++si) {
            const auto& per_level = largest[sci * static_cast<std::size_t>(n_seeds) +
                                            static_cast<std::size_t>(si)];
            if (per_level.empty()) {
                ResultRow r = base_row(cfg, sc.levels.front());
                r.seed = static_cast<std::int64_t>(cfg.seeds[static_cast<std::size_t>(si)]);
                r.statistic = "largest_component";
                r.flag = "partial";
                rows.push_back(r);
                continue;
            }
            bool monotone = true;
            for (std::size_t li = 0; li < sc.levels.size(); ++li) {
                ResultRow r = base_row(cfg, sc.levels[li]);
                r.seed = static_cast<std::int64_t>(cfg.seeds[static_cast<std::size_t>(si)]);
                r.n_reps = 1;
                r.statistic = "largest_component";
                r.estimate = static_cast<double>(per_level[li]);
                rows.push_back(r);
                if (li > 0 && per_level[li] < per_level[li - 1]) monotone = false;
            }
            ResultRow m = base_row(cfg, sc.levels.front());
            m.alpha = 0.0;
            m.beta = 0.0;
            m.seed = static_cast<std::int64_t>(cfg.seeds[static_cast<std::size_t>(si)]);
            m.n_reps = 1;
            m.statistic = "monotone_in_level";
            m.estimate = monotone ? 1.0 : 0.0;
            rows.push_back(m);
        }
        for (std::size_t li = 0; li < sc.levels.size(); ++li) {
            const Cell& c = sc.levels[li];
            const double si_alpha = rw::si(c.params.alpha);
            std::vector<double> normalized;
            for (std::int64_t si = 0; si < n_seeds; ++si) {
                const auto& per_level = largest[sci * static_cast<std::size_t>(n_seeds) +
                                                static_cast<std::size_t>(si)];
                if (per_level.empty()) continue;  // guard tripped for this seed
                normalized.push_back(static_cast<double>(per_level[li]) *
                                     std::log(static_cast<double>(c.params.n)) * si_alpha /
                                     std::sqrt(static_cast<double>(c.params.n)));
            }
            if (normalized.empty()) continue;
            ResultRow r = base_row(cfg, c);
            r.n_reps = static_cast<std::int64_t>(normalized.size());
            if (si_alpha <= 0.0) r.flag = "beyond_pi2";
            if (normalized.size() < static_cast<std::size_t>(n_seeds)) r.flag = "partial";
            r.statistic = "normalized_largest_median";
            r.estimate = median_of(normalized);
            rows.push_back(r);
            const auto [q25, q75] = quartiles_of(normalized);
            r.statistic = "normalized_largest_q25";
            r.estimate = q25;
            rows.push_back(r);
            r.statistic = "normalized_largest_q75";
            r.estimate = q75;
            rows.push_back(r);
        }
    }
    return rows;
}

std::vector<ResultRow> run_local_limit(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows;
    const std::size_t nk = cfg.k_grid.size();

    // BRW side, per gamma: fixed 64-way chunking keyed by chunk index keeps
    // the result independent of the thread count.
    for (const double g : cfg.gamma) {
        constexpr std::int64_t kChunks = 64;
        struct ChunkAcc {
            MeanVar progeny;
            std::vector<MeanVar> frac_ge, trunc_mean, trunc_logmean;
            std::int64_t censored = 0, draws = 0;
        };
        std::vector<ChunkAcc> acc(kChunks);
        for (auto& a : acc) {
            a.frac_ge.resize(nk);
            a.trunc_mean.resize(nk);
            a.trunc_logmean.resize(nk);
        }
        const std::uint64_t gbits = std::bit_cast<std::uint64_t>(g);
        parallel_tasks(cfg.threads, kChunks, [&](std::int64_t chunk) {
            ChunkAcc& a = acc[static_cast<std::size_t>(chunk)];
            const std::int64_t lo = cfg.reps * chunk / kChunks;
            const std::int64_t hi = cfg.reps * (chunk + 1) / kChunks;
            SplitMix64 rng(key_combine(key_combine(key_combine(cfg.seeds[0], 0x11uLL), gbits),
                                       static_cast<std::uint64_t>(chunk)));
            for (std::int64_t r = lo; r < hi; ++r) {
                const LocalLimitSample s = local_limit_progeny(g, cfg.max_particles, rng);
                ++a.draws;
                if (s.censored) {
                    ++a.censored;
                    continue;
                }
                const double T = static_cast<double>(s.progeny);
                a.progeny.add(T);
                for (std::size_t ki = 0; ki < nk; ++ki) {
                    const std::int64_t k = cfg.k_grid[ki];
                    a.frac_ge[ki].add(s.progeny >= k ? 1.0 : 0.0);
                    const bool in = s.progeny <= k;
                    a.trunc_mean[ki].add(in ? T : 0.0);
                    a.trunc_logmean[ki].add(in ? T * std::log(T) : 0.0);
                }
            }
        });
        MeanVar progeny;
        std::vector<MeanVar> frac_ge(nk), trunc_mean(nk), trunc_logmean(nk);
        std::int64_t censored = 0, draws = 0;
        for (const auto& a : acc) {
            progeny.merge(a.progeny);
            for (std::size_t ki = 0; ki < nk; ++ki) {
                frac_ge[ki].merge(a.frac_ge[ki]);
                trunc_mean[ki].merge(a.trunc_mean[ki]);
                trunc_logmean[ki].merge(a.trunc_logmean[ki]);
            }
            censored += a.censored;
            draws += a.draws;
        }
        ResultRow r;
        r.experiment = cfg.experiment;
        r.gamma = g;
        r.n = 0;  // BRW side has no graph size
        r.beta = critical_beta(g);
        r.kernel = kernel_name(cfg.kernel);
        r.n_reps = draws;
        r.censored_fraction = static_cast<double>(censored) / static_cast<double>(draws);
        if (r.censored_fraction > 0.01) r.flag = "censored";
        r.statistic = "brw_mean_progeny";
        r.estimate = progeny.mean();
        r.half_width = 1.96 * progeny.sem();
        rows.push_back(r);
        for (std::size_t ki = 0; ki < nk; ++ki) {
            r.k = cfg.k_grid[ki];
            r.statistic = "brw_frac_ge_k";
            r.estimate = frac_ge[ki].mean();
            r.half_width = 1.96 * frac_ge[ki].sem();
            rows.push_back(r);
            if (r.k >= 2) {
                r.statistic = "brw_compensated_tail";
                r.estimate = compensate(r.k, frac_ge[ki].mean());
                r.half_width = compensate(r.k, 1.96 * frac_ge[ki].sem());
                rows.push_back(r);
            }
            r.statistic = "brw_trunc_mean";
            r.estimate = trunc_mean[ki].mean();
            r.half_width = 1.96 * trunc_mean[ki].sem();
            rows.push_back(r);
            r.statistic = "brw_trunc_logmean";
            r.estimate = trunc_logmean[ki].mean();
            r.half_width = 1.96 * trunc_logmean[ki].sem();
            rows.push_back(r);
        }
        r.k = -1;

        // Graph side and side-by-side differences, per (n, level) cell.
        for (const std::int64_t size : cfg.n) {
            for (const double level : cfg.levels()) {
                const Cell c{g, size, level, resolve(cfg.cell_params(g, size, level))};
                const std::int64_t n_seeds = static_cast<std::int64_t>(cfg.seeds.size());
                std::vector<SeedStats> stats(static_cast<std::size_t>(n_seeds));
                std::vector<bool> valid(static_cast<std::size_t>(n_seeds), false);
                TaskGuard guard{&cfg, {}};
                parallel_tasks(cfg.threads, n_seeds, [&](std::int64_t si) {
                    if (guard.expired()) return;
                    try {
                        const GraphComponents comps = components_streamed(
                            c.params, cfg.seeds[static_cast<std::size_t>(si)], 1, c.params.n);
                        stats[static_cast<std::size_t>(si)] = seed_stats(comps, cfg.k_grid);
                        valid[static_cast<std::size_t>(si)] = true;
                    } catch (const ResourceLimitError&) {
                    }
                });
                for (std::size_t ki = 0; ki < nk; ++ki) {
                    MeanVar gf, gm, gl;
                    for (std::int64_t si = 0; si < n_seeds; ++si) {
                        if (!valid[static_cast<std::size_t>(si)]) continue;
                        const auto& s = stats[static_cast<std::size_t>(si)];
                        gf.add(s.frac_ge[ki]);
                        gm.add(s.trunc_mean[ki]);
                        gl.add(s.trunc_logmean[ki]);
                    }
                    if (gf.count() == 0) continue;
                    ResultRow q = base_row(cfg, c);
                    q.k = cfg.k_grid[ki];
                    q.n_reps = gf.count();
                    if (gf.count() < n_seeds) q.flag = "partial";
                    q.statistic = "graph_frac_ge_k";
                    q.estimate = gf.mean();
                    q.half_width = half_width_95(gf);
                    rows.push_back(q);
                    q.statistic = "graph_trunc_mean";
                    q.estimate = gm.mean();
                    q.half_width = half_width_95(gm);
                    rows.push_back(q);
                    q.statistic = "graph_trunc_logmean";
                    q.estimate = gl.mean();
                    q.half_width = half_width_95(gl);
                    rows.push_back(q);
                    // difference rows: estimate = graph - brw, half_width = combined SE
                    const auto diff_row = [&](const char* name, const MeanVar& gside,
                                              const MeanVar& bside) {
                        ResultRow d = q;
                        d.statistic = name;
                        d.estimate = gside.mean() - bside.mean();
                        d.half_width = std::sqrt(gside.sem() * gside.sem() +
                                                 bside.sem() * bside.sem());
                        rows.push_back(d);
                    };
                    diff_row("diff_frac_ge_k", gf, frac_ge[ki]);
                    diff_row("diff_trunc_mean", gm, trunc_mean[ki]);
                    diff_row("diff_trunc_logmean", gl, trunc_logmean[ki]);
                }
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_coupling_audit(const ExperimentConfig& cfg) {
    struct AuditCell {
        Cell cell;
        EmbeddingKind mode;
    };
    std::vector<AuditCell> cells;
    for (const auto& c : grid_cells(cfg)) {
        cells.push_back({c, EmbeddingKind::lower});
        cells.push_back({c, EmbeddingKind::upper});
    }
    struct AuditAcc {
        std::int64_t inclusion = 0, kernel = 0, censored = 0, reps = 0;
        MeanVar component, progeny;
    };
    std::vector<AuditAcc> acc(cells.size());
    parallel_tasks(cfg.threads, static_cast<std::int64_t>(cells.size()), [&](std::int64_t t) {
        const AuditCell& ac = cells[static_cast<std::size_t>(t)];
        AuditAcc& a = acc[static_cast<std::size_t>(t)];
        // Root at the oldest admissible vertex: lower (m=v=1), upper (m=v=2).
        const std::int64_t v = ac.mode == EmbeddingKind::lower ? 1 : 2;
        const std::int64_t m = v;
        CouplingCaps caps;
        caps.max_particles = cfg.max_particles;
        WallClock clock;
        for (std::int64_t rep = 0; rep < cfg.reps; ++rep) {
            if (cfg.time_limit_s > 0.0 && clock.seconds() > cfg.time_limit_s) break;
            const std::uint64_t seed = key_combine(
                cfg.seeds[static_cast<std::size_t>(rep) % cfg.seeds.size()],
                static_cast<std::uint64_t>(rep));
            const CoupledRealization cr = coupled_realization(
                ac.cell.params.gamma, ac.cell.params.beta, ac.cell.params.kernel, v, m,
                ac.cell.params.n, ac.mode, seed, caps);
            ++a.reps;
            a.inclusion += cr.inclusion_violations;
            a.kernel += cr.kernel_violations;
            if (cr.censored) ++a.censored;
            a.component.add(static_cast<double>(cr.component_size));
            a.progeny.add(static_cast<double>(cr.tree.progeny()));
        }
    });

    std::vector<ResultRow> rows;
    for (std::size_t t = 0; t < cells.size(); ++t) {
        const AuditCell& ac = cells[t];
        const AuditAcc& a = acc[t];
        ResultRow r = base_row(cfg, ac.cell);
        r.statistic = ac.mode == EmbeddingKind::lower ? "lower_inclusion_violations"
                                                      : "upper_inclusion_violations";
        r.n_reps = a.reps;
        r.censored_fraction =
            a.reps > 0 ? static_cast<double>(a.censored) / static_cast<double>(a.reps) : 0.0;
        if (a.reps < cfg.reps) r.flag = "partial";
        r.estimate = static_cast<double>(a.inclusion);
        rows.push_back(r);
        r.statistic = ac.mode == EmbeddingKind::lower ? "lower_kernel_violations"
                                                      : "upper_kernel_violations";
        r.estimate = static_cast<double>(a.kernel);
        rows.push_back(r);
        r.statistic =
            ac.mode == EmbeddingKind::lower ? "lower_mean_component" : "upper_mean_component";
        r.estimate = a.component.mean();
        r.half_width = half_width_95(a.component);
        rows.push_back(r);
        r.statistic = ac.mode == EmbeddingKind::lower ? "lower_mean_progeny" : "upper_mean_progeny";
        r.estimate = a.progeny.mean();
        r.half_width = half_width_95(a.progeny);
        rows.push_back(r);
    }
    return rows;
}

std::vector<ResultRow> run_verify(const ExperimentConfig& cfg, const VerifyOptions& opts) {
    const auto checks = run_verify_checks(opts);
    std::vector<ResultRow> rows;
    for (const auto& c : checks) {
        ResultRow r;
        r.experiment = cfg.experiment;
        r.kernel = kernel_name(cfg.kernel);
        r.statistic = c.name;
        r.estimate = c.pass ? 1.0 : 0.0;
        r.n_reps = 1;
        r.flag = c.pass ? "" : "fail";
        rows.push_back(r);
    }
    return rows;
}

}  // namespace critwin
