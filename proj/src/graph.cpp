#include "critwin/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace critwin {

namespace {

inline double kernel_weight(std::int64_t i, std::int64_t j, double gamma, double beta) {
    return beta * std::pow(static_cast<double>(i), -gamma) *
           std::pow(static_cast<double>(j), gamma - 1.0);
}

inline double kernel_prob(std::int64_t i, std::int64_t j, double gamma, double beta,
                          Kernel kernel) {
    const double w = kernel_weight(i, j, gamma, beta);
    if (kernel == Kernel::polynomial) return w < 1.0 ? w : 1.0;
    return -std::expm1(-w);
}

}  // namespace

void for_each_edge(const ResolvedParams& params, std::uint64_t seed, std::int64_t m,
                   std::int64_t n, double beta_env,
                   const std::function<void(std::int64_t, std::int64_t)>& emit) {
    if (!(m >= 1 && m <= n)) throw std::invalid_argument("for_each_edge: need 1 <= m <= n");
    if (beta_env < 0.0) beta_env = params.beta;
    if (beta_env < params.beta)
        throw std::invalid_argument("for_each_edge: beta_env must be >= beta");

    const double gamma = params.gamma;
    const Kernel kernel = params.kernel;

    for (std::int64_t j = std::max<std::int64_t>(m + 1, 2); j <= n; ++j) {
        // The envelope stream is keyed by (seed, j) only, so the candidate
        // process is identical for every target beta <= beta_env.
        SplitMix64 stream(key_combine(seed, static_cast<std::uint64_t>(j)));
        std::int64_t i = m;
        while (i < j) {
            const double p_env = kernel_prob(i, j, gamma, beta_env, kernel);
            std::int64_t cand;
            if (p_env >= 1.0) {
                cand = i;  // clamp region: deterministic candidate, direct iteration
            } else if (p_env <= 0.0) {
                break;
            } else {
                // Geometric number of failures before the next success under
                // the envelope, exact via inversion.
                const double u = stream.u01();
                const double skip = std::floor(std::log1p(-u) / std::log1p(-p_env));
                if (skip >= static_cast<double>(j - i)) break;
                cand = i + static_cast<std::int64_t>(skip);
            }
            // Thin the candidate with the pair uniform: an edge at the target
            // beta iff V * p_env < p_target. Monotone in beta by construction.
            const double v = pair_u01(seed, static_cast<std::uint64_t>(cand),
                                      static_cast<std::uint64_t>(j));
            const double p_env_clamped = p_env < 1.0 ? p_env : 1.0;
            const double p_target = kernel_prob(cand, j, gamma, params.beta, kernel);
            if (v * p_env_clamped < p_target) emit(cand, j);
            i = cand + 1;
        }
    }
}

SampledGraph sample_graph(const ModelParams& params, std::uint64_t seed, std::int64_t m,
                          std::int64_t n, const SampleOptions& opts) {
    SampledGraph g;
    g.params = resolve(params);
    if (n > g.params.n) throw std::invalid_argument("sample_graph: range exceeds params.n");
    g.seed = seed;
    g.m = m;
    g.n = n;
    g.edges_kept = opts.keep_edges;
    if (opts.keep_edges) {
        for_each_edge(g.params, seed, m, n, opts.beta_env,
                      [&](std::int64_t i, std::int64_t j) {
                          if (opts.max_edges >= 0 &&
                              static_cast<std::int64_t>(g.edges.size()) >= opts.max_edges)
                              throw ResourceLimitError("sample_graph: max_edges exceeded");
                          g.edges.emplace_back(i, j);
                      });
    }
    return g;
}

namespace {

GraphComponents components_of_union_find(UnionFind& uf, std::int64_t m, std::int64_t n) {
    GraphComponents c;
    c.m = m;
    c.n = n;
    const std::int64_t count = n - m + 1;
    std::vector<std::int64_t> size_of_root(count, 0);
    for (std::int64_t v = 0; v < count; ++v) ++size_of_root[uf.find(static_cast<std::int32_t>(v))];
    for (std::int64_t r = 0; r < count; ++r) {
        if (size_of_root[r] > 0) c.sizes.push_back(size_of_root[r]);
    }
    std::sort(c.sizes.begin(), c.sizes.end(), std::greater<>());
    c.largest = c.sizes.empty() ? 0 : c.sizes.front();
    c.sum_sq = 0;
    for (const std::int64_t s : c.sizes) c.sum_sq += s * s;
    return c;
}

}  // namespace

GraphComponents components(const SampledGraph& g) {
    if (!g.edges_kept)
        throw std::invalid_argument("components: graph was sampled without edge retention");
    UnionFind uf(g.n - g.m + 1);
    for (const auto& [i, j] : g.edges)
        uf.unite(static_cast<std::int32_t>(i - g.m), static_cast<std::int32_t>(j - g.m));
    return components_of_union_find(uf, g.m, g.n);
}

GraphComponents components_streamed(const ResolvedParams& params, std::uint64_t seed,
                                    std::int64_t m, std::int64_t n, double beta_env) {
    UnionFind uf(n - m + 1);
    for_each_edge(params, seed, m, n, beta_env, [&](std::int64_t i, std::int64_t j) {
        uf.unite(static_cast<std::int32_t>(i - m), static_cast<std::int32_t>(j - m));
    });
    return components_of_union_find(uf, m, n);
}

double susceptibility(const GraphComponents& c) {
    return static_cast<double>(c.sum_sq) / static_cast<double>(c.range_size());
}

double log_susceptibility(const GraphComponents& c) {
    double acc = 0.0;
    for (const std::int64_t s : c.sizes)
        acc += static_cast<double>(s) * static_cast<double>(s) * std::log(static_cast<double>(s));
    return acc / static_cast<double>(c.range_size());
}

std::vector<std::pair<std::int64_t, double>> tail_counts(
    const GraphComponents& c, const std::vector<std::int64_t>& k_grid) {
    if (k_grid.empty()) throw std::invalid_argument("tail_counts: empty k grid");
    for (std::size_t t = 1; t < k_grid.size(); ++t)
        if (k_grid[t] <= k_grid[t - 1]) throw std::invalid_argument("tail_counts: grid not increasing");
    // sizes are sorted descending: walking the grid upward, the set of
    // components of size >= k only shrinks, so one pass suffices.
    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(k_grid.size());
    const double denom = static_cast<double>(c.range_size());
    std::int64_t total = 0;
    for (const std::int64_t s : c.sizes) total += s;
    std::size_t idx = c.sizes.size();  // first index with size < k, scanning from the back
    std::int64_t dropped = 0;
    for (const std::int64_t k : k_grid) {
        while (idx > 0 && c.sizes[idx - 1] < k) {
            --idx;
            dropped += c.sizes[idx];
        }
        out.emplace_back(k, static_cast<double>(total - dropped) / denom);
    }
    return out;
}

void write_edge_list(std::ostream& os, const SampledGraph& g) {
    if (!g.edges_kept)
        throw std::invalid_argument("write_edge_list: graph was sampled without edge retention");
    os << "# critwin-edges v1 n=" << g.n << " gamma=" << g.params.gamma
       << " beta=" << g.params.beta << " seed=" << g.seed << "\n";
    for (const auto& [i, j] : g.edges) os << i << " " << j << "\n";
}

}  // namespace critwin
