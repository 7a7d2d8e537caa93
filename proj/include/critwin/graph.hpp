#pragma once

// Exact sampling of the gamma-growing random graph and union-find component
// analytics (largest component, susceptibility, size-distribution tails).
//
// Generation never scans all O(n^2) pairs: for each arriving vertex j the
// candidate attachment targets are produced by geometric skip-sampling under
// a monotone envelope, then thinned with a per-pair uniform keyed by
// (seed, i, j). Because the envelope stream depends only on (seed, j) and the
// envelope parameter beta_env, running the sampler at any beta <= beta_env
// with the same seed yields path-wise nested edge sets (monotone coupling).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "critwin/model.hpp"
#include "critwin/rng.hpp"

namespace critwin {

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SampleOptions {
    bool keep_edges = true;
    std::int64_t max_edges = -1;  // < 0: unlimited; exceeded -> ResourceLimitError
    // Envelope edge density for the shared-uniform monotone mode. Must be
    // >= beta; the candidate stream is generated at beta_env so edge sets are
    // nested across beta for a fixed seed. Defaults to beta itself.
    double beta_env = -1.0;
};

struct SampledGraph {
    ResolvedParams params;
    std::uint64_t seed = 0;
    std::int64_t m = 1, n = 1;
    bool edges_kept = true;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;  // i < j, ascending (j, i)
};

struct GraphComponents {
    std::int64_t m = 1, n = 1;                // vertex-label range the components live on
    std::vector<std::int64_t> sizes;          // component size multiset, descending
    std::int64_t largest = 0;
    std::int64_t sum_sq = 0;                  // sum of |C|^2 over components
    std::int64_t range_size() const { return n - m + 1; }
};

// Streams the edges of the induced subgraph on [m, n] in ascending (j, i)
// order into `emit(i, j)`. Deterministic for fixed (params, seed, range).
void for_each_edge(const ResolvedParams& params, std::uint64_t seed, std::int64_t m,
                   std::int64_t n, double beta_env,
                   const std::function<void(std::int64_t, std::int64_t)>& emit);

SampledGraph sample_graph(const ModelParams& params, std::uint64_t seed,
                          std::int64_t m, std::int64_t n, const SampleOptions& opts = {});

GraphComponents components(const SampledGraph& g);

// Single pass: stream edges straight into union-find without materializing
// the list; the only way to reach n ~ 10^7 in bounded memory.
GraphComponents components_streamed(const ResolvedParams& params, std::uint64_t seed,
                                    std::int64_t m, std::int64_t n, double beta_env = -1.0);

// (1/range) sum |C|^2 == mean component size of a uniform vertex; >= 1.
double susceptibility(const GraphComponents& c);

// (1/range) sum |C|^2 log |C|.
double log_susceptibility(const GraphComponents& c);

// For each k in k_grid (sorted ascending): fraction of vertices lying in a
// component of size >= k. Non-increasing, equals 1 at k = 1.
std::vector<std::pair<std::int64_t, double>> tail_counts(const GraphComponents& c,
                                                         const std::vector<std::int64_t>& k_grid);

// Plain-text edge list with the versioned header line.
void write_edge_list(std::ostream& os, const SampledGraph& g);

class UnionFind {
  public:
    explicit UnionFind(std::int64_t count) : parent_(count), size_(count, 1) {
        for (std::int64_t i = 0; i < count; ++i) parent_[i] = static_cast<std::int32_t>(i);
    }

    std::int32_t find(std::int32_t x) {
        std::int32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::int32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    std::int64_t component_size(std::int32_t x) { return size_[find(x)]; }
    std::int64_t count() const { return static_cast<std::int64_t>(parent_.size()); }

  private:
    std::vector<std::int32_t> parent_;
    std::vector<std::int64_t> size_;
};

}  // namespace critwin
