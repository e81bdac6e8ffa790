#ifndef MDSC_OPTIMIZER_HPP
#define MDSC_OPTIMIZER_HPP

#include <vector>

#include "mdsc/params.hpp"
#include "mdsc/window.hpp"

namespace mdsc {

/// Candidate set: all window-size vectors of length L2 with entry bounds
/// [w_min, w_max], total complexity exactly C, and W_0 >= 1.
struct SearchSpace {
    int L2 = 0;
    int C = 0;
    int w_min = 0;
    int w_max = -1;   // -1: defaults to C

    int first_min() const { return w_min > 1 ? w_min : 1; }
    int effective_max() const { return w_max < 0 ? C : w_max; }
};

/// Bounded compositions of C in lexicographic order; throws EmptySpace when
/// the bounds are infeasible.
std::vector<WindowSpec> enumerate_specs(const SearchSpace& space);

// Number of candidates without enumerating (for validation and reporting).
long long count_specs(const SearchSpace& space);

struct SearchReport {
    struct Entry {
        WindowSpec spec;
        double threshold = 0.0;
        double resolution = 0.0;   // bracket width this entry was evaluated at
    };
    WindowSpec best;
    double best_threshold = 0.0;
    std::vector<Entry> all;         // sorted by threshold descending, lexicographic tie-break
    std::vector<WindowSpec> ties;   // specs within 2*resolution of the best
    double resolution = 0.0;        // fine resolution carried by the winners
    double delta = 0.0;
};

struct OptimizeOptions {
    double coarse_resolution = 1e-3;  // first pass; top candidates re-run at `resolution`
    int workers = 0;                  // 0: OpenMP default
    DeCaps de_caps{};
};

/// Evaluates the worst-case window threshold of every candidate and returns
/// the maximizer. Candidates are first bracketed at the coarse resolution;
/// the top decile (and everything within 2x coarse resolution of the coarse
/// best) is re-evaluated at the fine resolution. Deterministic regardless of
/// the worker count.
SearchReport optimize(const SearchSpace& space, const EnsembleParams& p, double delta = 1e-12,
                      double resolution = 1e-5, const OptimizeOptions& opts = {});

} // namespace mdsc

#endif
