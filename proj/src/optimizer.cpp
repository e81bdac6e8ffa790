#include "mdsc/optimizer.hpp"

#include <algorithm>
#include <omp.h>

#include "mdsc/errors.hpp"

namespace mdsc {

namespace {

void check_space(const SearchSpace& space) {
    if (space.L2 < 1) throw EmptySpace("search space: L2 must be positive");
    if (space.w_min < 0) throw EmptySpace("search space: w_min must be nonnegative");
    const int wmax = space.effective_max();
    if (wmax < space.w_min) throw EmptySpace("search space: w_max below w_min");
    long long lo = space.first_min() + static_cast<long long>(space.L2 - 1) * space.w_min;
    long long hi = static_cast<long long>(space.L2) * wmax;
    if (space.C < lo || space.C > hi)
        throw EmptySpace("search space: no composition of C=" + std::to_string(space.C) +
                         " within bounds");
}

} // namespace

std::vector<WindowSpec> enumerate_specs(const SearchSpace& space) {
    check_space(space);
    const int wmax = space.effective_max();
    std::vector<WindowSpec> out;
    std::vector<int> w(space.L2, 0);

    // Depth-first in lexicographic order, pruning by the remaining budget.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == space.L2) {
            if (remaining == 0) out.push_back(WindowSpec(w));
            return;
        }
        const int lo = pos == 0 ? space.first_min() : space.w_min;
        const long long tail_max = static_cast<long long>(space.L2 - pos - 1) * wmax;
        for (int v = lo; v <= wmax && v <= remaining; ++v) {
            if (remaining - v > tail_max) continue;
            w[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, space.C);
    if (out.empty()) throw EmptySpace("search space: no composition satisfies the bounds");
    return out;
}

long long count_specs(const SearchSpace& space) {
    check_space(space);
    const int wmax = space.effective_max();
    // dp over positions; counts stay tiny at the scales this is used for.
    std::vector<long long> dp(space.C + 1, 0);
    for (int v = space.first_min(); v <= wmax && v <= space.C; ++v) dp[v] = 1;
    for (int pos = 1; pos < space.L2; ++pos) {
        std::vector<long long> next(space.C + 1, 0);
        for (int c = 0; c <= space.C; ++c) {
            if (dp[c] == 0) continue;
            for (int v = space.w_min; v <= wmax && c + v <= space.C; ++v) next[c + v] += dp[c];
        }
        dp = std::move(next);
    }
    return dp[space.C];
}

SearchReport optimize(const SearchSpace& space, const EnsembleParams& p, double delta,
                      double resolution, const OptimizeOptions& opts) {
    if (static_cast<int>(space.L2) != p.L2)
        throw PreconditionViolated("optimize: search space length must equal L2");
    const auto candidates = enumerate_specs(space);
    const long n = static_cast<long>(candidates.size());
    const bool two_stage = opts.coarse_resolution > resolution && n > 1;
    const double coarse_res = two_stage ? opts.coarse_resolution : resolution;

    struct Eval {
        BisectionResult bracket;
        double res;
    };
    std::vector<Eval> evals(n);

    const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();

    #pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long idx = 0; idx < n; ++idx) {
        WindowConfiguration wc{candidates[idx], {0, 0}};
        auto probe = [&](double eps) {
            Constellation q = worst_case_constellation(candidates[idx], p, eps, delta);
            return run_de_bracketed(q, p, wc.sections(p.L2), SuccessSpec::single({0, 0}), opts.de_caps)
                .converged;
        };
        evals[idx].bracket = bisect(probe, coarse_res);
        evals[idx].res = coarse_res;
    }

    if (two_stage) {
        double coarse_best = 0.0;
        for (const auto& e : evals) coarse_best = std::max(coarse_best, e.bracket.midpoint());

        std::vector<long> by_coarse(n);
        for (long i = 0; i < n; ++i) by_coarse[i] = i;
        std::sort(by_coarse.begin(), by_coarse.end(), [&](long a, long b) {
            return evals[a].bracket.midpoint() > evals[b].bracket.midpoint();
        });
        const long decile = std::max<long>(1, (n + 9) / 10);
        std::vector<long> fine_set;
        for (long rank = 0; rank < n; ++rank) {
            const long idx = by_coarse[rank];
            if (rank < decile ||
                evals[idx].bracket.midpoint() >= coarse_best - 2 * coarse_res)
                fine_set.push_back(idx);
        }

        const long nf = static_cast<long>(fine_set.size());
        #pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long k = 0; k < nf; ++k) {
            const long idx = fine_set[k];
            WindowConfiguration wc{candidates[idx], {0, 0}};
            auto probe = [&](double eps) {
                Constellation q = worst_case_constellation(candidates[idx], p, eps, delta);
                return run_de_bracketed(q, p, wc.sections(p.L2), SuccessSpec::single({0, 0}), opts.de_caps)
                    .converged;
            };
            // Refine within the coarse bracket.
            evals[idx].bracket =
                bisect(probe, resolution, evals[idx].bracket.lo, evals[idx].bracket.hi);
            evals[idx].res = resolution;
        }
    }

    SearchReport report;
    report.resolution = resolution;
    report.delta = delta;
    report.all.resize(n);
    for (long i = 0; i < n; ++i)
        report.all[i] = {candidates[i], evals[i].bracket.midpoint(), evals[i].res};
    std::sort(report.all.begin(), report.all.end(), [](const auto& a, const auto& b) {
        if (a.threshold != b.threshold) return a.threshold > b.threshold;
        return a.spec.sizes < b.spec.sizes;
    });

    const double top = report.all.front().threshold;
    // Ties within 2*resolution of the maximum; the lexicographically smallest
    // of them is reported as best.
    report.best = report.all.front().spec;
    for (const auto& e : report.all) {
        if (e.threshold < top - 2 * resolution) break;
        report.ties.push_back(e.spec);
        if (e.spec.sizes < report.best.sizes) report.best = e.spec;
    }
    for (const auto& e : report.all)
        if (e.spec == report.best) {
            report.best_threshold = e.threshold;
            break;
        }
    return report;
}

} // namespace mdsc
