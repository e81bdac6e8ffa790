#include "mdsc/finite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mdsc/de.hpp"
#include "mdsc/errors.hpp"
#include "mdsc/rng.hpp"

namespace mdsc {

namespace {

// Draws the CN ids of one VN's dl edges, avoiding parallel edges by bounded
// resampling. `chosen` receives flat CN ids.
void sample_vn_edges(const TannerGraph& g, const EnsembleParams& p, int i, int j,
                     SplitMix64& rng, std::int32_t* chosen) {
    constexpr int kSectionAttempts = 64;
    for (int e = 0; e < p.dl; ++e) {
        std::int32_t cn = -1;
        for (int sa = 0; sa < kSectionAttempts && cn < 0; ++sa) {
            int pi, pj;
            if (p.T > 0.0 && rng.uniform01() < p.T) {
                const std::uint64_t pick =
                    rng.below(static_cast<std::uint64_t>(p.gamma1) * (p.gamma2 - 1));
                const int k = static_cast<int>(pick % p.gamma1);
                const int r = 1 + static_cast<int>(pick / p.gamma1);
                pi = i + k;
                pj = wrap_segment(j + r, p.L2);
            } else {
                pi = i + static_cast<int>(rng.below(p.gamma1));
                pj = j;
            }
            for (int ca = 0; ca < g.Mc; ++ca) {
                const std::int32_t cand = g.cn_id(pi, pj, static_cast<int>(rng.below(g.Mc)));
                bool parallel = false;
                for (int q = 0; q < e; ++q) parallel = parallel || chosen[q] == cand;
                if (!parallel) {
                    cn = cand;
                    break;
                }
            }
        }
        if (cn < 0)
            throw SamplingExhausted("no non-parallel CN assignment found (section size too small)");
        chosen[e] = cn;
    }
}

} // namespace

TannerGraph sample_graph(const EnsembleParams& p, int M, std::uint64_t seed) {
    TannerGraph g;
    g.params = p;
    g.M = M;
    g.Mc = p.cns_per_section(M);
    g.cn_positions = p.L1 + p.gamma1 - 1;
    g.vn_adj.resize(static_cast<std::size_t>(g.n_vns()) * p.dl);
    g.cn_adj.resize(g.n_cns());

    SplitMix64 rng = substream(seed, 0);
    for (int i = 0; i < p.L1; ++i)
        for (int j = 0; j < p.L2; ++j)
            for (int n = 0; n < M; ++n) {
                const std::int32_t vn = g.vn_id(i, j, n);
                std::int32_t* chosen = g.vn_adj.data() + static_cast<std::size_t>(vn) * p.dl;
                sample_vn_edges(g, p, i, j, rng, chosen);
                for (int e = 0; e < p.dl; ++e) g.cn_adj[chosen[e]].push_back(vn);
            }

    for (std::int32_t cn = 0; cn < g.n_cns(); ++cn)
        if (g.cn_adj[cn].empty()) g.purged.push_back(cn);
    return g;
}

void write_edge_list(std::ostream& out, const TannerGraph& g) {
    for (std::int32_t vn = 0; vn < g.n_vns(); ++vn) {
        const auto vs = g.vn_section(vn);
        const auto* nb = g.vn_neighbors(vn);
        for (int e = 0; e < g.params.dl; ++e) {
            const auto cs = g.cn_section(nb[e]);
            out << vs.i << ' ' << vs.j << ' ' << g.vn_index(vn) << ' ' << cs.i << ' ' << cs.j
                << ' ' << g.cn_index(nb[e]) << '\n';
        }
    }
}

ErasurePattern sample_erasures(const TannerGraph& g, double epsilon, std::uint64_t seed) {
    ErasurePattern e;
    e.epsilon = epsilon;
    e.seed = seed;
    SplitMix64 rng = substream(seed, 1);
    for (std::int32_t vn = 0; vn < g.n_vns(); ++vn)
        if (rng.uniform01() < epsilon) e.erased.push_back(vn);
    return e;
}

std::vector<std::int32_t> peel(const TannerGraph& g, const std::vector<std::int32_t>& erased) {
    std::vector<std::uint8_t> is_erased(g.n_vns(), 0);
    for (auto vn : erased) is_erased[vn] = 1;
    std::vector<std::int32_t> cn_load(g.n_cns(), 0);
    std::vector<std::int32_t> stack;
    for (std::int32_t cn = 0; cn < g.n_cns(); ++cn) {
        for (auto vn : g.cn_adj[cn]) cn_load[cn] += is_erased[vn];
        if (cn_load[cn] == 1) stack.push_back(cn);
    }
    while (!stack.empty()) {
        const std::int32_t cn = stack.back();
        stack.pop_back();
        if (cn_load[cn] != 1) continue;
        std::int32_t resolved = -1;
        for (auto vn : g.cn_adj[cn])
            if (is_erased[vn]) {
                resolved = vn;
                break;
            }
        is_erased[resolved] = 0;
        for (int e = 0; e < g.params.dl; ++e) {
            const std::int32_t other = g.vn_neighbors(resolved)[e];
            if (--cn_load[other] == 1) stack.push_back(other);
        }
    }
    std::vector<std::int32_t> residual;
    for (auto vn : erased)
        if (is_erased[vn]) residual.push_back(vn);
    return residual;
}

bool is_stopping_set(const TannerGraph& g, const std::vector<std::int32_t>& set) {
    std::vector<std::uint8_t> in_set(g.n_vns(), 0);
    for (auto vn : set) in_set[vn] = 1;
    std::vector<int> touch(g.n_cns(), 0);
    for (auto vn : set)
        for (int e = 0; e < g.params.dl; ++e) ++touch[g.vn_neighbors(vn)[e]];
    for (std::int32_t cn = 0; cn < g.n_cns(); ++cn)
        if (touch[cn] == 1) return false;
    return true;
}

McEstimate mc_pstop(const EnsembleParams& p, int M, long trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionViolated("mc_pstop: trials must be >= 1");
    if (M < 2) throw PreconditionViolated("mc_pstop: need at least two VNs per section");
    long hits = 0;
    #pragma omp parallel for schedule(static) reduction(+ : hits)
    for (long t = 0; t < trials; ++t) {
        TannerGraph g = sample_graph(p, M, substream(seed, static_cast<std::uint64_t>(t))());
        const std::int32_t v1 = g.vn_id(0, 0, 0), v2 = g.vn_id(0, 0, 1);
        std::vector<std::int32_t> n1(g.vn_neighbors(v1), g.vn_neighbors(v1) + p.dl);
        std::vector<std::int32_t> n2(g.vn_neighbors(v2), g.vn_neighbors(v2) + p.dl);
        std::sort(n1.begin(), n1.end());
        std::sort(n2.begin(), n2.end());
        if (n1 == n2) ++hits;
    }
    McEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    est.stderr_ = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
    return est;
}

namespace {

struct PartCounts {
    unsigned long long stopping = 0;
    unsigned long long total = 0;
};

// Counts ordered placements of the second VN's c edges over n_cns check
// nodes with dr sockets each, the first VN occupying one socket in each of
// CNs 0..c-1. Distinct CNs per VN (no parallel edges). `stopping` counts
// placements landing exactly on the first VN's CNs.
PartCounts enumerate_part(int c, long long n_cns, int dr) {
    PartCounts counts;
    if (c == 0) return {1, 1};
    double work = 1.0;
    for (int t = 0; t < c; ++t) work *= static_cast<double>(n_cns - t) * dr;
    if (work > 3e9) throw EnumerationTooLarge("socket enumeration too large");

    std::vector<std::uint8_t> used(n_cns, 0);
    auto rec = [&](auto&& self, int edge, bool all_shared) -> void {
        if (edge == c) {
            ++counts.total;
            counts.stopping += all_shared;
            return;
        }
        for (long long cn = 0; cn < n_cns; ++cn) {
            if (used[cn]) continue;
            const int sockets = cn < c ? dr - 1 : dr;  // one socket taken by the first VN
            used[cn] = 1;
            for (int s = 0; s < sockets; ++s) self(self, edge + 1, all_shared && cn < c);
            used[cn] = 0;
        }
    };
    rec(rec, 0, true);
    return counts;
}

} // namespace

BigRational socket_oracle(const EnsembleParams& p, int M) {
    const long long n0 = static_cast<long long>(p.gamma1) * p.cns_per_section(M);
    const long long n1 = static_cast<long long>(p.gamma1) * (p.gamma2 - 1) * p.cns_per_section(M);
    if (n0 <= p.dl) throw PreconditionViolated("socket_oracle: requires gamma1*M*dl/dr > dl");
    if (p.T > 0.0 && p.gamma2 == 1)
        throw DegenerateCoupling("socket_oracle: T > 0 requires gamma2 >= 2");
    if (p.T > 0.0 && n1 < p.dl)
        throw PreconditionViolated("socket_oracle: cross-segment CN pool smaller than dl");
    if (p.T < 1.0 && n0 > 4LL * p.dl)
        throw EnumerationTooLarge("socket_oracle: in-segment CN pool above the 4*dl bound");
    if (p.T > 0.0 && n1 > 4LL * p.dl)
        throw EnumerationTooLarge("socket_oracle: cross-segment CN pool above the 4*dl bound");

    const BigRational t = exact_rational(p.T);
    BigRational total = 0;
    for (int a = 0; a <= p.dl; ++a) {
        const int b = p.dl - a;
        if (p.T == 0.0 && b > 0) continue;
        if (p.T == 1.0 && a > 0) continue;
        BigRational weight = 1;
        for (int e = 0; e < 2 * a; ++e) weight *= 1 - t;
        for (int e = 0; e < 2 * b; ++e) weight *= t;
        const BigInt comb = binomial(p.dl, a);
        weight *= BigRational(comb * comb);
        if (weight == 0) continue;

        const PartCounts in_seg = enumerate_part(a, n0, p.dr);
        const PartCounts off_seg = enumerate_part(b, n1, p.dr);
        total += weight * BigRational(BigInt(in_seg.stopping) * off_seg.stopping,
                                      BigInt(in_seg.total) * off_seg.total);
    }
    return total;
}

PurgedCnStats purged_cn_socket_mc(const EnsembleParams& p, int M, long graphs,
                                  std::uint64_t seed) {
    if (graphs < 2) throw PreconditionViolated("purged_cn_socket_mc: need at least two graphs");
    const int mc = p.cns_per_section(M);
    PurgedCnStats stats;
    stats.graphs = graphs;
    stats.seed = seed;
    stats.mean.assign(p.gamma1, 0.0);
    stats.stderr_.assign(p.gamma1, 0.0);
    stats.expected.assign(p.gamma1, 0.0);
    for (int i = 0; i < p.gamma1; ++i)
        stats.expected[i] = mc * powi(double(p.gamma1 - 1 - i) / p.gamma1, p.dr);

    std::vector<double> sum(p.gamma1, 0.0), sum_sq(p.gamma1, 0.0);
    #pragma omp parallel
    {
        std::vector<double> local_sum(p.gamma1, 0.0), local_sq(p.gamma1, 0.0);
        #pragma omp for schedule(static) nowait
        for (long gidx = 0; gidx < graphs; ++gidx) {
            auto rng = substream(seed, static_cast<std::uint64_t>(gidx));
            for (int i = 0; i < p.gamma1; ++i) {
                // Sample count per section, averaged over the L2 sections of
                // this position (they are exchangeable).
                double per_graph = 0.0;
                for (int j = 0; j < p.L2; ++j) {
                    int purged = 0;
                    for (int c = 0; c < mc; ++c) {
                        bool connected = false;
                        for (int s = 0; s < p.dr; ++s)
                            connected = connected ||
                                        (i - static_cast<int>(rng.below(p.gamma1)) >= 0);
                        purged += !connected;
                    }
                    per_graph += purged;
                }
                per_graph /= p.L2;
                local_sum[i] += per_graph;
                local_sq[i] += per_graph * per_graph;
            }
        }
        #pragma omp critical
        for (int i = 0; i < p.gamma1; ++i) {
            sum[i] += local_sum[i];
            sum_sq[i] += local_sq[i];
        }
    }
    for (int i = 0; i < p.gamma1; ++i) {
        const double n = static_cast<double>(graphs);
        stats.mean[i] = sum[i] / n;
        const double var = std::max(0.0, sum_sq[i] / n - stats.mean[i] * stats.mean[i]);
        stats.stderr_[i] = std::sqrt(var / n);
    }
    return stats;
}

std::vector<double> purged_by_position(const TannerGraph& g, int positions) {
    std::vector<double> out(positions, 0.0);
    for (auto cn : g.purged) {
        const auto s = g.cn_section(cn);
        if (s.i < positions) out[s.i] += 1.0;
    }
    for (auto& v : out) v /= g.params.L2;
    return out;
}

} // namespace mdsc
