#ifndef MDSC_FINITE_HPP
#define MDSC_FINITE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mdsc/ensemble.hpp"
#include "mdsc/params.hpp"

namespace mdsc {

/// Sampled bipartite graph. Variable nodes live in sections
/// [0,L1) x [0,L2), check nodes in positions [0, L1+gamma1-1) (the trailing
/// positions exist because the last VN positions couple forward). Flat ids:
/// vn = (i*L2 + j)*M + n, cn = (i*L2 + j)*Mc + c.
struct TannerGraph {
    EnsembleParams params;
    int M = 0;
    int Mc = 0;              // CNs per section
    int cn_positions = 0;    // L1 + gamma1 - 1

    std::vector<std::int32_t> vn_adj;               // n_vns * dl, CN ids
    std::vector<std::vector<std::int32_t>> cn_adj;  // inverse adjacency
    std::vector<std::int32_t> purged;               // CNs with no neighbor

    int n_vns() const { return params.L1 * params.L2 * M; }
    int n_cns() const { return cn_positions * params.L2 * Mc; }

    std::int32_t vn_id(int i, int j, int n) const {
        return static_cast<std::int32_t>((i * params.L2 + j) * M + n);
    }
    std::int32_t cn_id(int i, int j, int c) const {
        return static_cast<std::int32_t>((i * params.L2 + j) * Mc + c);
    }
    SectionIndex vn_section(std::int32_t vn) const {
        const int s = vn / M;
        return {s / params.L2, s % params.L2};
    }
    int vn_index(std::int32_t vn) const { return vn % M; }
    SectionIndex cn_section(std::int32_t cn) const {
        const int s = cn / Mc;
        return {s / params.L2, s % params.L2};
    }
    int cn_index(std::int32_t cn) const { return cn % Mc; }

    const std::int32_t* vn_neighbors(std::int32_t vn) const {
        return vn_adj.data() + static_cast<std::size_t>(vn) * params.dl;
    }
};

/// Samples a graph: each VN edge flips a T-biased coin to pick the
/// in-segment or cross-segment section set, draws the section uniformly in
/// that set, then a CN uniformly inside the section; parallel edges are
/// avoided by bounded resampling (CN-level, then section-level).
TannerGraph sample_graph(const EnsembleParams& p, int M, std::uint64_t seed);

// One line per edge: vn_i vn_j vn_idx cn_i cn_j cn_idx.
void write_edge_list(std::ostream& out, const TannerGraph& g);

struct ErasurePattern {
    std::vector<std::int32_t> erased;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
};

ErasurePattern sample_erasures(const TannerGraph& g, double epsilon, std::uint64_t seed);

/// Iteratively resolves every CN with exactly one erased neighbor; the
/// residual is the maximal stopping set inside the pattern (empty means the
/// pattern decodes).
std::vector<std::int32_t> peel(const TannerGraph& g, const std::vector<std::int32_t>& erased);

// Every CN touching `set` sees it at least twice.
bool is_stopping_set(const TannerGraph& g, const std::vector<std::int32_t>& set);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

/// Frequency with which the first two VNs of section (0,0) share their full
/// CN neighborhood, over independently sampled graphs (the size-2
/// stopping-set event under the sampling model above).
McEstimate mc_pstop(const EnsembleParams& p, int M, long trials, std::uint64_t seed);

/// Exact enumeration of the second VN's ordered non-parallel socket
/// assignments with the first VN's neighborhood fixed; returns the exact
/// stopping-set fraction. Feasible only for small section sizes
/// (gamma1*M*dl/dr <= 4*dl), otherwise throws EnumerationTooLarge.
BigRational socket_oracle(const EnsembleParams& p, int M);

/// Per-position purged-CN statistics for boundary positions i in [0,gamma1)
/// under the check-node socket model (each of the dr sockets draws a
/// position offset uniformly from [gamma1]; the CN is purged when every draw
/// points out of range). `expected` carries the closed form
/// Mc*((gamma1-1-i)/gamma1)^dr.
struct PurgedCnStats {
    std::vector<double> mean;
    std::vector<double> stderr_;
    std::vector<double> expected;
    long graphs = 0;
    std::uint64_t seed = 0;
};

PurgedCnStats purged_cn_socket_mc(const EnsembleParams& p, int M, long graphs, std::uint64_t seed);

// Mean purged-CN count per section at each boundary position of a sampled
// graph (the VN-side sampling model; differs from the socket model at the
// boundary).
std::vector<double> purged_by_position(const TannerGraph& g, int positions);

} // namespace mdsc

#endif
