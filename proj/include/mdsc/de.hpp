#ifndef MDSC_DE_HPP
#define MDSC_DE_HPP

#include <iosfwd>
#include <vector>

#include "mdsc/constellation.hpp"
#include "mdsc/params.hpp"

namespace mdsc {

inline double powi(double base, int exponent) {
    double r = 1.0;
    for (int k = 0; k < exponent; ++k) r *= base;
    return r;
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Convex combination of the in-segment and cross-segment neighborhood
// averages with weights (1-T) and T. dir is -1 for the check-node read
// pattern (i-k, j-r) and +1 for the variable-node pattern (i+k, j+r).
// Written as u + T*(v-u) so that segment-uniform inputs reduce bit-exactly
// to the plain in-segment average.
template <class Grid>
inline double coupled_average(const Grid& g, const EnsembleParams& p, int i, int j, int dir) {
    double in_sum = 0.0;
    for (int k = 0; k < p.gamma1; ++k) in_sum += g.at(i + dir * k, j);
    const double u = in_sum / p.gamma1;
    if (p.gamma2 == 1) return u;
    double off_sum = 0.0;
    for (int k = 0; k < p.gamma1; ++k)
        for (int r = 1; r < p.gamma2; ++r) off_sum += g.at(i + dir * k, j + dir * r);
    const double v = off_sum / (static_cast<double>(p.gamma1) * (p.gamma2 - 1));
    return u + p.T * (v - u);
}

/// Erasure probability of the outgoing check-node message at a section,
/// computed from the previous variable-node constellation.
inline double cn_update(const Constellation& c, const EnsembleParams& p, SectionIndex at) {
    return 1.0 - powi(1.0 - clamp01(coupled_average(c, p, at.i, at.j, -1)), p.dr - 1);
}

/// Erasure probability of the outgoing variable-node message at a section,
/// computed from the check-node message grid of the same iteration.
inline double vn_update(const MessageGrid& y, const EnsembleParams& p, SectionIndex at, double epsilon) {
    return epsilon * powi(clamp01(coupled_average(y, p, at.i, at.j, +1)), p.dl - 1);
}

enum class Exec { serial, openmp };

struct DeCaps {
    long max_iterations = 200000;
    double tol_fp = 1e-10;   // max per-section change below this is a fixed point
    Exec exec = Exec::serial;
};

struct SuccessSpec {
    enum class Kind { all_active_below_delta, section_below_delta };
    Kind kind = Kind::all_active_below_delta;
    SectionIndex section{};

    static SuccessSpec all_active() { return {}; }
    static SuccessSpec single(SectionIndex s) { return {Kind::section_below_delta, s}; }
};

struct DEOutcome {
    bool converged = false;   // success criterion reached
    bool stall = false;       // fixed point (or iteration cap) above the target
    long iterations = 0;
    Constellation final;
};

std::vector<SectionIndex> all_in_range_sections(const Constellation& c);

/// One synchronous flooding round: every check-node message is computed from
/// the pre-step constellation, then the sections in `active` are recomputed;
/// everything else is bit-identical. `active` must not contain frozen
/// sections.
Constellation de_step(const Constellation& c, const EnsembleParams& p,
                      const std::vector<SectionIndex>& active, Exec exec = Exec::serial);

// Obvious per-section implementation via cn_update/vn_update, kept as the
// comparison point for the flat-indexed kernel; bit-identical to de_step.
Constellation de_step_reference(const Constellation& c, const EnsembleParams& p,
                                const std::vector<SectionIndex>& active);

/// Iterates de_step until the success criterion holds (converged), the
/// largest per-section change drops below caps.tol_fp without success
/// (stall), or the iteration cap is hit (stall).
DEOutcome run_de(const Constellation& start, const EnsembleParams& p,
                 const std::vector<SectionIndex>& active, const SuccessSpec& success,
                 const DeCaps& caps = {});

/// run_de with an early failure certificate: a companion sequence started
/// from zeros on the active set is monotone increasing and stays below every
/// fixed point, so the success criterion is provably unreachable as soon as
/// the companion violates it. Same outcome as run_de, usually far fewer
/// iterations on failing runs. Only meaningful when the frozen boundary
/// forces a nonzero minimal fixed point (windowed constellations).
DEOutcome run_de_bracketed(const Constellation& start, const EnsembleParams& p,
                           const std::vector<SectionIndex>& active, const SuccessSpec& success,
                           const DeCaps& caps = {});

struct BisectionResult {
    double lo = 0.0;
    double hi = 1.0;
    int probes = 0;
    double midpoint() const { return 0.5 * (lo + hi); }
};

// Bisection over [lo, hi] for a monotone predicate that holds at lo and
// fails at hi; narrows the bracket to `resolution`.
template <class Probe>
BisectionResult bisect(Probe&& succeeds, double resolution, double lo = 0.0, double hi = 1.0) {
    BisectionResult r;
    r.lo = lo;
    r.hi = hi;
    while (r.hi - r.lo > resolution) {
        const double mid = 0.5 * (r.lo + r.hi);
        ++r.probes;
        if (succeeds(mid))
            r.lo = mid;
        else
            r.hi = mid;
    }
    return r;
}

struct ThresholdResult {
    double threshold = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 1.0;
    int probes = 0;
};

/// Full-code belief-propagation threshold: largest epsilon for which density
/// evolution drives every in-range section to at most delta.
ThresholdResult bp_threshold(const EnsembleParams& p, double delta = 1e-12,
                             double resolution = 1e-5, const DeCaps& caps = {});

/// Segment-free density evolution for the 1D coupled ensemble, used as the
/// equivalence oracle for the multi-dimensional recursion. Same boundary
/// convention (out-of-range positions read 0) and the same arithmetic as the
/// grid engine.
class ReferenceChain1D {
public:
    ReferenceChain1D(int dl, int dr, int L1, int gamma1, double epsilon);
    void step();
    const std::vector<double>& values() const { return x_; }
    double max_value() const;
    double last_step_max_change() const { return last_change_; }

private:
    int dl_, dr_, L1_, gamma1_;
    double epsilon_;
    std::vector<double> x_;   // positions 0..L1-1
    std::vector<double> y_;   // positions 0..L1+gamma1-2
    double last_change_ = 0.0;
};

/// Snapshots of the 1D reference recursion: element l is the position
/// profile after l iterations (element 0 is the all-ones start).
std::vector<std::vector<double>> de_1d_reference(int dl, int dr, int L1, int gamma1,
                                                 double epsilon, int iterations);

// Debug dump, columns i,j,x.
void constellation_csv(std::ostream& out, const Constellation& c);

} // namespace mdsc

#endif
