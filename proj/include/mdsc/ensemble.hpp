#ifndef MDSC_ENSEMBLE_HPP
#define MDSC_ENSEMBLE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "mdsc/params.hpp"

namespace mdsc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// C(n, k) over arbitrary-precision integers; 0 for k < 0 or k > n.
BigInt binomial(long long n, long long k);

// Exact binary-fraction value of a double (every finite double is p/2^k).
BigRational exact_rational(double x);

/// Design rate of the ensemble. Depends only on (dl, dr, L1, gamma1); the
/// cyclic second dimension contributes no rate loss.
BigRational design_rate_exact(const EnsembleParams& p);
double design_rate(const EnsembleParams& p);

/// Probability that two variable nodes of the same section form a size-2
/// stopping set, evaluated exactly over rationals. Requires
/// gamma1*M*dl/dr > dl, and for T > 0 additionally
/// gamma1*(gamma2-1)*M*dl/dr >= dl.
BigRational p_stop_exact(const EnsembleParams& p, int M);
double p_stop(const EnsembleParams& p, int M);

/// Comparison point for the size-2 stopping-set sweeps: the 1D ensemble a
/// fully cross-coupled code collapses to, together with the candidate
/// "uniform coupling" density values for the MD side. The two candidates
/// disagree (see `density_note`); both are reported, neither is chosen.
struct FullyCoupledEquivalent {
    EnsembleParams one_d;          // L2 = 1, gamma2 = 1, T = 0
    int equivalent_m;              // M * L2
    double density_equal_weight;   // (gamma2-1)/gamma2: equal per-section edge probability
    double density_reported;       // (gamma2-1)/gamma1: the conventional reported value
    static constexpr const char* density_note =
        "equal per-section edge weight requires T=(gamma2-1)/gamma2; "
        "the conventional value (gamma2-1)/gamma1 differs whenever gamma1 != gamma2";
};

FullyCoupledEquivalent fully_coupled_equivalent(const EnsembleParams& p, int M);

} // namespace mdsc

#endif
