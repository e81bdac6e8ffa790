#include "mdsc/ensemble.hpp"

#include <cmath>
#include <vector>

#include "mdsc/errors.hpp"

namespace mdsc {

BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long t = 0; t < k; ++t) {
        r *= n - t;
        r /= t + 1;  // product of t+1 consecutive integers is divisible by (t+1)!
    }
    return r;
}

BigRational exact_rational(double x) {
    if (!std::isfinite(x)) throw PreconditionViolated("exact_rational: non-finite value");
    return BigRational(x);  // cpp_rational converts floating point exactly
}

BigRational design_rate_exact(const EnsembleParams& p) {
    // correction = gamma1 - 1 - 2*sum_{i<gamma1} (i/gamma1)^dr, as one fraction
    // over gamma1^dr.
    BigInt g_pow = 1;
    for (int e = 0; e < p.dr; ++e) g_pow *= p.gamma1;
    BigInt sum = 0;
    for (int i = 0; i < p.gamma1; ++i) {
        BigInt t = 1;
        for (int e = 0; e < p.dr; ++e) t *= i;
        sum += t;
    }
    BigRational correction = BigRational(BigInt(p.gamma1 - 1) * g_pow - 2 * sum, g_pow);
    BigRational ratio(p.dl, p.dr);
    return 1 - ratio * (1 + correction / p.L1);
}

double design_rate(const EnsembleParams& p) {
    return design_rate_exact(p).convert_to<double>();
}

BigRational p_stop_exact(const EnsembleParams& p, int M) {
    const long long n0 = static_cast<long long>(p.gamma1) * p.cns_per_section(M);
    const long long n1 = static_cast<long long>(p.gamma1) * (p.gamma2 - 1) * p.cns_per_section(M);
    if (n0 <= p.dl)
        throw PreconditionViolated("p_stop: requires gamma1*M*dl/dr > dl");
    if (p.T > 0.0 && p.gamma2 == 1)
        throw DegenerateCoupling("p_stop: T > 0 requires gamma2 >= 2");
    if (p.T > 0.0 && n1 < p.dl)
        throw PreconditionViolated("p_stop: requires gamma1*(gamma2-1)*M*dl/dr >= dl when T > 0");

    const BigRational t = exact_rational(p.T);
    const BigRational q(p.dr - 1, p.dr);  // 1 - 1/dr

    // q^e cache up to dl
    std::vector<BigRational> qp(p.dl + 1);
    qp[0] = 1;
    for (int e = 1; e <= p.dl; ++e) qp[e] = qp[e - 1] * q;

    BigRational total = 0;
    for (int a = 0; a <= p.dl; ++a) {
        const int b = p.dl - a;
        if (p.T == 0.0 && b > 0) continue;   // weight is zero
        if (p.T == 1.0 && a > 0) continue;

        BigRational weight = 1;
        for (int e = 0; e < 2 * a; ++e) weight *= 1 - t;
        for (int e = 0; e < 2 * b; ++e) weight *= t;
        BigInt c = binomial(p.dl, a);
        weight *= BigRational(c * c);
        if (weight == 0) continue;

        BigRational denom = 0;
        for (int l = 0; l <= a; ++l) {
            for (int k = 0; k <= b; ++k) {
                BigInt count = binomial(a, l) * binomial(b, k) *
                               binomial(n0 - a, a - l) * binomial(n1 - b, b - k);
                if (count == 0) continue;
                denom += BigRational(count) * qp[l + k];
            }
        }
        total += weight * qp[p.dl] / denom;
    }
    return total;
}

double p_stop(const EnsembleParams& p, int M) {
    return p_stop_exact(p, M).convert_to<double>();
}

FullyCoupledEquivalent fully_coupled_equivalent(const EnsembleParams& p, int M) {
    FullyCoupledEquivalent e;
    e.one_d = EnsembleParams(p.dl, p.dr, p.L1, p.gamma1, 1, 1, 0.0);
    e.equivalent_m = M * p.L2;
    e.density_equal_weight = p.gamma2 > 1 ? double(p.gamma2 - 1) / p.gamma2 : 0.0;
    e.density_reported = double(p.gamma2 - 1) / p.gamma1;
    return e;
}

} // namespace mdsc
