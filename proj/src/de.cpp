#include "mdsc/de.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

#include "mdsc/errors.hpp"

namespace mdsc {

namespace {

// Flooding iterator. The check-node phase reads only the pre-step
// constellation and the variable-node phase reads only the message grid, so
// a single value buffer realizes the two-phase contract.
//
// Segment wraps and flat offsets are precomputed once per run; the per-step
// loops touch raw arrays only. Summation order (k ascending, then k-outer /
// r-inner for the cross-segment part) matches cn_update/vn_update exactly,
// so this kernel is bit-identical to the reference path.
class DeRunner {
public:
    DeRunner(const Constellation& start, const EnsembleParams& p,
             const std::vector<SectionIndex>& active, Exec exec)
        : cur_(start), p_(p), active_(active), parallel_(exec == Exec::openmp) {
        int lo = start.i_max(), hi = start.i_min();
        for (const auto& s : active_) {
            assert(!start.frozen(s.i, s.j));
            lo = std::min(lo, s.i);
            hi = std::max(hi, s.i);
        }
        if (active_.empty()) return;
        y_.reset(lo, hi + p.gamma1 - 1, start.segments());

        const int L2 = start.segments();
        const int offsets = p.gamma2 - 1;
        cn_wrap_.resize(static_cast<std::size_t>(L2) * offsets);
        vn_wrap_.resize(static_cast<std::size_t>(L2) * offsets);
        for (int j = 0; j < L2; ++j)
            for (int r = 1; r < p.gamma2; ++r) {
                cn_wrap_[static_cast<std::size_t>(j) * offsets + (r - 1)] = wrap_segment(j - r, L2);
                vn_wrap_[static_cast<std::size_t>(j) * offsets + (r - 1)] = wrap_segment(j + r, L2);
            }
    }

    // One flooding round; returns the largest absolute change over active
    // sections and tracks their largest value.
    double step() {
        if (active_.empty()) {
            max_value_ = 0.0;
            return 0.0;
        }
        const int L2 = cur_.segments();
        const int g1 = p_.gamma1, g2 = p_.gamma2;
        const double t = p_.T;
        const int x_lo = cur_.i_min(), x_hi = cur_.i_max();
        const double* xv = cur_.raw().data();
        const int y_lo = y_.i_min(), y_hi = y_.i_max();
        const int n_rows = y_hi - y_lo + 1;
        const double off_norm = g2 > 1 ? static_cast<double>(g1) * (g2 - 1) : 1.0;

        double* yw = &y_.value(y_lo, 0);
        #pragma omp parallel for schedule(static) if (parallel_ && static_cast<long>(n_rows) * L2 > 512)
        for (int j = 0; j < L2; ++j) {
            const int* wrap = cn_wrap_.data() + static_cast<std::size_t>(j) * (g2 - 1);
            for (int p = y_lo; p <= y_hi; ++p) {
                double in_sum = 0.0;
                for (int k = 0; k < g1; ++k) {
                    const int q = p - k;
                    if (q >= x_lo && q <= x_hi)
                        in_sum += xv[static_cast<std::size_t>(q - x_lo) * L2 + j];
                }
                double avg = in_sum / g1;
                if (g2 > 1) {
                    double off_sum = 0.0;
                    for (int k = 0; k < g1; ++k) {
                        const int q = p - k;
                        if (q < x_lo || q > x_hi) continue;
                        const double* row = xv + static_cast<std::size_t>(q - x_lo) * L2;
                        for (int r = 0; r < g2 - 1; ++r) off_sum += row[wrap[r]];
                    }
                    avg += t * (off_sum / off_norm - avg);
                }
                yw[static_cast<std::size_t>(p - y_lo) * L2 + j] = 1.0 - powi(1.0 - clamp01(avg), p_.dr - 1);
            }
        }

        double chg = 0.0, mx = 0.0;
        const double eps = cur_.epsilon();
        double* xw = cur_.raw().data();
        const long n_vn = static_cast<long>(active_.size());
        const double* yv_all = &y_.value(y_lo, 0);

        #pragma omp parallel for schedule(static) reduction(max : chg, mx) if (parallel_ && n_vn > 512)
        for (long n = 0; n < n_vn; ++n) {
            const auto s = active_[n];
            const int* wrap = vn_wrap_.data() + static_cast<std::size_t>(s.j) * (g2 - 1);
            const double* yrow = yv_all + static_cast<std::size_t>(s.i - y_lo) * L2;
            double in_sum = 0.0;
            for (int k = 0; k < g1; ++k) in_sum += yrow[static_cast<std::size_t>(k) * L2 + s.j];
            double avg = in_sum / g1;
            if (g2 > 1) {
                double off_sum = 0.0;
                for (int k = 0; k < g1; ++k) {
                    const double* row = yrow + static_cast<std::size_t>(k) * L2;
                    for (int r = 0; r < g2 - 1; ++r) off_sum += row[wrap[r]];
                }
                avg += t * (off_sum / off_norm - avg);
            }
            const double v = eps * powi(clamp01(avg), p_.dl - 1);
            double& slot = xw[static_cast<std::size_t>(s.i - x_lo) * L2 + s.j];
            chg = std::max(chg, std::abs(v - slot));
            mx = std::max(mx, v);
            slot = v;
        }
        max_value_ = mx;
        return chg;
    }

    const Constellation& constellation() const { return cur_; }
    double max_active_value() const { return max_value_; }

    double current_max_active_value() const {
        double mx = 0.0;
        for (const auto& s : active_) mx = std::max(mx, cur_.value(s.i, s.j));
        return mx;
    }

private:
    Constellation cur_;
    const EnsembleParams& p_;
    const std::vector<SectionIndex>& active_;
    MessageGrid y_;
    std::vector<int> cn_wrap_;
    std::vector<int> vn_wrap_;
    bool parallel_;
    double max_value_ = 0.0;
};

bool success_reached(const DeRunner& r, const SuccessSpec& spec, double delta, bool use_tracked) {
    switch (spec.kind) {
        case SuccessSpec::Kind::all_active_below_delta:
            return (use_tracked ? r.max_active_value() : r.current_max_active_value()) <= delta;
        case SuccessSpec::Kind::section_below_delta:
            return r.constellation().value(spec.section.i, spec.section.j) <= delta;
    }
    return false;
}

} // namespace

std::vector<SectionIndex> all_in_range_sections(const Constellation& c) {
    std::vector<SectionIndex> v;
    v.reserve(static_cast<std::size_t>(c.i_max() - c.i_min() + 1) * c.segments());
    for (int i = c.i_min(); i <= c.i_max(); ++i)
        for (int j = 0; j < c.segments(); ++j)
            if (!c.frozen(i, j)) v.push_back({i, j});
    return v;
}

Constellation de_step(const Constellation& c, const EnsembleParams& p,
                      const std::vector<SectionIndex>& active, Exec exec) {
    DeRunner r(c, p, active, exec);
    r.step();
    return r.constellation();
}

Constellation de_step_reference(const Constellation& c, const EnsembleParams& p,
                                const std::vector<SectionIndex>& active) {
    if (active.empty()) return c;
    int lo = c.i_max(), hi = c.i_min();
    for (const auto& s : active) {
        lo = std::min(lo, s.i);
        hi = std::max(hi, s.i);
    }
    MessageGrid y;
    y.reset(lo, hi + p.gamma1 - 1, c.segments());
    for (int i = y.i_min(); i <= y.i_max(); ++i)
        for (int j = 0; j < c.segments(); ++j) y.value(i, j) = cn_update(c, p, {i, j});
    Constellation out = c;
    for (const auto& s : active) out.value(s.i, s.j) = vn_update(y, p, s, c.epsilon());
    return out;
}

DEOutcome run_de(const Constellation& start, const EnsembleParams& p,
                 const std::vector<SectionIndex>& active, const SuccessSpec& success,
                 const DeCaps& caps) {
    DeRunner r(start, p, active, caps.exec);
    const double delta = start.delta();
    if (success_reached(r, success, delta, /*use_tracked=*/false))
        return {true, false, 0, r.constellation()};
    for (long l = 1; l <= caps.max_iterations; ++l) {
        const double change = r.step();
        if (success_reached(r, success, delta, /*use_tracked=*/true))
            return {true, false, l, r.constellation()};
        if (change < caps.tol_fp)
            return {false, true, l, r.constellation()};
    }
    return {false, true, caps.max_iterations, r.constellation()};
}

DEOutcome run_de_bracketed(const Constellation& start, const EnsembleParams& p,
                           const std::vector<SectionIndex>& active, const SuccessSpec& success,
                           const DeCaps& caps) {
    Constellation lower_start = start;
    for (const auto& s : active) lower_start.value(s.i, s.j) = 0.0;

    DeRunner upper(start, p, active, caps.exec);
    DeRunner lower(lower_start, p, active, caps.exec);
    const double delta = start.delta();

    auto certifies_failure = [&](bool use_tracked) {
        switch (success.kind) {
            case SuccessSpec::Kind::all_active_below_delta:
                return (use_tracked ? lower.max_active_value() : lower.current_max_active_value()) >
                       delta;
            case SuccessSpec::Kind::section_below_delta:
                return lower.constellation().value(success.section.i, success.section.j) > delta;
        }
        return false;
    };

    if (success_reached(upper, success, delta, /*use_tracked=*/false))
        return {true, false, 0, upper.constellation()};
    if (certifies_failure(/*use_tracked=*/false))
        return {false, true, 0, upper.constellation()};

    bool lower_live = true;
    for (long l = 1; l <= caps.max_iterations; ++l) {
        const double change = upper.step();
        if (success_reached(upper, success, delta, /*use_tracked=*/true))
            return {true, false, l, upper.constellation()};
        if (lower_live) {
            const double lower_change = lower.step();
            if (certifies_failure(/*use_tracked=*/true))
                return {false, true, l, upper.constellation()};
            // The companion converged below the target; it can never certify.
            if (lower_change < caps.tol_fp) lower_live = false;
        }
        if (change < caps.tol_fp)
            return {false, true, l, upper.constellation()};
    }
    return {false, true, caps.max_iterations, upper.constellation()};
}

ThresholdResult bp_threshold(const EnsembleParams& p, double delta, double resolution,
                             const DeCaps& caps) {
    if (resolution <= 0.0) throw PreconditionViolated("bp_threshold: resolution must be positive");
    auto probe = [&](double eps) {
        Constellation c(0, p.L1 - 1, p.L2, eps, delta, 1.0);
        return run_de(c, p, all_in_range_sections(c), SuccessSpec::all_active(), caps).converged;
    };
    const auto b = bisect(probe, resolution);
    return {b.midpoint(), b.lo, b.hi, b.probes};
}

ReferenceChain1D::ReferenceChain1D(int dl, int dr, int L1, int gamma1, double epsilon)
    : dl_(dl), dr_(dr), L1_(L1), gamma1_(gamma1), epsilon_(epsilon),
      x_(L1, 1.0), y_(L1 + gamma1 - 1, 0.0) {}

void ReferenceChain1D::step() {
    auto x_at = [&](int i) { return (i < 0 || i >= L1_) ? 0.0 : x_[i]; };
    const int n_cn = static_cast<int>(y_.size());
    for (int p = 0; p < n_cn; ++p) {
        double sum = 0.0;
        for (int k = 0; k < gamma1_; ++k) sum += x_at(p - k);
        y_[p] = 1.0 - powi(1.0 - clamp01(sum / gamma1_), dr_ - 1);
    }
    double chg = 0.0;
    for (int i = 0; i < L1_; ++i) {
        double sum = 0.0;
        for (int k = 0; k < gamma1_; ++k) sum += y_[i + k];
        const double v = epsilon_ * powi(clamp01(sum / gamma1_), dl_ - 1);
        chg = std::max(chg, std::abs(v - x_[i]));
        x_[i] = v;
    }
    last_change_ = chg;
}

double ReferenceChain1D::max_value() const {
    return *std::max_element(x_.begin(), x_.end());
}

std::vector<std::vector<double>> de_1d_reference(int dl, int dr, int L1, int gamma1,
                                                 double epsilon, int iterations) {
    ReferenceChain1D chain(dl, dr, L1, gamma1, epsilon);
    std::vector<std::vector<double>> snapshots;
    snapshots.reserve(iterations + 1);
    snapshots.push_back(chain.values());
    for (int l = 0; l < iterations; ++l) {
        chain.step();
        snapshots.push_back(chain.values());
    }
    return snapshots;
}

void constellation_csv(std::ostream& out, const Constellation& c) {
    out << "i,j,x\n";
    for (int i = c.i_min(); i <= c.i_max(); ++i)
        for (int j = 0; j < c.segments(); ++j)
            out << i << ',' << j << ',' << c.value(i, j) << '\n';
}

} // namespace mdsc
