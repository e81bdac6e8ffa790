#include "mdsc/window.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mdsc/errors.hpp"
#include "mdsc/rng.hpp"

namespace mdsc {

WindowSpec::WindowSpec(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw PreconditionViolated("window spec: empty size vector");
    if (sizes[0] < 1) throw PreconditionViolated("window spec: W_0 must be >= 1");
    for (int w : sizes)
        if (w < 0) throw PreconditionViolated("window spec: sizes must be nonnegative");
}

int WindowSpec::complexity() const {
    return std::accumulate(sizes.begin(), sizes.end(), 0);
}

int WindowSpec::max_size() const {
    return *std::max_element(sizes.begin(), sizes.end());
}

std::string WindowSpec::to_string() const {
    std::ostringstream ss;
    for (std::size_t r = 0; r < sizes.size(); ++r) {
        if (r) ss << ',';
        ss << sizes[r];
    }
    return ss.str();
}

WindowSpec window_spec_from_string(const std::string& csv) {
    std::vector<int> sizes;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw PreconditionViolated("window spec: bad integer '" + tok + "'");
        sizes.push_back(v);
    }
    return WindowSpec(std::move(sizes));
}

std::vector<SectionIndex> WindowConfiguration::sections(int L2) const {
    if (static_cast<int>(spec.sizes.size()) != L2)
        throw PreconditionViolated("window spec: length must equal L2");
    std::vector<SectionIndex> out;
    out.reserve(spec.complexity());
    for (int r = 0; r < L2; ++r) {
        const int j = wrap_segment(tvn.j + r, L2);
        for (int k = 0; k < spec.sizes[r]; ++k) out.push_back({tvn.i + k, j});
    }
    return out;
}

const char* to_string(ProcessingOrder o) {
    switch (o) {
        case ProcessingOrder::natural: return "natural";
        case ProcessingOrder::reverse: return "reverse";
        case ProcessingOrder::random: return "random";
    }
    return "?";
}

ProcessingOrder processing_order_from_string(const std::string& s) {
    if (s == "natural") return ProcessingOrder::natural;
    if (s == "reverse") return ProcessingOrder::reverse;
    if (s == "random") return ProcessingOrder::random;
    throw PreconditionViolated("unknown processing order '" + s + "'");
}

DecodeSchedule make_schedule(int L1, int L2, ProcessingOrder order, std::uint64_t seed) {
    DecodeSchedule s;
    s.order = order;
    s.seed = seed;
    s.sigma.resize(L2);
    std::iota(s.sigma.begin(), s.sigma.end(), 0);
    if (order == ProcessingOrder::reverse) {
        std::reverse(s.sigma.begin(), s.sigma.end());
    } else if (order == ProcessingOrder::random) {
        auto rng = substream(seed, 0);
        for (int n = L2 - 1; n > 0; --n)
            std::swap(s.sigma[n], s.sigma[rng.below(n + 1)]);
    }
    s.targets.reserve(static_cast<std::size_t>(L1) * L2);
    for (int i = 0; i < L1; ++i)
        for (int j : s.sigma) s.targets.push_back({i, j});
    return s;
}

void IterationProfile::finalize() {
    double sum = 0.0;
    for (const auto& e : per_wc) sum += static_cast<double>(e.iterations);
    average = per_wc.empty() ? 0.0 : sum / static_cast<double>(per_wc.size());
}

Constellation window_step(const Constellation& z, const WindowConfiguration& wc,
                          const EnsembleParams& p, Exec exec) {
    std::vector<SectionIndex> active;
    for (const auto& s : wc.sections(z.segments()))
        if (z.in_range(s.i) && !z.frozen(s.i, s.j)) active.push_back(s);
    return de_step(z, p, active, exec);
}

namespace {

// The window at target i_t only ever reads positions
// [i_t - (gamma1-1), i_t + max(W) + gamma1 - 1]; the window constellation is
// the global one restricted to that band, frozen outside the window set.
// Reads beyond the band hit the known-0 out-of-range convention, which is
// exact at both chain edges.
Constellation window_view(const Constellation& global, const WindowConfiguration& wc,
                          const EnsembleParams& p, std::vector<SectionIndex>& active) {
    const int lo = std::max(global.i_min(), wc.tvn.i - (p.gamma1 - 1));
    const int hi = std::min(global.i_max(), wc.tvn.i + wc.spec.max_size() + p.gamma1 - 1);
    Constellation z(lo, hi, global.segments(), global.epsilon(), global.delta());
    for (int i = lo; i <= hi; ++i)
        for (int j = 0; j < global.segments(); ++j) z.freeze(i, j, global.value(i, j));
    active.clear();
    for (const auto& s : wc.sections(global.segments()))
        if (z.in_range(s.i)) {
            z.set_frozen(s.i, s.j, false);
            active.push_back(s);
        }
    return z;
}

} // namespace

long decode_window(Constellation& global, const WindowConfiguration& wc,
                   const EnsembleParams& p, double delta, const WindowCaps& caps) {
    std::vector<SectionIndex> active;
    Constellation z = window_view(global, wc, p, active);
    z.set_delta(delta);
    DeCaps de_caps{caps.max_window_iters, caps.tol_fp, caps.exec};
    const auto outcome = run_de_bracketed(z, p, active, SuccessSpec::single(wc.tvn), de_caps);
    if (!outcome.converged)
        throw WindowDecodeFailure(
            "window at (" + std::to_string(wc.tvn.i) + "," + std::to_string(wc.tvn.j) +
                ") " + (outcome.stall && outcome.iterations < caps.max_window_iters
                            ? "reached a fixed point above delta"
                            : "hit the iteration cap"),
            wc.tvn.i, wc.tvn.j, outcome.iterations);
    global.value(wc.tvn.i, wc.tvn.j) = outcome.final.value(wc.tvn.i, wc.tvn.j);
    return outcome.iterations;
}

IterationProfile decode_chain(const EnsembleParams& p, const WindowSpec& spec,
                              const DecodeSchedule& schedule, double epsilon, double delta,
                              const WindowCaps& caps) {
    if (static_cast<int>(spec.sizes.size()) != p.L2)
        throw PreconditionViolated("decode_chain: window spec length must equal L2");
    IterationProfile profile;
    profile.epsilon = epsilon;
    profile.delta = delta;
    profile.spec = spec;
    profile.order = schedule.order;
    profile.seed = schedule.seed;

    Constellation global(0, p.L1 - 1, p.L2, epsilon, delta, 1.0);
    int t = 0;
    for (const auto& tvn : schedule.targets) {
        WindowConfiguration wc{spec, tvn};
        try {
            const long iters = decode_window(global, wc, p, delta, caps);
            profile.per_wc.push_back({t, tvn.i, tvn.j, iters});
        } catch (const WindowDecodeFailure&) {
            profile.failed = true;
            profile.failed_tvn = tvn;
            profile.finalize();
            return profile;
        }
        ++t;
    }
    profile.finalize();
    return profile;
}

Constellation worst_case_constellation(const WindowSpec& spec, const EnsembleParams& p,
                                       double epsilon, double delta) {
    if (static_cast<int>(spec.sizes.size()) != p.L2)
        throw PreconditionViolated("worst-case window: spec length must equal L2");
    const int hi = spec.max_size() + p.gamma1 - 1;
    Constellation q(-(p.gamma1 - 1), hi, p.L2, epsilon, delta);
    for (int i = q.i_min(); i < 0; ++i)
        for (int j = 0; j < p.L2; ++j) q.freeze(i, j, delta);
    for (int i = 0; i <= hi; ++i)
        for (int j = 0; j < p.L2; ++j) q.freeze(i, j, 1.0);
    WindowConfiguration wc{spec, {0, 0}};
    for (const auto& s : wc.sections(p.L2)) q.set_frozen(s.i, s.j, false);
    return q;
}

ThresholdResult worst_case_threshold(const WindowSpec& spec, const EnsembleParams& p,
                                     double delta, double resolution, const DeCaps& caps) {
    if (resolution <= 0.0)
        throw PreconditionViolated("worst_case_threshold: resolution must be positive");
    WindowConfiguration wc{spec, {0, 0}};
    auto probe = [&](double eps) {
        Constellation q = worst_case_constellation(spec, p, eps, delta);
        return run_de_bracketed(q, p, wc.sections(p.L2), SuccessSpec::single({0, 0}), caps).converged;
    };
    const auto b = bisect(probe, resolution);
    return {b.midpoint(), b.lo, b.hi, b.probes};
}

long worst_case_iterations(const WindowSpec& spec, const EnsembleParams& p,
                           double epsilon, double delta, const WindowCaps& caps) {
    WindowConfiguration wc{spec, {0, 0}};
    Constellation q = worst_case_constellation(spec, p, epsilon, delta);
    DeCaps de_caps{caps.max_window_iters, caps.tol_fp, caps.exec};
    const auto outcome = run_de_bracketed(q, p, wc.sections(p.L2), SuccessSpec::single({0, 0}), de_caps);
    if (!outcome.converged)
        throw WindowDecodeFailure("worst-case window does not reach delta at epsilon=" +
                                      std::to_string(epsilon),
                                  0, 0, outcome.iterations);
    return outcome.iterations;
}

ThresholdResult wc_threshold(const WindowSpec& spec, const EnsembleParams& p,
                             const DecodeSchedule& schedule, double delta, double resolution,
                             const WindowCaps& caps) {
    if (resolution <= 0.0)
        throw PreconditionViolated("wc_threshold: resolution must be positive");
    auto probe = [&](double eps) {
        return !decode_chain(p, spec, schedule, eps, delta, caps).failed;
    };
    const auto b = bisect(probe, resolution);
    return {b.midpoint(), b.lo, b.hi, b.probes};
}

} // namespace mdsc
