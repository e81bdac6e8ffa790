#include "mdsc/serialize.hpp"

#include <cstdio>
#include <ostream>

#include "mdsc/errors.hpp"

namespace mdsc {

double sig6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::strtod(buf, nullptr);
}

std::string format6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string format_threshold4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

nlohmann::json to_json(const EnsembleParams& p) {
    nlohmann::json j{{"dl", p.dl},     {"dr", p.dr},         {"L1", p.L1}, {"gamma1", p.gamma1},
                     {"L2", p.L2},     {"gamma2", p.gamma2}, {"T", p.T}};
    if (p.M) j["M"] = *p.M;
    return j;
}

nlohmann::json to_json(const ThresholdResult& r) {
    return nlohmann::json{{"threshold", sig6(r.threshold)},
                          {"threshold_4dp", format_threshold4(r.threshold)},
                          {"bracket", {sig6(r.bracket_lo), sig6(r.bracket_hi)}},
                          {"probes", r.probes}};
}

nlohmann::json to_json(const DEOutcome& o, const EnsembleParams& p, double epsilon) {
    return nlohmann::json{{"params", to_json(p)},
                          {"epsilon", sig6(epsilon)},
                          {"iterations", o.iterations},
                          {"converged", o.converged},
                          {"stall", o.stall}};
}

nlohmann::json to_json(const IterationProfile& profile) {
    nlohmann::json j{{"epsilon", sig6(profile.epsilon)},
                     {"delta", profile.delta},
                     {"window", profile.spec.to_string()},
                     {"order", to_string(profile.order)},
                     {"seed", profile.seed},
                     {"windows", profile.per_wc.size()},
                     {"average_iterations", sig6(profile.average)},
                     {"failed", profile.failed}};
    if (profile.failed) j["failed_tvn"] = {profile.failed_tvn.i, profile.failed_tvn.j};
    return j;
}

nlohmann::json to_json(const SearchReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.all)
        entries.push_back({{"window", e.spec.to_string()},
                           {"threshold", sig6(e.threshold)},
                           {"resolution", e.resolution}});
    nlohmann::json ties = nlohmann::json::array();
    for (const auto& w : report.ties) ties.push_back(w.to_string());
    return nlohmann::json{{"best", report.best.to_string()},
                          {"best_threshold", sig6(report.best_threshold)},
                          {"best_threshold_4dp", format_threshold4(report.best_threshold)},
                          {"resolution", report.resolution},
                          {"delta", report.delta},
                          {"ties", ties},
                          {"candidates", entries}};
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j{{"subcommand", subcommand},
                     {"version", MDSC_VERSION},
                     {"arguments", arguments},
                     {"duration_ms", sig6(duration_ms)}};
    if (seeded) j["seed"] = seed;
    return j;
}

std::vector<long long> parse_sweep(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        // single value
        return {std::stoll(text)};
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw PreconditionViolated("sweep: expected start:stop:step, got '" + text + "'");
    const long long start = std::stoll(text.substr(0, c1));
    const long long stop = std::stoll(text.substr(c1 + 1, c2 - c1 - 1));
    std::string step = text.substr(c2 + 1);
    if (step.empty()) throw PreconditionViolated("sweep: empty step");

    std::vector<long long> out;
    if (step[0] == 'x') {
        const long long factor = std::stoll(step.substr(1));
        if (factor < 2) throw PreconditionViolated("sweep: geometric factor must be >= 2");
        for (long long v = start; v <= stop; v *= factor) out.push_back(v);
    } else {
        const long long inc = std::stoll(step[0] == '+' ? step.substr(1) : step);
        if (inc < 1) throw PreconditionViolated("sweep: step must be positive");
        for (long long v = start; v <= stop; v += inc) out.push_back(v);
    }
    if (out.empty()) throw PreconditionViolated("sweep: empty range '" + text + "'");
    return out;
}

void write_profile_csv(std::ostream& out, const IterationProfile& profile,
                       const RunManifest& manifest) {
    nlohmann::json header = to_json(profile);
    header["manifest"] = manifest.to_json();
    out << "# " << header.dump() << "\n";
    out << "t,i,j,iterations\n";
    for (const auto& e : profile.per_wc)
        out << e.t << ',' << e.i << ',' << e.j << ',' << e.iterations << '\n';
}

} // namespace mdsc
