#ifndef MDSC_SERIALIZE_HPP
#define MDSC_SERIALIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdsc/de.hpp"
#include "mdsc/optimizer.hpp"
#include "mdsc/params.hpp"
#include "mdsc/window.hpp"

namespace mdsc {

// Floating output convention: six significant digits everywhere, thresholds
// additionally at four decimals.
double sig6(double x);
std::string format6(double x);
std::string format_threshold4(double x);

nlohmann::json to_json(const EnsembleParams& p);
nlohmann::json to_json(const ThresholdResult& r);
nlohmann::json to_json(const DEOutcome& o, const EnsembleParams& p, double epsilon);
nlohmann::json to_json(const IterationProfile& profile);
nlohmann::json to_json(const SearchReport& report);

/// Provenance record embedded in every output document; re-running the same
/// invocation reproduces the result part bit-exactly for deterministic
/// subcommands.
struct RunManifest {
    std::string subcommand;
    nlohmann::json arguments;   // full resolved parameter set
    std::uint64_t seed = 0;
    bool seeded = false;
    double duration_ms = 0.0;

    nlohmann::json to_json() const;
};

// A sweep of the form "start:stop:x2" (geometric) or "start:stop:+4" /
// "start:stop:4" (arithmetic), endpoints inclusive.
std::vector<long long> parse_sweep(const std::string& text);

// Profile CSV: '#'-prefixed JSON header record, then t,i,j,iterations rows.
void write_profile_csv(std::ostream& out, const IterationProfile& profile,
                       const RunManifest& manifest);

} // namespace mdsc

#endif
