#ifndef MDSC_PARAMS_HPP
#define MDSC_PARAMS_HPP

#include <optional>
#include <string>

namespace mdsc {

/// Grid coordinate of a section. The position i may be negative (virtual
/// boundary sections); the segment j is always reduced modulo L2 by the
/// accessors that consume it, never the position.
struct SectionIndex {
    int i = 0;
    int j = 0;
    friend bool operator==(const SectionIndex&, const SectionIndex&) = default;
};

inline int wrap_segment(int j, int segments) {
    int r = j % segments;
    return r < 0 ? r + segments : r;
}

/// Parameters of the coupled ensemble: node degrees, coupling lengths and
/// depths along both dimensions, and the cross-segment edge density.
/// Validation happens at construction; everything downstream assumes a
/// valid object.
struct EnsembleParams {
    int dl = 0;       // VN degree
    int dr = 0;       // CN degree
    int L1 = 0;       // 1D coupling length (positions)
    int gamma1 = 0;   // 1D coupling depth
    int L2 = 1;       // MD coupling length (segments, cyclic)
    int gamma2 = 1;   // MD coupling depth
    double T = 0.0;   // cross-segment edge density
    std::optional<int> M;  // optional section size carried from the params file

    EnsembleParams() = default;
    EnsembleParams(int dl, int dr, int L1, int gamma1,
                   int L2 = 1, int gamma2 = 1, double T = 0.0,
                   std::optional<int> M = std::nullopt);

    // Throws PreconditionViolated / DegenerateCoupling on invalid values.
    void validate() const;

    // CNs per section for a given section size; throws when dr does not
    // divide M*dl.
    int cns_per_section(int M) const;

    friend bool operator==(const EnsembleParams&, const EnsembleParams&) = default;
};

// Strict parse of the params JSON document {dl, dr, L1, gamma1, L2, gamma2,
// T[, M]}; unknown keys are rejected.
EnsembleParams params_from_json_text(const std::string& text);
EnsembleParams params_from_json_file(const std::string& path);

} // namespace mdsc

#endif
