#ifndef MDSC_WINDOW_HPP
#define MDSC_WINDOW_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mdsc/constellation.hpp"
#include "mdsc/de.hpp"
#include "mdsc/params.hpp"

namespace mdsc {

/// Vector of per-segment window sizes [W_0, ..., W_{L2-1}]. W_0 applies to
/// the targeted section's own segment (the vector is cyclically shifted onto
/// the target), so W_0 >= 1.
struct WindowSpec {
    std::vector<int> sizes;

    WindowSpec() = default;
    explicit WindowSpec(std::vector<int> s);

    int complexity() const;   // s(W), recomputed
    int max_size() const;
    std::string to_string() const;   // comma-separated, CLI form

    friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
    friend auto operator<=>(const WindowSpec& a, const WindowSpec& b) { return a.sizes <=> b.sizes; }
};

WindowSpec window_spec_from_string(const std::string& csv);

/// A window configuration: the section set over which BP runs for one
/// decoding step. Segment (j_t + r) mod L2 carries positions
/// i_t .. i_t + W_r - 1.
struct WindowConfiguration {
    WindowSpec spec;
    SectionIndex tvn;

    std::vector<SectionIndex> sections(int L2) const;
};

enum class ProcessingOrder { natural, reverse, random };

const char* to_string(ProcessingOrder o);
ProcessingOrder processing_order_from_string(const std::string& s);

/// Position-major processing schedule: all of position i is handled before
/// any section of position i+1; sigma fixes the per-position segment order.
struct DecodeSchedule {
    std::vector<int> sigma;               // permutation of [L2]
    std::vector<SectionIndex> targets;    // L1*L2 entries, position-major
    ProcessingOrder order = ProcessingOrder::natural;
    std::uint64_t seed = 0;               // used by the random order
};

DecodeSchedule make_schedule(int L1, int L2, ProcessingOrder order, std::uint64_t seed = 0);

struct IterationProfile {
    struct Entry {
        int t;
        int i;
        int j;
        long iterations;
    };
    std::vector<Entry> per_wc;
    double average = 0.0;     // arithmetic mean of per_wc
    double epsilon = 0.0;
    double delta = 0.0;
    WindowSpec spec;
    ProcessingOrder order = ProcessingOrder::natural;
    std::uint64_t seed = 0;
    bool failed = false;      // set when a window could not reach delta
    SectionIndex failed_tvn{};

    void finalize();          // recomputes average
};

struct WindowCaps {
    long max_window_iters = 10000;
    double tol_fp = 1e-10;
    Exec exec = Exec::serial;
};

/// One de_step restricted to the window's in-range sections; all other
/// sections are bit-identical.
Constellation window_step(const Constellation& z, const WindowConfiguration& wc,
                          const EnsembleParams& p, Exec exec = Exec::serial);

/// Runs BP over one window until the targeted section reaches delta, then
/// writes back only the targeted section's value into the global
/// constellation. Returns the iteration count. Throws WindowDecodeFailure on
/// a fixed point above delta or on the iteration cap.
long decode_window(Constellation& global, const WindowConfiguration& wc,
                   const EnsembleParams& p, double delta, const WindowCaps& caps = {});

/// Processes every in-range section once, window by window, in schedule
/// order. On failure the profile is returned with `failed` set and the
/// entries processed so far.
IterationProfile decode_chain(const EnsembleParams& p, const WindowSpec& spec,
                              const DecodeSchedule& schedule, double epsilon, double delta,
                              const WindowCaps& caps = {});

/// Boundary-pessimistic window at target (0,0): positions behind the window
/// frozen at delta, everything ahead and the uncovered segments frozen at 1.
Constellation worst_case_constellation(const WindowSpec& spec, const EnsembleParams& p,
                                       double epsilon, double delta);

/// Largest epsilon for which the boundary-pessimistic window drives its
/// targeted section to at most delta.
ThresholdResult worst_case_threshold(const WindowSpec& spec, const EnsembleParams& p,
                                     double delta = 1e-12, double resolution = 1e-5,
                                     const DeCaps& caps = {});

// Iterations the boundary-pessimistic window needs to reach delta at a given
// epsilon (must be below its threshold).
long worst_case_iterations(const WindowSpec& spec, const EnsembleParams& p,
                           double epsilon, double delta, const WindowCaps& caps = {});

/// Largest epsilon for which the full scheduled chain decodes every targeted
/// section to at most delta.
ThresholdResult wc_threshold(const WindowSpec& spec, const EnsembleParams& p,
                             const DecodeSchedule& schedule, double delta = 1e-12,
                             double resolution = 1e-5, const WindowCaps& caps = {});

} // namespace mdsc

#endif
