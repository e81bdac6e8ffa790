#ifndef MDSC_ERRORS_HPP
#define MDSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdsc {

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// T > 0 with gamma2 = 1: there are no off-segment sections to couple to.
struct DegenerateCoupling : PreconditionViolated {
    using PreconditionViolated::PreconditionViolated;
};

// A window failed to drive its targeted section below delta (stall or
// iteration cap); signals epsilon above the windowed threshold.
struct WindowDecodeFailure : std::runtime_error {
    WindowDecodeFailure(std::string msg, int tvn_i, int tvn_j, long iterations_used)
        : std::runtime_error(std::move(msg)), tvn_i(tvn_i), tvn_j(tvn_j), iterations_used(iterations_used) {}
    int tvn_i;
    int tvn_j;
    long iterations_used;
};

struct EmptySpace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SamplingExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace mdsc

#endif
