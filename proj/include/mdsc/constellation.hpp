#ifndef MDSC_CONSTELLATION_HPP
#define MDSC_CONSTELLATION_HPP

#include <cassert>
#include <cstdint>
#include <vector>

#include "mdsc/params.hpp"

namespace mdsc {

/// Grid of per-section erasure probabilities x_(i,j), positions i in
/// [i_min, i_max], segments j in [0, L2). Sections referenced outside the
/// position range read as 0 (perfectly known bits) and are implicitly
/// frozen. Frozen in-grid sections keep their value bit-exactly across
/// updates.
class Constellation {
public:
    Constellation(int i_min, int i_max, int segments, double epsilon, double delta = 1e-12,
                  double initial = 1.0)
        : i_min_(i_min), i_max_(i_max), segments_(segments), epsilon_(epsilon), delta_(delta),
          values_(static_cast<std::size_t>(i_max - i_min + 1) * segments, initial),
          frozen_(values_.size(), 0) {
        assert(i_max >= i_min && segments >= 1);
    }

    int i_min() const { return i_min_; }
    int i_max() const { return i_max_; }
    int segments() const { return segments_; }
    double epsilon() const { return epsilon_; }
    double delta() const { return delta_; }
    void set_epsilon(double e) { epsilon_ = e; }
    void set_delta(double d) { delta_ = d; }

    bool in_range(int i) const { return i >= i_min_ && i <= i_max_; }

    // Read with boundary semantics: out-of-range positions are known bits.
    // The segment is reduced modulo L2.
    double at(int i, int j) const {
        if (!in_range(i)) return 0.0;
        return values_[slot(i, wrap_segment(j, segments_))];
    }

    double& value(int i, int j) { return values_[slot(i, wrap_segment(j, segments_))]; }
    double value(int i, int j) const { return values_[slot(i, wrap_segment(j, segments_))]; }

    bool frozen(int i, int j) const {
        if (!in_range(i)) return true;
        return frozen_[slot(i, wrap_segment(j, segments_))] != 0;
    }
    void freeze(int i, int j, double v) {
        auto s = slot(i, wrap_segment(j, segments_));
        values_[s] = v;
        frozen_[s] = 1;
    }
    void set_frozen(int i, int j, bool f) { frozen_[slot(i, wrap_segment(j, segments_))] = f ? 1 : 0; }

    const std::vector<double>& raw() const { return values_; }
    std::vector<double>& raw() { return values_; }

    friend bool operator==(const Constellation&, const Constellation&) = default;

private:
    std::size_t slot(int i, int j) const {
        return static_cast<std::size_t>(i - i_min_) * segments_ + j;
    }

    int i_min_;
    int i_max_;
    int segments_;
    double epsilon_;
    double delta_;
    std::vector<double> values_;
    std::vector<std::uint8_t> frozen_;
};

/// Check-node message grid y_(i,j) produced by the first phase of a flooding
/// iteration; same boundary convention as Constellation.
class MessageGrid {
public:
    MessageGrid() : i_min_(0), i_max_(-1), segments_(1) {}
    void reset(int i_min, int i_max, int segments) {
        i_min_ = i_min;
        i_max_ = i_max;
        segments_ = segments;
        values_.assign(static_cast<std::size_t>(i_max - i_min + 1) * segments, 0.0);
    }
    int i_min() const { return i_min_; }
    int i_max() const { return i_max_; }
    int segments() const { return segments_; }
    double at(int i, int j) const {
        if (i < i_min_ || i > i_max_) return 0.0;
        return values_[static_cast<std::size_t>(i - i_min_) * segments_ + wrap_segment(j, segments_)];
    }
    double& value(int i, int j) {
        return values_[static_cast<std::size_t>(i - i_min_) * segments_ + wrap_segment(j, segments_)];
    }

private:
    int i_min_;
    int i_max_;
    int segments_;
    std::vector<double> values_;
};

} // namespace mdsc

#endif
