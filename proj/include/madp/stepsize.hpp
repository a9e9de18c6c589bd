#pragma once

#include <cstdint>
#include <vector>

#include "madp/errors.hpp"

namespace madp {

/// Generalized harmonic smoothing weight: alpha(k) = a / (a + k - 1) on the
/// k-th visit, a > 0. Always in (0, 1]; over successive visits the weights
/// sum to infinity while their squares stay summable.
double stepsize_value(double a, std::int64_t visit_count);

/// Harmonic stepsize rule with its per-cell visit-count store. Cells are
/// (t, flat) where flat indexes states (or state-action pairs).
class StepsizeRule {
public:
    StepsizeRule(double a, int horizon, std::int64_t cells_per_slice)
        : a_(a), cells_(cells_per_slice),
          n_(static_cast<std::size_t>((horizon + 1) * cells_per_slice), 0) {
        if (!(a > 0.0)) throw UsageError("StepsizeRule: parameter a must be positive");
    }

    double parameter() const { return a_; }

    /// Records a visit of (t, flat) and returns the smoothing weight for it.
    double observe(int t, std::int64_t flat) {
        std::int64_t& n = n_[static_cast<std::size_t>(t * cells_ + flat)];
        return stepsize_value(a_, ++n);
    }

    std::int64_t visits(int t, std::int64_t flat) const {
        return n_[static_cast<std::size_t>(t * cells_ + flat)];
    }

private:
    double a_;
    std::int64_t cells_;
    std::vector<std::int64_t> n_;
};

inline double stepsize_value(double a, std::int64_t visit_count) {
    if (!(a > 0.0)) throw UsageError("stepsize_value: parameter a must be positive");
    if (visit_count < 1) throw UsageError("stepsize_value: visit count must be >= 1");
    return a / (a + static_cast<double>(visit_count) - 1.0);
}

} // namespace madp
