#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "madp/partial_order.hpp"
#include "madp/state_space.hpp"

namespace madp {

/// One ordered pair (lower ⪯ upper) whose values invert the required
/// monotonicity: V(lower) > V(upper) by `gap`.
struct ViolationPair {
    std::int64_t lower;
    std::int64_t upper;
    double gap;
};

struct ViolationReport {
    std::vector<ViolationPair> pairs; // recorded up to the caller's cap
    std::int64_t total_count = 0;     // all violations found, recorded or not
    double max_gap = 0.0;
    bool empty() const { return total_count == 0; }
};

enum class CheckMode {
    /// Scan every comparable pair (enumerated through upper cones, so still
    /// far cheaper than all |S|^2 pairs).
    Exhaustive,
    /// Scan immediate-neighbor pairs only. Detection-complete on box
    /// lattices: any violating comparable pair implies a violating
    /// neighbor step along a chain between the two states.
    NeighborPairs,
};

/// Reports all comparable pairs violating monotonicity of the slice under
/// the order. `max_recorded` caps the pairs stored in the report;
/// total_count and max_gap always cover everything scanned. `min_gap`
/// ignores inversions at or below the given size: exact tables built from
/// long expectation sums carry ~1e-13 of roundoff on tied plateaus, which
/// a strict scan would misreport as structural violations.
ViolationReport check_monotone(const PartialOrderSpec& order, const StateSpace& space,
                               std::span<const double> slice, CheckMode mode,
                               std::size_t max_recorded = static_cast<std::size_t>(-1),
                               double min_gap = 0.0);

/// Mode chosen by size: exhaustive up to 1e5 states, neighbor pairs beyond.
ViolationReport check_monotone(const PartialOrderSpec& order, const StateSpace& space,
                               std::span<const double> slice);

/// Monotonicity-preserving projection. Fixes slice(s_ref) = z_ref, raises
/// states above s_ref to at least z_ref, lowers states below s_ref to at
/// most z_ref, leaves incomparable states untouched. Mutates the slice in
/// place; if the input slice is monotone the output is monotone, and it is
/// the Euclidean-closest such slice fixing z_ref at s_ref.
void monotone_project(const PartialOrderSpec& order, const StateSpace& space,
                      std::span<double> slice, const StateVector& s_ref, double z_ref);

} // namespace madp
