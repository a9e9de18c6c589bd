#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "madp/mdp_model.hpp"
#include "madp/partial_order.hpp"

namespace madp::problems {

/// Action-space statistics as reported per family: a fixed count for
/// stopping/glycemic, mean and max over states for storage.
struct ActionSpaceStats {
    bool fixed = true;
    std::int64_t fixed_count = 0;
    double mean = 0.0;
    std::int64_t max = 0;
};

struct InstanceStats {
    std::string label;
    std::int64_t state_count = 0;
    /// Value-table cells the family's reference tables count: decision
    /// epochs times states for stopping (the terminal slice is identically
    /// zero), all horizon+1 slices otherwise.
    std::int64_t effective_cells = 0;
};

struct BuiltInstance {
    std::shared_ptr<const MdpModel> model;
    PartialOrderSpec order = PartialOrderSpec::componentwise();
    /// Worst-policy anchor for percent-of-optimal (flagged in outputs).
    double percent_baseline = 0.0;
    /// Loose but valid table bounds for solver configs.
    double v_lo = 0.0;
    double v_hi = 1.0;
    InstanceStats stats;
};

/// Stable public instance labels: R3-R7 (stopping), S1-S2 (storage),
/// G1-G2 (glycemic).
std::vector<std::string> instance_labels();

bool is_valid_label(const std::string& label);

/// Builds a benchmark instance by label, optionally at a reduced scale.
/// Scale k: stopping boxes become [0,k]^n; storage gets R in [0,k] and the
/// other ranges cut to width k-1; glycemic ranges are cut to width k-1.
BuiltInstance build_instance(const std::string& label, std::optional<int> scale = std::nullopt);

/// Computes the action-space statistics (enumerating states for storage).
ActionSpaceStats action_space_stats(const std::string& label, const BuiltInstance& instance);

/// Published per-label reference statistics used by `validate`.
struct ReferenceStats {
    std::int64_t state_count;
    std::int64_t effective_cells;
    std::int64_t action_fixed; // 0 for storage
    std::int64_t action_mean_rounded;
    std::int64_t action_max;
};
ReferenceStats reference_stats(const std::string& label);

} // namespace madp::problems
