#pragma once

#include <cstdint>
#include <optional>

#include "madp/mdp_model.hpp"
#include "madp/value_table.hpp"

namespace madp {

/// Seeded Monte-Carlo estimate of a greedy policy's expected total
/// contribution from the start state.
struct EvalReport {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t paths = 0;
    std::uint64_t seed = 0;
    std::optional<double> percent_of_optimal;
    std::optional<double> baseline;
};

/// argmax over actions(t, s) of C_t(s,a) + E[V_{t+1}]; ties toward the
/// lowest action index. Requires an exact kernel and t < T.
Action greedy_action(const MdpModel& model, const ValueTable& v, int t, const StateVector& s);

struct SimOptions {
    std::int64_t paths = 1000;
    std::uint64_t seed = 0;
    /// Paths use dedicated RNG substreams and accumulate into per-path
    /// slots, so the result is identical for any thread count.
    int threads = 1;
};

/// Simulates `paths` independent trajectories from the model's start state
/// acting greedily with respect to v, summing stage contributions plus the
/// terminal contribution.
EvalReport simulate_policy_value(const MdpModel& model, const ValueTable& v,
                                 const SimOptions& options);

/// Simulated policy value rebased between `baseline` (the instance's
/// declared worst-policy anchor) and the optimal start-state value:
/// 100 * (mean - baseline) / (V*_0(S_0) - baseline).
EvalReport optimality_percent(const MdpModel& model, const ValueTable& v,
                              const ValueTable& v_star, const SimOptions& options,
                              double baseline);

} // namespace madp
