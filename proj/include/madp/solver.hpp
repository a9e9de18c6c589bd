#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "madp/mdp_model.hpp"
#include "madp/monotone.hpp"
#include "madp/partial_order.hpp"
#include "madp/rng.hpp"
#include "madp/stepsize.hpp"
#include "madp/value_table.hpp"

namespace madp {

struct SolverConfig {
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;
    double epsilon = 1.0;     // exploration probability, fixed for the run
    double stepsize_a = 20.0; // harmonic parameter
    double v_lo = 0.0;        // value bounds; observations are clamped here
    double v_hi = 1.0;
    std::vector<std::int64_t> checkpoints; // strictly increasing, within [1, iterations]
    int action_table_cap = 8;              // largest action set q-learning accepts

    void validate() const;
};

struct TraceRecord {
    std::int64_t iteration = 0;
    double elapsed_s = 0.0;
    std::optional<double> supnorm_to_reference;
    std::optional<double> policy_metric;
};

/// Checkpointed convergence history. Always starts with an iteration-0
/// record for the initialization; iterations are strictly increasing.
struct SolverTrace {
    std::vector<TraceRecord> records;
};

struct SolverResult {
    ValueTable table;
    SolverTrace trace;
};

/// Everything one (iteration, epoch) update did; `table` references the
/// solver's working table and is valid only during the callback.
struct IterationEvent {
    std::int64_t iteration;
    int t;
    StateVector state;
    std::int64_t state_flat;
    double raw_observation; // clamped to [v_lo, v_hi]
    double alpha;
    double smoothed; // z, the value written at the visited state
    Action action_taken;
    StateVector next_state;
    const ValueTable& table;
};
using IterationObserver = std::function<void(const IterationEvent&)>;

/// Evaluated at each checkpoint; the result lands in the trace as
/// policy_metric. For q-learning the table passed is the induced
/// state-value table.
using CheckpointMetric = std::function<double(const ValueTable&, std::int64_t iteration)>;

/// Exact backward induction: V_T = C_T, then V_t = one backup per state
/// down to t = 0. Requires an exact kernel. Deterministic.
ValueTable solve_bdp(const MdpModel& model);

/// Iterative solver sweeping one trajectory per iteration, smoothing exact
/// observations into the visited states and projecting each updated slice
/// back onto the monotone cone of the visited state. The initialization is
/// constant v_lo (or `init` if given, which must be monotone and within
/// bounds); the terminal slice is pinned to C_T.
SolverResult run_monotone_adp(const MdpModel& model, const PartialOrderSpec& order,
                              const SolverConfig& config, const ValueTable* reference = nullptr,
                              const ValueTable* init = nullptr,
                              const IterationObserver& observer = {},
                              const CheckpointMetric& metric = {});

/// run_monotone_adp with the projection step removed: the visited state's
/// value becomes the smoothed observation directly.
SolverResult run_avi(const MdpModel& model, const SolverConfig& config,
                     const ValueTable* reference = nullptr, const ValueTable* init = nullptr,
                     const IterationObserver& observer = {}, const CheckpointMetric& metric = {});

/// Tabular state-action learning over (t, s, a) with the same visit-count
/// stepsize machinery keyed on state-action pairs and expectations computed
/// exactly. Returns a table over state_action_space(model). `reference`,
/// if given, is a state-value table compared against the induced values.
/// Refuses models without a uniform action count <= config.action_table_cap.
SolverResult run_qlearning(const MdpModel& model, const SolverConfig& config,
                           const ValueTable* reference = nullptr,
                           const IterationObserver& observer = {},
                           const CheckpointMetric& metric = {});

/// With probability epsilon picks a uniform action, otherwise the greedy
/// action under v (ties toward the lowest index); samples the transition.
std::pair<Action, StateVector> epsilon_greedy_step(const MdpModel& model, const ValueTable& v,
                                                   int t, const StateVector& s, double epsilon,
                                                   RngStream& rng);

} // namespace madp
