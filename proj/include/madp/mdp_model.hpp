#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "madp/rng.hpp"
#include "madp/state_space.hpp"
#include "madp/value_table.hpp"

namespace madp {

/// Problem-encoded action payload. Position in the actions() list, not the
/// code value, is the tie-break index.
using Action = std::int32_t;

struct Outcome {
    StateVector next;
    double prob;
};

/// Transition law for (t, s, a). Exact mode enumerates the full next-state
/// distribution; sampled mode draws one information outcome and applies the
/// transition function. Kernels advertise which modes they support.
class TransitionKernel {
public:
    virtual ~TransitionKernel() = default;

    virtual bool has_exact() const = 0;
    virtual bool has_sampling() const = 0;

    /// Fills `out` with (next state, probability) pairs; probabilities are
    /// nonnegative and sum to 1. Next states may repeat when distinct
    /// information outcomes collapse to the same state.
    virtual void outcomes(int t, const StateVector& s, Action a, std::vector<Outcome>& out) const;

    virtual StateVector sample(int t, const StateVector& s, Action a, RngStream& rng) const;
};

/// Finite-horizon MDP: state box, per-state action lists, transition
/// kernel, stage and terminal contributions with declared bounds.
/// Immutable after construction; safe to share across threads.
class MdpModel {
public:
    virtual ~MdpModel() = default;

    int horizon() const { return horizon_; }
    const StateSpace& states() const { return states_; }
    const TransitionKernel& kernel() const { return *kernel_; }

    /// Declared bounds: c_lo <= C_t(s,a) <= c_hi and c_lo <= C_T(s) <= c_hi.
    double contribution_lo() const { return c_lo_; }
    double contribution_hi() const { return c_hi_; }

    /// Deterministic action list for (t, s); nonempty for every t < T.
    virtual void actions(int t, const StateVector& s, std::vector<Action>& out) const = 0;

    virtual double contribution(int t, const StateVector& s, Action a) const = 0;
    virtual double terminal_contribution(const StateVector& s) const = 0;

    virtual StateVector start_state() const { return states_.lower_corner(); }

    /// Set when every (t, s) has the same number of actions in a stable
    /// order; required by state-action (Q) tables.
    virtual std::optional<int> uniform_action_count() const { return std::nullopt; }

protected:
    MdpModel(int horizon, StateSpace states, std::unique_ptr<TransitionKernel> kernel, double c_lo,
             double c_hi);

private:
    int horizon_;
    StateSpace states_;
    std::unique_ptr<TransitionKernel> kernel_;
    double c_lo_, c_hi_;
};

/// Applies one step of the dynamic-programming recursion at (t, s):
/// C_T(s) at t = T, otherwise max over actions of
/// C_t(s,a) + sum_s' P(s'|t,s,a) V_{t+1}(s'). Ties break toward the lowest
/// action index. Requires an exact kernel for t < T.
double bellman_backup(const MdpModel& model, const ValueTable& v, int t, const StateVector& s);

/// bellman_backup plus the maximizing action and its list position.
struct BackupResult {
    double value;
    Action action;
    int action_pos;
};
BackupResult bellman_backup_argmax(const MdpModel& model, const ValueTable& v, int t,
                                   const StateVector& s);

/// State space of state-action tables: the model's box with an appended
/// action-position dimension. Requires a uniform action count.
StateSpace state_action_space(const MdpModel& model);

/// Exact state-action backup: C_t(s,a) + sum_s' P(s') max_a' Q_{t+1}(s',a').
/// `q` is a table over state_action_space(model); terminal slice holds
/// C_T(s) replicated across actions.
double q_backup(const MdpModel& model, const ValueTable& q, int t, const StateVector& s,
                int action_pos);

/// Largest Q_t(s, a) over the action dimension.
double q_max(const MdpModel& model, const ValueTable& q, int t, const StateVector& s);

/// State-value table induced by a state-action table: max over actions.
ValueTable q_induced_values(const MdpModel& model, const ValueTable& q);

enum class ObservationForm {
    /// Expectation computed exactly from the kernel; the observation noise
    /// is identically zero and the result equals bellman_backup.
    ExactExpectation,
    /// One-draw unbiased estimate on the state-action form: `s` is a state
    /// in state_action_space(model) (state coords + action position) and
    /// `v` a table over that space.
    QSample,
};

double sample_observation(const MdpModel& model, const ValueTable& v, int t, const StateVector& s,
                          ObservationForm form, RngStream& rng);

/// Spot-check that sampled (t, s, a) contributions and terminal values
/// respect the declared bounds; throws ModelError on a violation.
void validate_contribution_bounds(const MdpModel& model, int samples, RngStream& rng);

} // namespace madp
