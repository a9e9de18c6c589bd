#include "madp/mdp_model.hpp"

#include <cmath>
#include <string>

namespace madp {

void TransitionKernel::outcomes(int, const StateVector&, Action, std::vector<Outcome>&) const {
    throw UnsupportedModeError("kernel does not support exact enumeration");
}

StateVector TransitionKernel::sample(int, const StateVector&, Action, RngStream&) const {
    throw UnsupportedModeError("kernel does not support sampling");
}

MdpModel::MdpModel(int horizon, StateSpace states, std::unique_ptr<TransitionKernel> kernel,
                   double c_lo, double c_hi)
    : horizon_(horizon), states_(std::move(states)), kernel_(std::move(kernel)), c_lo_(c_lo),
      c_hi_(c_hi) {
    if (horizon_ < 0) throw UsageError("MdpModel: negative horizon");
    if (!kernel_) throw UsageError("MdpModel: null kernel");
    if (!(c_lo_ <= c_hi_)) throw UsageError("MdpModel: contribution bounds inverted");
}

namespace {

thread_local std::vector<Action> t_actions;
thread_local std::vector<Outcome> t_outcomes;

void check_time(const MdpModel& model, int t) {
    if (t < 0 || t > model.horizon()) {
        throw UsageError("time " + std::to_string(t) + " outside [0," +
                         std::to_string(model.horizon()) + "]");
    }
}

} // namespace

BackupResult bellman_backup_argmax(const MdpModel& model, const ValueTable& v, int t,
                                   const StateVector& s) {
    check_time(model, t);
    if (t == model.horizon()) {
        return {model.terminal_contribution(s), Action{-1}, -1};
    }
    if (!model.kernel().has_exact()) {
        throw UnsupportedModeError("bellman_backup: exact kernel required");
    }
    std::vector<Action> actions;
    std::swap(actions, t_actions); // reuse capacity, stay reentrant
    std::vector<Outcome> outcomes;
    std::swap(outcomes, t_outcomes);

    model.actions(t, s, actions);
    if (actions.empty()) {
        throw ModelError("empty action set at t=" + std::to_string(t) + " s=" + s.to_string());
    }
    BackupResult best{-std::numeric_limits<double>::infinity(), Action{-1}, -1};
    for (int pos = 0; pos < static_cast<int>(actions.size()); ++pos) {
        const Action a = actions[static_cast<std::size_t>(pos)];
        model.kernel().outcomes(t, s, a, outcomes);
        double exp_next = 0.0;
        for (const Outcome& o : outcomes) {
            exp_next += o.prob * v.at(t + 1, o.next);
        }
        const double total = model.contribution(t, s, a) + exp_next;
        if (total > best.value) {
            best = {total, a, pos};
        }
    }
    std::swap(actions, t_actions);
    std::swap(outcomes, t_outcomes);
    return best;
}

double bellman_backup(const MdpModel& model, const ValueTable& v, int t, const StateVector& s) {
    return bellman_backup_argmax(model, v, t, s).value;
}

StateSpace state_action_space(const MdpModel& model) {
    const std::optional<int> count = model.uniform_action_count();
    if (!count || *count <= 0) {
        throw UnsupportedModeError("state-action table requires a uniform action count");
    }
    return model.states().appended(0, *count - 1);
}

double q_backup(const MdpModel& model, const ValueTable& q, int t, const StateVector& s,
                int action_pos) {
    check_time(model, t);
    if (t == model.horizon()) return model.terminal_contribution(s);
    if (!model.kernel().has_exact()) {
        throw UnsupportedModeError("q_backup: exact kernel required");
    }
    std::vector<Action> actions;
    std::swap(actions, t_actions);
    std::vector<Outcome> outcomes;
    std::swap(outcomes, t_outcomes);

    model.actions(t, s, actions);
    if (action_pos < 0 || action_pos >= static_cast<int>(actions.size())) {
        throw UsageError("q_backup: action position out of range");
    }
    const Action a = actions[static_cast<std::size_t>(action_pos)];
    model.kernel().outcomes(t, s, a, outcomes);
    double exp_next = 0.0;
    for (const Outcome& o : outcomes) {
        exp_next += o.prob * q_max(model, q, t + 1, o.next);
    }
    const double total = model.contribution(t, s, a) + exp_next;
    std::swap(actions, t_actions);
    std::swap(outcomes, t_outcomes);
    return total;
}

double q_max(const MdpModel&, const ValueTable& q, int t, const StateVector& s) {
    const StateSpace& qs = q.space();
    const int a_dim = qs.dims() - 1;
    const std::int64_t base = qs.index_of(s.appended(qs.lo(a_dim)));
    double best = q.at(t, base);
    for (std::int64_t k = 1; k < qs.extent(a_dim); ++k) {
        best = std::max(best, q.at(t, base + k));
    }
    return best;
}

ValueTable q_induced_values(const MdpModel& model, const ValueTable& q) {
    ValueTable v(q.horizon(), model.states());
    for (int t = 0; t <= q.horizon(); ++t) {
        model.states().for_each_state([&](const StateVector& s, std::int64_t flat) {
            v.at(t, flat) = q_max(model, q, t, s);
        });
    }
    return v;
}

double sample_observation(const MdpModel& model, const ValueTable& v, int t, const StateVector& s,
                          ObservationForm form, RngStream& rng) {
    if (form == ObservationForm::ExactExpectation) {
        if (v.space().dims() != model.states().dims()) {
            throw UnsupportedModeError(
                "exact-expectation observation requires a state-value table");
        }
        return bellman_backup(model, v, t, s);
    }
    // Q-sample: s lives in the enlarged state-action space.
    const StateSpace qs = state_action_space(model);
    if (!(v.space() == qs) || s.size() != qs.dims()) {
        throw UnsupportedModeError(
            "q-sample observation requires a state-action table and enlarged state");
    }
    if (!model.kernel().has_sampling()) {
        throw UnsupportedModeError("q-sample observation requires a sampling kernel");
    }
    check_time(model, t);
    if (t == model.horizon()) return model.terminal_contribution(s.without_last());

    const StateVector base = s.without_last();
    const int action_pos = s[s.size() - 1];
    std::vector<Action> actions;
    std::swap(actions, t_actions);
    model.actions(t, base, actions);
    if (action_pos < 0 || action_pos >= static_cast<int>(actions.size())) {
        throw UsageError("sample_observation: action position out of range");
    }
    const Action a = actions[static_cast<std::size_t>(action_pos)];
    std::swap(actions, t_actions);

    const StateVector next = model.kernel().sample(t, base, a, rng);
    return model.contribution(t, base, a) + q_max(model, v, t + 1, next);
}

void validate_contribution_bounds(const MdpModel& model, int samples, RngStream& rng) {
    std::vector<Action> actions;
    for (int i = 0; i < samples; ++i) {
        const std::int64_t flat =
            static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(
                model.states().cardinality())));
        const StateVector s = model.states().state_of(flat);
        const double ct = model.terminal_contribution(s);
        if (ct < model.contribution_lo() || ct > model.contribution_hi()) {
            throw ModelError("terminal contribution " + std::to_string(ct) +
                             " outside declared bounds at s=" + s.to_string());
        }
        if (model.horizon() == 0) continue;
        const int t = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(model.horizon())));
        model.actions(t, s, actions);
        if (actions.empty()) {
            throw ModelError("empty action set at t=" + std::to_string(t) + " s=" + s.to_string());
        }
        const Action a = actions[rng.uniform_below(actions.size())];
        const double c = model.contribution(t, s, a);
        if (c < model.contribution_lo() || c > model.contribution_hi()) {
            throw ModelError("contribution " + std::to_string(c) +
                             " outside declared bounds at t=" + std::to_string(t) +
                             " s=" + s.to_string());
        }
    }
}

} // namespace madp
