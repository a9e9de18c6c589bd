#include "madp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace madp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

void check_terminal_bounds(const MdpModel& model, const SolverConfig& config) {
    bool ok = true;
    model.states().for_each_state([&](const StateVector& s, std::int64_t) {
        const double c = model.terminal_contribution(s);
        if (c < config.v_lo || c > config.v_hi) ok = false;
    });
    if (!ok) {
        throw UsageError("value bounds [" + std::to_string(config.v_lo) + "," +
                         std::to_string(config.v_hi) + "] do not contain the terminal slice");
    }
}

std::string describe_violations(const ViolationReport& report, const StateSpace& space) {
    std::string msg = std::to_string(report.total_count) + " monotonicity violation(s), max gap " +
                      std::to_string(report.max_gap);
    const std::size_t show = std::min<std::size_t>(report.pairs.size(), 3);
    for (std::size_t i = 0; i < show; ++i) {
        msg += "; " + space.state_of(report.pairs[i].lower).to_string() + " > " +
               space.state_of(report.pairs[i].upper).to_string();
    }
    return msg;
}

struct CheckpointState {
    const SolverConfig* config;
    const ValueTable* reference;
    const CheckpointMetric* metric;
    Clock::time_point start;
    SolverTrace trace;
    std::size_t next = 0;

    void record(std::int64_t iteration, const ValueTable& table) {
        TraceRecord rec;
        rec.iteration = iteration;
        rec.elapsed_s = elapsed_seconds(start);
        if (reference) rec.supnorm_to_reference = table.sup_distance(*reference);
        if (*metric) rec.policy_metric = (*metric)(table, iteration);
        trace.records.push_back(std::move(rec));
    }

    bool due(std::int64_t iteration) {
        if (next < config->checkpoints.size() && config->checkpoints[next] == iteration) {
            ++next;
            return true;
        }
        return false;
    }
};

StateVector pick_initial_state(const MdpModel& model, const SolverConfig& config,
                               std::int64_t iteration) {
    // Under pure exploration the initial state is uniform over the space;
    // otherwise trajectories start from the problem's start state.
    if (config.epsilon >= 1.0) {
        RngStream rng = RngStream::derive(config.seed, {stream_tag::kInitialState,
                                                        static_cast<std::uint64_t>(iteration)});
        const std::int64_t flat = static_cast<std::int64_t>(
            rng.uniform_below(static_cast<std::uint64_t>(model.states().cardinality())));
        return model.states().state_of(flat);
    }
    return model.start_state();
}

SolverResult run_adp(const MdpModel& model, const PartialOrderSpec* order,
                     const SolverConfig& config, const ValueTable* reference,
                     const ValueTable* init, const IterationObserver& observer,
                     const CheckpointMetric& metric) {
    config.validate();
    if (!model.kernel().has_exact()) {
        throw UnsupportedModeError("solver requires an exact kernel for observations");
    }
    if (!model.kernel().has_sampling()) {
        throw UnsupportedModeError("solver requires a sampling kernel for trajectories");
    }
    check_terminal_bounds(model, config);

    const int horizon = model.horizon();
    const StateSpace& space = model.states();

    ValueTable table(horizon, space, config.v_lo);
    if (init) {
        if (init->horizon() != horizon || !(init->space() == space)) {
            throw UsageError("custom initialization has the wrong shape");
        }
        table = *init;
        for (int t = 0; t < horizon; ++t) {
            for (double x : table.slice(t)) {
                if (x < config.v_lo || x > config.v_hi) {
                    throw UsageError("custom initialization leaves the value bounds");
                }
            }
        }
    }
    // Terminal slice is pinned to the terminal contribution.
    space.for_each_state([&](const StateVector& s, std::int64_t flat) {
        table.at(horizon, flat) = model.terminal_contribution(s);
    });

    if (order) {
        // The terminal slice must itself be monotone or no iterate can be.
        ViolationReport term = check_monotone(*order, space, table.slice(horizon),
                                              CheckMode::NeighborPairs, 8);
        if (!term.empty()) {
            throw ModelError("terminal contribution violates monotonicity: " +
                             describe_violations(term, space));
        }
        if (init) {
            for (int t = 0; t < horizon; ++t) {
                ViolationReport rep =
                    check_monotone(*order, space, table.slice(t), CheckMode::NeighborPairs, 8);
                if (!rep.empty()) {
                    throw ModelError("custom initialization not monotone at t=" +
                                     std::to_string(t) + ": " + describe_violations(rep, space));
                }
            }
        }
    }

    StepsizeRule stepsize(config.stepsize_a, horizon, space.cardinality());
    CheckpointState cp{&config, reference, &metric, Clock::now(), {}, 0};
    cp.record(0, table);

    for (std::int64_t n = 1; n <= config.iterations; ++n) {
        StateVector s = pick_initial_state(model, config, n);
        for (int t = 0; t < horizon; ++t) {
            RngStream step_rng = RngStream::derive(
                config.seed, {stream_tag::kTrajectory, static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(t)});
            const std::int64_t flat = space.index_of(s);
            double v_hat = bellman_backup(model, table, t, s);
            v_hat = clamp(v_hat, config.v_lo, config.v_hi);
            const double alpha = stepsize.observe(t, flat);
            // Both inputs are in bounds, so the clamp only strips the last
            // ulp of convex-combination rounding.
            const double z =
                clamp((1.0 - alpha) * table.at(t, flat) + alpha * v_hat, config.v_lo, config.v_hi);
            if (order) {
                monotone_project(*order, space, table.slice(t), s, z);
            } else {
                table.at(t, flat) = z;
            }
            auto [action, next] = epsilon_greedy_step(model, table, t, s, config.epsilon, step_rng);
            if (observer) {
                observer(IterationEvent{n, t, s, flat, v_hat, alpha, z, action, next, table});
            }
            s = next;
        }
        if (cp.due(n)) cp.record(n, table);
    }
    return {std::move(table), std::move(cp.trace)};
}

} // namespace

void SolverConfig::validate() const {
    if (iterations < 0) throw UsageError("SolverConfig: negative iteration count");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw UsageError("SolverConfig: epsilon outside [0,1]");
    if (!(stepsize_a > 0.0)) throw UsageError("SolverConfig: stepsize parameter must be positive");
    if (!(v_lo < v_hi)) throw UsageError("SolverConfig: requires v_lo < v_hi");
    std::int64_t prev = 0;
    for (std::int64_t c : checkpoints) {
        if (c <= prev || c > iterations) {
            throw UsageError("SolverConfig: checkpoints must be strictly increasing within [1, iterations]");
        }
        prev = c;
    }
}

ValueTable solve_bdp(const MdpModel& model) {
    if (!model.kernel().has_exact()) {
        throw UnsupportedModeError("solve_bdp requires an exact kernel");
    }
    const int horizon = model.horizon();
    ValueTable v(horizon, model.states());
    model.states().for_each_state([&](const StateVector& s, std::int64_t flat) {
        v.at(horizon, flat) = model.terminal_contribution(s);
    });
    for (int t = horizon - 1; t >= 0; --t) {
        model.states().for_each_state([&](const StateVector& s, std::int64_t flat) {
            v.at(t, flat) = bellman_backup(model, v, t, s);
        });
    }
    return v;
}

SolverResult run_monotone_adp(const MdpModel& model, const PartialOrderSpec& order,
                              const SolverConfig& config, const ValueTable* reference,
                              const ValueTable* init, const IterationObserver& observer,
                              const CheckpointMetric& metric) {
    return run_adp(model, &order, config, reference, init, observer, metric);
}

SolverResult run_avi(const MdpModel& model, const SolverConfig& config,
                     const ValueTable* reference, const ValueTable* init,
                     const IterationObserver& observer, const CheckpointMetric& metric) {
    return run_adp(model, nullptr, config, reference, init, observer, metric);
}

SolverResult run_qlearning(const MdpModel& model, const SolverConfig& config,
                           const ValueTable* reference, const IterationObserver& observer,
                           const CheckpointMetric& metric) {
    config.validate();
    if (!model.kernel().has_exact() || !model.kernel().has_sampling()) {
        throw UnsupportedModeError("q-learning requires exact and sampling kernel modes");
    }
    const std::optional<int> action_count = model.uniform_action_count();
    if (!action_count) {
        throw ModelError("q-learning needs a uniform action count; this model has "
                         "state-dependent action sets. Use monotone-adp or avi instead.");
    }
    if (*action_count > config.action_table_cap) {
        throw ModelError("q-learning refused: " + std::to_string(*action_count) +
                         " actions exceeds the state-action table cap of " +
                         std::to_string(config.action_table_cap) +
                         "; tabular state-action learning only suits very small action spaces");
    }
    check_terminal_bounds(model, config);

    const int horizon = model.horizon();
    const StateSpace& space = model.states();
    const StateSpace qspace = state_action_space(model);
    const int acts = *action_count;

    ValueTable q(horizon, qspace, config.v_lo);
    space.for_each_state([&](const StateVector& s, std::int64_t flat) {
        const double c = model.terminal_contribution(s);
        for (int a = 0; a < acts; ++a) {
            q.at(horizon, flat * acts + a) = c;
        }
    });

    StepsizeRule stepsize(config.stepsize_a, horizon, qspace.cardinality());
    CheckpointState cp{&config, reference, &metric, Clock::now(), {}, 0};
    ValueTable induced = q_induced_values(model, q);
    cp.record(0, induced);

    std::vector<Action> actions;
    for (std::int64_t n = 1; n <= config.iterations; ++n) {
        StateVector s = pick_initial_state(model, config, n);
        for (int t = 0; t < horizon; ++t) {
            RngStream step_rng = RngStream::derive(
                config.seed, {stream_tag::kTrajectory, static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(t)});
            const std::int64_t flat = space.index_of(s);
            model.actions(t, s, actions);
            if (static_cast<int>(actions.size()) != acts) {
                throw ModelError("action count changed across states; q-learning requires a "
                                 "uniform action list");
            }
            int pos;
            if (step_rng.uniform01() < config.epsilon) {
                pos = static_cast<int>(step_rng.uniform_below(static_cast<std::uint64_t>(acts)));
            } else {
                pos = 0;
                double best = q.at(t, flat * acts);
                for (int a = 1; a < acts; ++a) {
                    const double qa = q.at(t, flat * acts + a);
                    if (qa > best) {
                        best = qa;
                        pos = a;
                    }
                }
            }
            double q_hat = q_backup(model, q, t, s, pos);
            q_hat = clamp(q_hat, config.v_lo, config.v_hi);
            const std::int64_t qflat = flat * acts + pos;
            const double alpha = stepsize.observe(t, qflat);
            const double z =
                clamp((1.0 - alpha) * q.at(t, qflat) + alpha * q_hat, config.v_lo, config.v_hi);
            q.at(t, qflat) = z;
            const StateVector next =
                model.kernel().sample(t, s, actions[static_cast<std::size_t>(pos)], step_rng);
            if (observer) {
                observer(IterationEvent{n, t, s, flat, q_hat, alpha, z,
                                        actions[static_cast<std::size_t>(pos)], next, q});
            }
            s = next;
        }
        if (cp.due(n)) {
            induced = q_induced_values(model, q);
            cp.record(n, induced);
        }
    }
    return {std::move(q), std::move(cp.trace)};
}

std::pair<Action, StateVector> epsilon_greedy_step(const MdpModel& model, const ValueTable& v,
                                                   int t, const StateVector& s, double epsilon,
                                                   RngStream& rng) {
    static thread_local std::vector<Action> actions;
    model.actions(t, s, actions);
    if (actions.empty()) {
        throw ModelError("empty action set at t=" + std::to_string(t) + " s=" + s.to_string());
    }
    Action a;
    if (rng.uniform01() < epsilon) {
        a = actions[rng.uniform_below(actions.size())];
    } else {
        a = bellman_backup_argmax(model, v, t, s).action;
    }
    const StateVector next = model.kernel().sample(t, s, a, rng);
    return {a, next};
}

} // namespace madp
