#include "test_support.hpp"

#include <algorithm>
#include <stdexcept>

namespace madp::testing {

std::shared_ptr<const DenseMdp::Spec> make_random_spec(std::uint64_t seed, int horizon,
                                                       std::int64_t num_states, int num_actions) {
    RngStream rng = RngStream::derive(seed, {0xDEADu});
    auto spec = std::make_shared<DenseMdp::Spec>();
    spec->horizon = horizon;
    spec->num_states = num_states;
    spec->num_actions = num_actions;
    spec->c_lo = -1.0;
    spec->c_hi = 1.0;
    spec->contribution.resize(static_cast<std::size_t>(horizon));
    spec->prob.resize(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
        spec->contribution[t].resize(static_cast<std::size_t>(num_states));
        spec->prob[t].resize(static_cast<std::size_t>(num_states));
        for (std::int64_t s = 0; s < num_states; ++s) {
            spec->contribution[t][s].resize(static_cast<std::size_t>(num_actions));
            spec->prob[t][s].resize(static_cast<std::size_t>(num_actions));
            for (int a = 0; a < num_actions; ++a) {
                spec->contribution[t][s][a] = 2.0 * rng.uniform01() - 1.0;
                auto& row = spec->prob[t][s][a];
                row.resize(static_cast<std::size_t>(num_states));
                double total = 0.0;
                for (auto& p : row) {
                    p = rng.uniform01() + 1e-3;
                    total += p;
                }
                for (auto& p : row) p /= total;
            }
        }
    }
    spec->terminal.resize(static_cast<std::size_t>(num_states));
    for (auto& c : spec->terminal) c = 2.0 * rng.uniform01() - 1.0;
    // Monotone terminal slice (w.r.t. the 1-D state index), so these models
    // satisfy the monotone solvers' terminal assumption check.
    std::sort(spec->terminal.begin(), spec->terminal.end());
    return spec;
}

std::unique_ptr<DenseMdp> make_random_mdp(std::uint64_t seed, int horizon,
                                          std::int64_t num_states, int num_actions) {
    return std::make_unique<DenseMdp>(make_random_spec(seed, horizon, num_states, num_actions));
}

double expectimax_value(const MdpModel& model, int t, const StateVector& s) {
    if (t == model.horizon()) return model.terminal_contribution(s);
    std::vector<Action> actions;
    model.actions(t, s, actions);
    std::vector<Outcome> outcomes;
    double best = -std::numeric_limits<double>::infinity();
    for (Action a : actions) {
        model.kernel().outcomes(t, s, a, outcomes);
        double value = model.contribution(t, s, a);
        for (const Outcome& o : outcomes) {
            value += o.prob * expectimax_value(model, t + 1, o.next);
        }
        best = std::max(best, value);
    }
    return best;
}

namespace {

/// Expected total contribution from (t, s) of a fixed policy given as a
/// table of action positions per (t, flat state).
double policy_value(const MdpModel& model, const std::vector<std::vector<int>>& policy, int t,
                    const StateVector& s) {
    if (t == model.horizon()) return model.terminal_contribution(s);
    std::vector<Action> actions;
    model.actions(t, s, actions);
    const Action a = actions[static_cast<std::size_t>(
        policy[static_cast<std::size_t>(t)]
              [static_cast<std::size_t>(model.states().index_of(s))])];
    std::vector<Outcome> outcomes;
    model.kernel().outcomes(t, s, a, outcomes);
    double value = model.contribution(t, s, a);
    for (const Outcome& o : outcomes) {
        value += o.prob * policy_value(model, policy, t + 1, o.next);
    }
    return value;
}

} // namespace

double best_policy_by_enumeration(const MdpModel& model, const StateVector& s0) {
    const std::int64_t cells = model.horizon() * model.states().cardinality();
    std::vector<int> action_counts(static_cast<std::size_t>(cells));
    std::vector<Action> actions;
    double policies = 1.0;
    for (int t = 0; t < model.horizon(); ++t) {
        for (std::int64_t s = 0; s < model.states().cardinality(); ++s) {
            model.actions(t, model.states().state_of(s), actions);
            action_counts[static_cast<std::size_t>(t * model.states().cardinality() + s)] =
                static_cast<int>(actions.size());
            policies *= static_cast<double>(actions.size());
        }
    }
    if (policies > 1e6) throw std::runtime_error("policy enumeration would not terminate");

    std::vector<std::vector<int>> policy(static_cast<std::size_t>(model.horizon()));
    for (auto& slice : policy) {
        slice.assign(static_cast<std::size_t>(model.states().cardinality()), 0);
    }
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        best = std::max(best, policy_value(model, policy, 0, s0));
        // Odometer over the policy map.
        std::int64_t cell = 0;
        for (; cell < cells; ++cell) {
            int& choice = policy[static_cast<std::size_t>(cell / model.states().cardinality())]
                                [static_cast<std::size_t>(cell % model.states().cardinality())];
            if (choice + 1 < action_counts[static_cast<std::size_t>(cell)]) {
                ++choice;
                break;
            }
            choice = 0;
        }
        if (cell == cells) break;
    }
    return best;
}

double exact_greedy_policy_value(const MdpModel& model, const ValueTable& v, int t,
                                 const StateVector& s) {
    if (t == model.horizon()) return model.terminal_contribution(s);
    const Action a = bellman_backup_argmax(model, v, t, s).action;
    std::vector<Outcome> outcomes;
    model.kernel().outcomes(t, s, a, outcomes);
    double value = model.contribution(t, s, a);
    for (const Outcome& o : outcomes) {
        value += o.prob * exact_greedy_policy_value(model, v, t + 1, o.next);
    }
    return value;
}

std::vector<double> dykstra_projection(const PartialOrderSpec& order, const StateSpace& space,
                                       std::vector<double> values, std::int64_t ref_flat,
                                       double z, double tol, int max_rounds) {
    // Constraint sets: the affine set {v[ref] = z} and one half-space
    // {v[lo] <= v[up]} per immediate-neighbor pair. Dykstra's increments
    // are needed for the half-spaces; the projection of the intersection
    // is unique, so convergence to it checks monotone_project's optimum.
    struct Pair {
        std::int64_t lo, up;
    };
    std::vector<Pair> pairs;
    space.for_each_state([&](const StateVector& s, std::int64_t flat) {
        for (const StateVector& nb : upper_immediate_neighbors(order, space, s)) {
            pairs.push_back({flat, space.index_of(nb)});
        }
    });
    std::vector<double> increment(pairs.size() + 1, 0.0); // last: equality set
    std::vector<double> prev(values.size());

    for (int round = 0; round < max_rounds; ++round) {
        prev = values;
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            const auto [lo, up] = pairs[c];
            // Undo this constraint's previous increment, then project.
            const double d = increment[c];
            double vlo = values[static_cast<std::size_t>(lo)] + d / 2.0;
            double vup = values[static_cast<std::size_t>(up)] - d / 2.0;
            if (vlo > vup) {
                const double mid = (vlo + vup) / 2.0;
                increment[c] = vlo - vup;
                vlo = mid;
                vup = mid;
            } else {
                increment[c] = 0.0;
            }
            values[static_cast<std::size_t>(lo)] = vlo;
            values[static_cast<std::size_t>(up)] = vup;
        }
        values[static_cast<std::size_t>(ref_flat)] = z; // affine set: no increment needed
        double delta = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            delta = std::max(delta, std::abs(values[i] - prev[i]));
        }
        if (delta < tol) break;
    }
    return values;
}

std::vector<std::pair<std::int64_t, std::int64_t>> naive_violating_pairs(
    const PartialOrderSpec& order, const StateSpace& space, std::span<const double> slice) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t i = 0; i < space.cardinality(); ++i) {
        for (std::int64_t j = 0; j < space.cardinality(); ++j) {
            if (i == j) continue;
            const Comparison c = order.compare(space.state_of(i), space.state_of(j));
            if ((c == Comparison::Less || c == Comparison::Equal) &&
                slice[static_cast<std::size_t>(i)] > slice[static_cast<std::size_t>(j)]) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

} // namespace madp::testing
