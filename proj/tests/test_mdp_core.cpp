#include <doctest.h>

#include <cmath>

#include "madp/solver.hpp"
#include "test_support.hpp"

using namespace madp;

namespace {

/// Two-state deterministic chain: action 0 stays, action 1 advances.
std::shared_ptr<const testing::DenseMdp::Spec> tiny_deterministic_spec() {
    auto spec = std::make_shared<testing::DenseMdp::Spec>();
    spec->horizon = 2;
    spec->num_states = 2;
    spec->num_actions = 2;
    spec->c_lo = 0.0;
    spec->c_hi = 2.0;
    spec->contribution = {{{0.0, 1.0}, {0.0, 1.0}}, {{0.0, 1.0}, {0.0, 1.0}}};
    spec->terminal = {0.0, 2.0};
    spec->prob.assign(2, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}});
    return spec;
}

} // namespace

TEST_CASE("terminal backup returns the terminal contribution regardless of the table") {
    auto model = testing::make_random_mdp(100, 3, 4, 2);
    ValueTable v(3, model->states(), 123.0);
    model->states().for_each_state([&](const StateVector& s, std::int64_t) {
        CHECK(bellman_backup(*model, v, 3, s) == model->terminal_contribution(s));
    });
}

TEST_CASE("single action, deterministic transition: C + V") {
    testing::DenseMdp model(tiny_deterministic_spec());
    ValueTable v(2, model.states());
    v.at(1, StateVector{1}) = 2.0;
    // From state 0 at t=0: wait earns 0 then value 0; advance earns 1 plus
    // the next-state value 2.
    CHECK(bellman_backup(model, v, 0, StateVector{0}) == doctest::Approx(3.0));
}

TEST_CASE("backup equals direct summation over the enumerated kernel") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto model = testing::make_random_mdp(200 + seed, 2, 3, 2);
        ValueTable v(2, model->states());
        RngStream rng = RngStream::derive(seed, {51});
        for (int t = 0; t <= 2; ++t) {
            for (std::int64_t s = 0; s < 3; ++s) {
                v.at(t, s) = rng.uniform01() * 4.0 - 2.0;
            }
        }
        std::vector<Action> actions;
        std::vector<Outcome> outcomes;
        for (int t = 0; t < 2; ++t) {
            for (std::int64_t i = 0; i < 3; ++i) {
                const StateVector s{static_cast<int>(i)};
                model->actions(t, s, actions);
                double best = -1e300;
                for (Action a : actions) {
                    model->kernel().outcomes(t, s, a, outcomes);
                    double total = model->contribution(t, s, a);
                    for (const Outcome& o : outcomes) total += o.prob * v.at(t + 1, o.next);
                    best = std::max(best, total);
                }
                CHECK(bellman_backup(*model, v, t, s) == doctest::Approx(best).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("kernel outcomes are normalized") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto model = testing::make_random_mdp(300 + seed, 3, 5, 3);
        std::vector<Action> actions;
        std::vector<Outcome> outcomes;
        for (int t = 0; t < 3; ++t) {
            model->states().for_each_state([&](const StateVector& s, std::int64_t) {
                model->actions(t, s, actions);
                for (Action a : actions) {
                    model->kernel().outcomes(t, s, a, outcomes);
                    double total = 0.0;
                    for (const Outcome& o : outcomes) {
                        REQUIRE(o.prob >= 0.0);
                        total += o.prob;
                    }
                    CHECK(std::abs(total - 1.0) <= 1e-12);
                }
            });
        }
    }
}

TEST_CASE("backup magnitude is bounded by the remaining-stage contribution bound") {
    auto model = testing::make_random_mdp(400, 4, 5, 3);
    const double c_max =
        std::max(std::abs(model->contribution_lo()), std::abs(model->contribution_hi()));
    ValueTable v = solve_bdp(*model);
    for (int t = 0; t <= 4; ++t) {
        model->states().for_each_state([&](const StateVector& s, std::int64_t) {
            CHECK(std::abs(bellman_backup(*model, v, t, s)) <= (4 - t + 1) * c_max + 1e-12);
        });
    }
}

TEST_CASE("the backup operator is monotone in its table argument") {
    RngStream rng = RngStream::derive(77, {3});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto model = testing::make_random_mdp(500 + seed, 3, 4, 2);
        ValueTable lo(3, model->states());
        ValueTable hi(3, model->states());
        for (int t = 0; t <= 3; ++t) {
            for (std::int64_t s = 0; s < 4; ++s) {
                const double base = rng.uniform01() * 2.0 - 1.0;
                lo.at(t, s) = base;
                hi.at(t, s) = base + rng.uniform01();
            }
        }
        for (int t = 0; t < 3; ++t) {
            model->states().for_each_state([&](const StateVector& s, std::int64_t) {
                CHECK(bellman_backup(*model, lo, t, s) <=
                      bellman_backup(*model, hi, t, s) + 1e-12);
            });
        }
    }
}

TEST_CASE("exact-expectation observations equal the backup") {
    auto model = testing::make_random_mdp(600, 4, 6, 3);
    ValueTable v = solve_bdp(*model);
    RngStream rng = RngStream::derive(601, {0});
    for (int trial = 0; trial < 50; ++trial) {
        const int t = static_cast<int>(rng.uniform_below(4));
        const StateVector s{static_cast<int>(rng.uniform_below(6))};
        CHECK(sample_observation(*model, v, t, s, ObservationForm::ExactExpectation, rng) ==
              bellman_backup(*model, v, t, s));
    }
}

TEST_CASE("q-sample on a deterministic kernel equals the exact state-action backup") {
    testing::DenseMdp model(tiny_deterministic_spec());
    const StateSpace qspace = state_action_space(model);
    ValueTable q(2, qspace);
    RngStream rng = RngStream::derive(55, {1});
    for (int t = 0; t <= 2; ++t) {
        for (std::int64_t i = 0; i < qspace.cardinality(); ++i) {
            q.at(t, i) = rng.uniform01();
        }
    }
    // Terminal slice pinned to C_T across actions.
    model.states().for_each_state([&](const StateVector& s, std::int64_t flat) {
        for (int a = 0; a < 2; ++a) {
            q.at(2, flat * 2 + a) = model.terminal_contribution(s);
        }
    });
    for (int t = 0; t < 2; ++t) {
        model.states().for_each_state([&](const StateVector& s, std::int64_t) {
            for (int a = 0; a < 2; ++a) {
                const double drawn = sample_observation(model, q, t, s.appended(a),
                                                        ObservationForm::QSample, rng);
                CHECK(drawn == doctest::Approx(q_backup(model, q, t, s, a)).epsilon(1e-12));
            }
        });
    }
}

TEST_CASE("q-sample empirical mean matches the exact q backup") {
    auto model = testing::make_random_mdp(700, 2, 3, 2);
    const StateSpace qspace = state_action_space(*model);
    ValueTable q(2, qspace);
    RngStream init = RngStream::derive(701, {0});
    for (int t = 0; t <= 2; ++t) {
        for (std::int64_t i = 0; i < qspace.cardinality(); ++i) {
            q.at(t, i) = init.uniform01() * 2.0 - 1.0;
        }
    }
    const int t = 0;
    const StateVector s{1};
    const int a = 1;
    const double exact = q_backup(*model, q, t, s, a);

    RngStream rng = RngStream::derive(702, {9});
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double draw =
            sample_observation(*model, q, t, s.appended(a), ObservationForm::QSample, rng);
        sum += draw;
        sum_sq += draw * draw;
    }
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1);
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - exact) <= 3.0 * se + 1e-9);
}

TEST_CASE("mode and shape mismatches are rejected") {
    auto spec = testing::make_random_spec(800, 2, 3, 2);
    testing::SampledOnlyMdp sampled(spec);
    ValueTable v(2, sampled.states());
    RngStream rng = RngStream::derive(0, {0});
    CHECK_THROWS_AS(bellman_backup(sampled, v, 0, StateVector{0}), UnsupportedModeError);
    CHECK_THROWS_AS(
        sample_observation(sampled, v, 0, StateVector{0}, ObservationForm::ExactExpectation, rng),
        UnsupportedModeError);

    testing::DenseMdp dense(spec);
    // Q-sample needs the enlarged table, not a state table.
    CHECK_THROWS_AS(
        sample_observation(dense, v, 0, StateVector{0, 0}, ObservationForm::QSample, rng),
        UnsupportedModeError);
}

TEST_CASE("declared contribution bounds are spot-checked") {
    auto model = testing::make_random_mdp(900, 3, 4, 2);
    RngStream rng = RngStream::derive(901, {0});
    CHECK_NOTHROW(validate_contribution_bounds(*model, 200, rng));
}

TEST_CASE("empty action sets are model errors") {
    auto spec = std::make_shared<testing::DenseMdp::Spec>();
    spec->horizon = 1;
    spec->num_states = 2;
    spec->num_actions = 0;
    spec->c_lo = 0.0;
    spec->c_hi = 1.0;
    spec->contribution = {{{}, {}}};
    spec->terminal = {0.0, 0.0};
    spec->prob = {{{}, {}}};
    testing::DenseMdp model(spec);
    ValueTable v(1, model.states());
    CHECK_THROWS_AS(bellman_backup(model, v, 0, StateVector{0}), ModelError);
    RngStream rng = RngStream::derive(1, {1});
    CHECK_THROWS_AS(epsilon_greedy_step(model, v, 0, StateVector{0}, 1.0, rng), ModelError);
}
