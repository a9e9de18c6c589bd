#include <doctest.h>

#include <cmath>
#include <set>

#include "madp/problems/glycemic.hpp"
#include "madp/problems/instances.hpp"
#include "madp/problems/stopping.hpp"
#include "madp/problems/storage.hpp"
#include "madp/rng.hpp"
#include "madp/solver.hpp"

using namespace madp;
using namespace madp::problems;

TEST_CASE("discretize_density") {
    SUBCASE("constant density normalizes to uniform") {
        DiscretePmf pmf = discretize_density([](double) { return 2.5; }, {-1, 0, 1});
        REQUIRE(pmf.size() == 3);
        for (double p : pmf.probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }

    SUBCASE("symmetric density on a symmetric grid is symmetric and sums to 1") {
        DiscretePmf pmf = discretize_normal(0.0, 1.7, 4);
        pmf.validate(1e-12);
        REQUIRE(pmf.size() == 9);
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            CHECK(pmf.probs[i] == doctest::Approx(pmf.probs[pmf.size() - 1 - i]).epsilon(1e-13));
        }
    }

    SUBCASE("standard normal on five points matches direct normalization") {
        DiscretePmf pmf = discretize_normal(0.0, 1.0, 2);
        double weights[5], total = 0.0;
        for (int x = -2; x <= 2; ++x) {
            weights[x + 2] = std::exp(-0.5 * x * x);
            total += weights[x + 2];
        }
        for (int i = 0; i < 5; ++i) {
            CHECK(std::abs(pmf.probs[static_cast<std::size_t>(i)] - weights[i] / total) <= 1e-12);
        }
    }

    SUBCASE("zero mass is a degenerate density") {
        CHECK_THROWS_AS(discretize_density([](double) { return 0.0; }, {0, 1}),
                        DegenerateInputError);
        CHECK_THROWS_AS(discretize_density([](double) { return 1.0; }, {}), UsageError);
    }
}

TEST_CASE("pmf utilities") {
    DiscretePmf a = DiscretePmf::from_weights({0, 1}, {0.5, 0.5});
    DiscretePmf b = DiscretePmf::from_weights({0, 2}, {0.25, 0.75});
    DiscretePmf conv = convolve(a, b);
    conv.validate();
    // Sums: 0,1,2,3 with probs .125,.125,.375,.375
    REQUIRE(conv.size() == 4);
    CHECK(conv.probs[0] == doctest::Approx(0.125));
    CHECK(conv.probs[2] == doctest::Approx(0.375));

    DiscretePmf mixed = mixture_with_jump(a, 0.1, b);
    mixed.validate();
    // P(0) = 0.9*0.5 + 0.1*0.125
    CHECK(mixed.probs[0] == doctest::Approx(0.9 * 0.5 + 0.1 * 0.125));

    DiscretePmf clamped = DiscretePmf::from_weights({-3, -1, 0, 5}, {1, 1, 1, 1}).clamped(-1, 1);
    REQUIRE(clamped.size() == 3);
    CHECK(clamped.values == std::vector<std::int64_t>{-1, 0, 1});
    CHECK(clamped.probs[0] == doctest::Approx(0.5));

    // Sampling follows the pmf.
    RngStream rng = RngStream::derive(3, {1});
    int ones = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) ones += a.sample(rng) == 1;
    CHECK(std::abs(ones - n * 0.5) <= 3.0 * std::sqrt(n * 0.25));
}

TEST_CASE("stopping instance structure") {
    StoppingParams params = StoppingParams::standard(3);
    StoppingInstance instance = build_stopping_instance(params);
    const MdpModel& model = *instance.model;

    CHECK(model.states().cardinality() == 1331);
    CHECK(model.horizon() == 25);

    SUBCASE("no depreciation at the top state") {
        for (int n = 1; n <= 7; ++n) {
            StoppingParams p = StoppingParams::standard(n);
            StateVector top = StateVector::zeros(n);
            for (int k = 0; k < n; ++k) top[k] = 10;
            CHECK(p.depreciation_prob(top) == 0.0);
        }
    }

    SUBCASE("replacement cost extremes") {
        CHECK(params.replacement_cost(StateVector{10, 10, 10}) == doctest::Approx(400.0));
        CHECK(params.replacement_cost(StateVector{0, 0, 0}) == doctest::Approx(600.0));
    }

    SUBCASE("contribution cases") {
        // Waiting while the asset has value earns the revenue.
        CHECK(model.contribution(0, StateVector{5, 5, 5}, kStopWait) == doctest::Approx(100.0));
        // Replacing pays the cost once.
        CHECK(model.contribution(0, StateVector{5, 5, 5}, kStopReplace) ==
              doctest::Approx(100.0 - params.replacement_cost(StateVector{5, 5, 5})));
        // Worthless asset pays the penalty plus forced replacement even
        // when waiting.
        CHECK(model.contribution(0, StateVector{0, 5, 5}, kStopWait) ==
              doctest::Approx(-1000.0 - params.replacement_cost(StateVector{0, 5, 5})));
        CHECK(model.terminal_contribution(StateVector{3, 3, 3}) == 0.0);
    }

    SUBCASE("kernel regenerates on replace and on worthless assets") {
        std::vector<Outcome> outcomes;
        model.kernel().outcomes(0, StateVector{4, 2, 9}, kStopReplace, outcomes);
        REQUIRE(outcomes.size() == 1);
        CHECK(outcomes[0].next == StateVector{10, 10, 10});
        CHECK(outcomes[0].prob == 1.0);
        model.kernel().outcomes(0, StateVector{0, 2, 9}, kStopWait, outcomes);
        REQUIRE(outcomes.size() == 1);
        CHECK(outcomes[0].next == StateVector{10, 10, 10});
    }

    SUBCASE("kernel normalizes and matches the sampler's support") {
        RngStream rng = RngStream::derive(5, {2});
        std::vector<Outcome> outcomes;
        for (int trial = 0; trial < 40; ++trial) {
            const std::int64_t flat = static_cast<std::int64_t>(
                rng.uniform_below(static_cast<std::uint64_t>(model.states().cardinality())));
            const StateVector s = model.states().state_of(flat);
            for (Action a : {kStopWait, kStopReplace}) {
                model.kernel().outcomes(0, s, a, outcomes);
                double total = 0.0;
                std::set<std::int64_t> support;
                for (const Outcome& o : outcomes) {
                    total += o.prob;
                    support.insert(model.states().index_of(o.next));
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
                for (int draw = 0; draw < 20; ++draw) {
                    const StateVector next = model.kernel().sample(0, s, a, rng);
                    CHECK(support.count(model.states().index_of(next)) == 1);
                }
            }
        }
    }
}

TEST_CASE("stopping chain is one-dimensional") {
    StoppingParams params = StoppingParams::chain(20, 5);
    StoppingInstance instance = build_stopping_instance(params);
    CHECK(instance.model->states().cardinality() == 20);
    CHECK(instance.model->horizon() == 5);
    CHECK(instance.model->states().dims() == 1);
    CHECK(params.depreciation_prob(StateVector{19}) == 0.0);
    CHECK(params.depreciation_prob(StateVector{0}) == 1.0);
}

TEST_CASE("storage actions") {
    StorageParams params = StorageParams::s1();

    SUBCASE("all caps zero leaves only the zero decision") {
        StorageParams degenerate = params;
        degenerate.e_min = 0;
        std::vector<Action> actions;
        enumerate_storage_actions(degenerate, StateVector{0, 0, 30, 0}, actions);
        REQUIRE(actions.size() == 1);
        const StorageAction only = decode_storage_action(actions[0]);
        CHECK(only.ed == 0);
        CHECK(only.md == 0);
        CHECK(only.rd == 0);
        CHECK(only.er == 0);
        CHECK(only.rm == 0);
    }

    SUBCASE("empty storage cannot discharge") {
        std::vector<Action> actions;
        enumerate_storage_actions(params, StateVector{0, 4, 50, 6}, actions);
        CHECK(!actions.empty());
        for (Action a : actions) {
            const StorageAction x = decode_storage_action(a);
            CHECK(x.rd == 0);
            CHECK(x.rm == 0);
        }
    }

    SUBCASE("enumeration matches a brute-force filter with tiny caps") {
        StorageParams tiny = params;
        tiny.r_max = 1;
        tiny.gamma_c = 1;
        tiny.gamma_d = 1;
        const StateVector s{1, 1, 30, 1}; // R=1, E=1, D=1
        std::vector<Action> actions;
        enumerate_storage_actions(tiny, s, actions);

        std::set<Action> expected;
        for (int ed = 0; ed <= 1; ++ed) {
            for (int md = 0; md <= 1; ++md) {
                for (int rd = 0; rd <= 1; ++rd) {
                    for (int er = 0; er <= 1; ++er) {
                        for (int rm = 0; rm <= 1; ++rm) {
                            const bool feasible =
                                ed + rd + md == s[3] && rd + rm <= s[0] && er + ed <= s[1] &&
                                rd + rm <= tiny.gamma_d &&
                                er <= std::min(tiny.r_max - s[0], tiny.gamma_c);
                            if (feasible) expected.insert(encode_storage_action({ed, md, rd, er, rm}));
                        }
                    }
                }
            }
        }
        CHECK(std::set<Action>(actions.begin(), actions.end()) == expected);
        CHECK(count_storage_actions(tiny, s) == static_cast<std::int64_t>(expected.size()));

        // Lexicographic in (ed, md, rd, er, rm).
        std::vector<std::array<int, 5>> tuples;
        for (Action a : actions) {
            const StorageAction x = decode_storage_action(a);
            tuples.push_back({x.ed, x.md, x.rd, x.er, x.rm});
        }
        CHECK(std::is_sorted(tuples.begin(), tuples.end()));
    }

    SUBCASE("count matches enumeration across random states") {
        RngStream rng = RngStream::derive(7, {7});
        StateSpace space({0, params.e_min, params.p_min, params.d_min},
                         {params.r_max, params.e_max, params.p_max, params.d_max});
        std::vector<Action> actions;
        for (int trial = 0; trial < 50; ++trial) {
            const StateVector s = space.state_of(static_cast<std::int64_t>(
                rng.uniform_below(static_cast<std::uint64_t>(space.cardinality()))));
            enumerate_storage_actions(params, s, actions);
            CHECK(count_storage_actions(params, s) == static_cast<std::int64_t>(actions.size()));
        }
    }
}

TEST_CASE("storage instance structure") {
    StorageInstance s1 = build_storage_instance(StorageParams::s1());
    CHECK(s1.model->states().cardinality() == 71176);
    CHECK(s1.model->horizon() == 25);

    SUBCASE("contribution without storage flows is price times demand") {
        const StateVector s{4, 3, 42, 6};
        // ed + md = D with no storage movement.
        const Action a = encode_storage_action({3, 0, 3, 0, 0});
        CHECK(s1.model->contribution(0, s, a) == doctest::Approx(42.0 * 6.0));
    }

    SUBCASE("kernel normalizes at sampled states and times") {
        RngStream rng = RngStream::derive(8, {3});
        std::vector<Action> actions;
        std::vector<Outcome> outcomes;
        for (int trial = 0; trial < 6; ++trial) {
            const StateVector s = s1.model->states().state_of(static_cast<std::int64_t>(
                rng.uniform_below(static_cast<std::uint64_t>(s1.model->states().cardinality()))));
            const int t = static_cast<int>(rng.uniform_below(25));
            s1.model->actions(t, s, actions);
            const Action a = actions[rng.uniform_below(actions.size())];
            s1.model->kernel().outcomes(t, s, a, outcomes);
            double total = 0.0;
            for (const Outcome& o : outcomes) {
                total += o.prob;
                CHECK(s1.model->states().contains(o.next));
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }

    SUBCASE("storage level transitions deterministically by the flow balance") {
        const StateVector s{10, 4, 35, 5};
        const Action a = encode_storage_action({2, 2, 1, 2, 3}); // rd=1, er=2, rm=3
        std::vector<Outcome> outcomes;
        s1.model->kernel().outcomes(3, s, a, outcomes);
        for (const Outcome& o : outcomes) CHECK(o.next[0] == 10 - 1 + 2 - 3);
    }

    SUBCASE("reduced variant shrinks the box") {
        StorageInstance small = build_storage_instance(StorageParams::s1().reduced(4, 3));
        CHECK(small.model->states().cardinality() == 5 * 4 * 4 * 4);
    }
}

TEST_CASE("glycemic instance structure") {
    GlycemicInstance g1 = build_glycemic_instance(GlycemicParams::standard(0.0));
    const MdpModel& model = *g1.model;

    CHECK(model.states().cardinality() == 1312256);
    CHECK(model.horizon() == 12);
    CHECK(g1.order.kind() == OrderKind::ReversedComponentwise);

    SUBCASE("side-effect utility endpoints") {
        GlycemicParams p = GlycemicParams::standard(0.0);
        // u^d alone, isolated by comparing states differing only in d.
        const double u0 = p.health_utility(StateVector{200, 10, 30, 0});
        const double u10 = p.health_utility(StateVector{200, 10, 30, 10});
        CHECK(u0 - u10 == doctest::Approx(100.0));
    }

    SUBCASE("treatment cost applies to every treatment except none") {
        GlycemicInstance g2 = build_glycemic_instance(GlycemicParams::standard(2.0));
        const StateVector s{150, 10, 30, 2};
        const double base = g2.model->contribution(0, s, 0);
        for (Action a = 1; a < 5; ++a) {
            CHECK(g2.model->contribution(0, s, a) == doctest::Approx(base - 2.0));
        }
        // G1 charges nothing.
        for (Action a = 1; a < 5; ++a) {
            CHECK(g1.model->contribution(0, s, a) == doctest::Approx(g1.model->contribution(0, s, 0)));
        }
    }

    SUBCASE("no-treatment drift pushes glucose up by (30, 3, 2) on average") {
        GlycemicParams p = GlycemicParams::standard(0.0);
        const DiscretePmf ma = p.effect[0].marginal(0);
        const DiscretePmf mb = p.effect[0].marginal(1);
        const DiscretePmf mc = p.effect[0].marginal(2);
        // The discretized marginal mode sits at the grid point nearest the
        // mean; with integer means, exactly there.
        auto mode = [](const DiscretePmf& pmf) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < pmf.size(); ++i) {
                if (pmf.probs[i] > pmf.probs[best]) best = i;
            }
            return pmf.values[best];
        };
        CHECK(mode(ma) == 30);
        CHECK(mode(mb) == 3);
        CHECK(mode(mc) == 2);
    }

    SUBCASE("marginals are unimodal for every treatment and health dimension") {
        GlycemicParams p = GlycemicParams::standard(0.0);
        for (const JointPmf& effect : p.effect) {
            for (int dim = 0; dim < 3; ++dim) {
                const DiscretePmf marginal = effect.marginal(dim);
                std::size_t mode = 0;
                for (std::size_t i = 1; i < marginal.size(); ++i) {
                    if (marginal.probs[i] > marginal.probs[mode]) mode = i;
                }
                for (std::size_t i = 0; i + 1 < marginal.size(); ++i) {
                    if (i < mode) {
                        CHECK(marginal.probs[i] <= marginal.probs[i + 1] + 1e-15);
                    } else {
                        CHECK(marginal.probs[i] >= marginal.probs[i + 1] - 1e-15);
                    }
                }
            }
        }
    }

    SUBCASE("effect distributions sum to one and the kernel stays in bounds") {
        GlycemicParams p = GlycemicParams::standard(2.0);
        for (const JointPmf& effect : p.effect) effect.validate(1e-12);

        GlycemicInstance small = build_glycemic_instance(p.reduced(3));
        CHECK(small.model->states().cardinality() == 256);
        RngStream rng = RngStream::derive(9, {4});
        std::vector<Outcome> outcomes;
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector s = small.model->states().state_of(static_cast<std::int64_t>(
                rng.uniform_below(static_cast<std::uint64_t>(256))));
            for (Action a = 0; a < 5; ++a) {
                small.model->kernel().outcomes(0, s, a, outcomes);
                double total = 0.0;
                for (const Outcome& o : outcomes) {
                    CHECK(small.model->states().contains(o.next));
                    total += o.prob;
                }
                CHECK(std::abs(total - 1.0) <= 1e-12);
            }
        }
    }

    SUBCASE("start state is the untreated unhealthy corner") {
        const StateVector s0 = model.start_state();
        CHECK(s0 == StateVector{300, 19, 50, 0});
    }
}

TEST_CASE("instance registry") {
    CHECK(instance_labels().size() == 9);
    CHECK(is_valid_label("R5"));
    CHECK(!is_valid_label("R8"));
    CHECK_THROWS_AS(build_instance("bogus"), UsageError);
    CHECK_THROWS_AS(build_instance("R3", 0), UsageError);

    SUBCASE("scaled stopping boxes") {
        BuiltInstance reduced = build_instance("R3", 5);
        CHECK(reduced.model->states().cardinality() == 6 * 6 * 6);
        BuiltInstance tiny = build_instance("R3", 3);
        CHECK(tiny.model->states().cardinality() == 4 * 4 * 4);
    }

    SUBCASE("instance value bounds contain the optimal tables") {
        BuiltInstance reduced = build_instance("R3", 3);
        CHECK(reduced.v_lo < reduced.v_hi);
        CHECK(reduced.v_lo <= 26.0 * reduced.model->contribution_lo());
    }

    SUBCASE("declared contribution bounds hold on sampled cells") {
        RngStream rng = RngStream::derive(10, {6});
        for (const char* label : {"R3", "S1", "G2"}) {
            BuiltInstance instance = build_instance(label, 4);
            CHECK_NOTHROW(validate_contribution_bounds(*instance.model, 300, rng));
        }
    }
}

TEST_CASE("reduced-instance optimal start values match independently computed constants") {
    // Frozen from a separate dense-matrix implementation of the exact
    // recursion (independent model construction, noise grids, and clamping);
    // the two implementations agree to ~1e-11 relative.
    {
        BuiltInstance g2 = build_instance("G2", 4);
        const ValueTable v = solve_bdp(*g2.model);
        CHECK(v.at(0, g2.model->start_state()) ==
              doctest::Approx(749.341007252711).epsilon(1e-9));
    }
    {
        BuiltInstance s1 = build_instance("S1", 4);
        const ValueTable v = solve_bdp(*s1.model);
        CHECK(v.at(0, s1.model->start_state()) ==
              doctest::Approx(1615.016938246390).epsilon(1e-9));
    }
}

TEST_CASE("kernels normalize exhaustively on instances under 1e5 triples") {
    struct Swept {
        const char* label;
        std::optional<int> scale;
        std::vector<int> times; // empty: all decision epochs
    };
    const Swept sweeps[] = {
        {"R3", std::nullopt, {0, 12}}, // time-homogeneous kernel, two epochs suffice
        {"S1", 4, {}},
        {"G1", 4, {}},
    };
    std::vector<Action> actions;
    std::vector<Outcome> outcomes;
    for (const Swept& sweep : sweeps) {
        const BuiltInstance instance = build_instance(sweep.label, sweep.scale);
        std::vector<int> times = sweep.times;
        if (times.empty()) {
            for (int t = 0; t < instance.model->horizon(); ++t) times.push_back(t);
        }
        double worst = 0.0;
        for (int t : times) {
            instance.model->states().for_each_state([&](const StateVector& s, std::int64_t) {
                instance.model->actions(t, s, actions);
                for (Action a : actions) {
                    instance.model->kernel().outcomes(t, s, a, outcomes);
                    double total = 0.0;
                    for (const Outcome& o : outcomes) total += o.prob;
                    worst = std::max(worst, std::abs(total - 1.0));
                }
            });
        }
        CHECK(worst <= 1e-12);
    }
}
