#pragma once

#include <array>
#include <memory>

#include "madp/mdp_model.hpp"
#include "madp/partial_order.hpp"
#include "madp/problems/discretize.hpp"

namespace madp::problems {

/// Glycemic control: state (H^a, H^b, H^c, H^d) = short-term glucose,
/// long-term glucose, BMI, side-effect severity; five treatments with
/// stochastic health effects. Contributions are nonincreasing in the state,
/// so the value function is monotone under the reversed componentwise order.
struct GlycemicParams {
    std::array<int, 4> lo{68, 4, 19, 0};
    std::array<int, 4> hi{300, 19, 50, 10};
    /// Ceilings inside the log utilities for dims a, b, c. The b ceiling
    /// sits one above the grid top so the log argument stays positive.
    std::array<int, 3> utility_ceiling{300, 20, 50};
    std::array<double, 3> utility_scale{4.586, 7.059, 5.771};
    double side_effect_slope = -10.0;
    double treatment_cost = 0.0; // per treatment decision other than "none"
    int horizon = 12;
    int treatments = 5;

    /// Per-treatment health-effect distribution over 4-D offsets
    /// (a, b, c jointly normal on an integer grid; d its own discrete pmf),
    /// clamp-aggregated to the state box widths.
    std::vector<JointPmf> effect;

    static GlycemicParams standard(double treatment_cost);
    /// Reduced-size variant with every range cut to width <= range_width.
    GlycemicParams reduced(int range_width) const;

    /// Sum of the four utilities; log arguments floored at 1 so the top
    /// states stay finite.
    double health_utility(const StateVector& s) const;
};

class GlycemicModel : public MdpModel {
public:
    explicit GlycemicModel(GlycemicParams params);

    const GlycemicParams& params() const { return params_; }

    void actions(int t, const StateVector& s, std::vector<Action>& out) const override;
    double contribution(int t, const StateVector& s, Action a) const override;
    double terminal_contribution(const StateVector& s) const override;
    /// Untreated unhealthy patient: glucose and BMI at their maxima, no
    /// side effects yet.
    StateVector start_state() const override;
    std::optional<int> uniform_action_count() const override { return params_.treatments; }

private:
    GlycemicParams params_;
};

struct GlycemicInstance {
    std::shared_ptr<const GlycemicModel> model;
    PartialOrderSpec order;
};

GlycemicInstance build_glycemic_instance(const GlycemicParams& params);

} // namespace madp::problems
