#pragma once

#include <memory>

#include "madp/mdp_model.hpp"
#include "madp/partial_order.hpp"

namespace madp::problems {

inline constexpr Action kStopWait = 0;
inline constexpr Action kStopReplace = 1;

/// Regenerative optimal stopping: an asset value X in {0..x_max} depreciates
/// under external factors Y^i in {0..y_max}; waiting earns revenue while
/// X > 0, hitting zero costs a penalty plus forced replacement, replacing
/// early costs r(X, Y). Replacement or regeneration resets the whole state
/// to its top corner.
struct StoppingParams {
    int dims = 3;   // state dimensions: X plus dims-1 factors
    int x_max = 10;
    int y_max = 10;
    int horizon = 25;
    double revenue = 100.0;  // while X > 0
    double penalty = 1000.0; // at X = 0
    int drop_max = 5;        // depreciation magnitudes {1..drop_max}, uniform
    std::vector<double> factor_decrement_prob; // p_i = i / (2 dims), i = 1..dims-1

    /// Full-scale family member: n-dimensional, x_max = y_max = 10, T = 25.
    static StoppingParams standard(int n);
    /// Same dynamics on a smaller box (x_max = y_max = box_max).
    static StoppingParams scaled(int n, int box_max);
    /// 1-D chain with num_states asset levels, no external factors.
    static StoppingParams chain(int num_states, int horizon);

    /// Probability the asset value drops this period.
    double depreciation_prob(const StateVector& s) const;
    /// Replacement cost; nonincreasing in every coordinate, range
    /// [replace_base, replace_base + 2 * denom / dims].
    double replacement_cost(const StateVector& s) const;

    double replace_base = 400.0;
    double squared_norm_cap = 0.0; // x_max^2 + (dims-1) y_max^2, set by builders
};

class StoppingModel : public MdpModel {
public:
    explicit StoppingModel(StoppingParams params);

    const StoppingParams& params() const { return params_; }

    void actions(int t, const StateVector& s, std::vector<Action>& out) const override;
    double contribution(int t, const StateVector& s, Action a) const override;
    double terminal_contribution(const StateVector& s) const override;
    StateVector start_state() const override { return states().upper_corner(); }
    std::optional<int> uniform_action_count() const override { return 2; }

private:
    StoppingParams params_;
};

struct StoppingInstance {
    std::shared_ptr<const StoppingModel> model;
    PartialOrderSpec order;
};

StoppingInstance build_stopping_instance(const StoppingParams& params);

} // namespace madp::problems
