#pragma once

#include <memory>

#include "madp/mdp_model.hpp"
#include "madp/partial_order.hpp"
#include "madp/problems/discretize.hpp"

namespace madp::problems {

/// Energy storage and allocation: state (R, E, P, D) = storage level,
/// renewable supply, spot price, demand. The 5-component decision routes
/// energy between the renewable source, storage, the market, and demand.
struct StorageAction {
    int ed; // renewable -> demand
    int md; // market -> demand
    int rd; // storage -> demand
    int er; // renewable -> storage
    int rm; // storage -> market
};

Action encode_storage_action(const StorageAction& x);
StorageAction decode_storage_action(Action a);

struct StorageParams {
    int r_max = 30;
    int gamma_c = 5; // max charge per period
    int gamma_d = 5; // max discharge per period
    int e_min = 1, e_max = 7;
    int p_min = 30, p_max = 70;
    int d_min = 0, d_max = 7;
    int horizon = 25;
    double jump_prob = 0.031;

    DiscretePmf supply_noise;  // offsets applied to E, clamped to its range
    DiscretePmf price_noise;   // combined base + jump offsets applied to P
    DiscretePmf demand_noise;  // offsets around the seasonal demand level

    static StorageParams s1();
    static StorageParams s2();
    /// Reduced-size variant: R in [0, r_max_small], remaining ranges cut to
    /// width <= range_width.
    StorageParams reduced(int r_max_small, int range_width) const;

    /// Deterministic seasonal demand level for the next period.
    int seasonal_demand_level(int t_next) const;
};

/// Feasible decisions at state s in deterministic lexicographic order:
/// all nonnegative integer 5-vectors with ed + rd + md = D, rd + rm <= R,
/// er + ed <= E, rd + rm <= gamma_d, er <= min(r_max - R, gamma_c).
/// Never empty: buying all demand from the market is always feasible.
void enumerate_storage_actions(const StorageParams& params, const StateVector& s,
                               std::vector<Action>& out);
std::int64_t count_storage_actions(const StorageParams& params, const StateVector& s);

class StorageModel : public MdpModel {
public:
    explicit StorageModel(StorageParams params);

    const StorageParams& params() const { return params_; }

    void actions(int t, const StateVector& s, std::vector<Action>& out) const override;
    double contribution(int t, const StateVector& s, Action a) const override;
    double terminal_contribution(const StateVector& s) const override;
    /// Empty storage, all other dimensions at their minimum.
    StateVector start_state() const override { return states().lower_corner(); }

private:
    StorageParams params_;
};

struct StorageInstance {
    std::shared_ptr<const StorageModel> model;
    PartialOrderSpec order;
};

StorageInstance build_storage_instance(const StorageParams& params);

} // namespace madp::problems
