#include "madp/problems/stopping.hpp"

#include <cmath>

namespace madp::problems {

namespace {

StateSpace stopping_space(const StoppingParams& p) {
    std::vector<int> lo(static_cast<std::size_t>(p.dims), 0);
    std::vector<int> hi(static_cast<std::size_t>(p.dims), p.y_max);
    hi[0] = p.x_max;
    return StateSpace(std::move(lo), std::move(hi));
}

class StoppingKernel : public TransitionKernel {
public:
    explicit StoppingKernel(const StoppingParams& p) : p_(p), top_(StateVector::zeros(p.dims)) {
        top_[0] = p.x_max;
        for (int k = 1; k < p.dims; ++k) top_[k] = p.y_max;
    }

    bool has_exact() const override { return true; }
    bool has_sampling() const override { return true; }

    void outcomes(int, const StateVector& s, Action a, std::vector<Outcome>& out) const override {
        out.clear();
        if (a == kStopReplace || s[0] == 0) {
            out.push_back({top_, 1.0});
            return;
        }
        // Asset-value branch: stay, or drop by a uniform amount in
        // {1..drop_max} (floored at zero, merging collapsed drops).
        const double f = p_.depreciation_prob(s);
        struct XPart {
            int x;
            double prob;
        };
        std::vector<XPart> xs;
        if (1.0 - f > 0.0) xs.push_back({s[0], 1.0 - f});
        if (f > 0.0) {
            const double per = f / p_.drop_max;
            int e = 1;
            while (e <= p_.drop_max) {
                const int nx = std::max(s[0] - e, 0);
                if (nx == 0) {
                    // Drops e..drop_max all land on zero.
                    xs.push_back({0, per * (p_.drop_max - e + 1)});
                    break;
                }
                xs.push_back({nx, per});
                ++e;
            }
        }
        // Factor branches: independent single decrements, floored at zero.
        StateVector next = StateVector::zeros(p_.dims);
        enumerate_factors(s, 1, 1.0, xs, next, out);
    }

    StateVector sample(int, const StateVector& s, Action a, RngStream& rng) const override {
        if (a == kStopReplace || s[0] == 0) return top_;
        StateVector next = s;
        if (rng.uniform01() < p_.depreciation_prob(s)) {
            const int e = 1 + static_cast<int>(rng.uniform_below(
                                  static_cast<std::uint64_t>(p_.drop_max)));
            next[0] = std::max(s[0] - e, 0);
        }
        for (int k = 1; k < p_.dims; ++k) {
            if (rng.uniform01() < p_.factor_decrement_prob[static_cast<std::size_t>(k - 1)]) {
                next[k] = std::max(s[k] - 1, 0);
            }
        }
        return next;
    }

private:
    template <class XParts>
    void enumerate_factors(const StateVector& s, int k, double prob, const XParts& xs,
                           StateVector& next, std::vector<Outcome>& out) const {
        if (k == p_.dims) {
            for (const auto& xp : xs) {
                StateVector full = next;
                full[0] = xp.x;
                out.push_back({full, prob * xp.prob});
            }
            return;
        }
        const double pk = p_.factor_decrement_prob[static_cast<std::size_t>(k - 1)];
        if (s[k] == 0) {
            next[k] = 0;
            enumerate_factors(s, k + 1, prob, xs, next, out);
            return;
        }
        next[k] = s[k];
        enumerate_factors(s, k + 1, prob * (1.0 - pk), xs, next, out);
        next[k] = s[k] - 1;
        enumerate_factors(s, k + 1, prob * pk, xs, next, out);
    }

    StoppingParams p_;
    StateVector top_;
};

} // namespace

StoppingParams StoppingParams::standard(int n) { return scaled(n, 10); }

StoppingParams StoppingParams::scaled(int n, int box_max) {
    if (n < 1) throw UsageError("stopping: dimension count must be >= 1");
    StoppingParams p;
    p.dims = n;
    p.x_max = box_max;
    p.y_max = box_max;
    p.horizon = 25;
    for (int i = 1; i <= n - 1; ++i) {
        p.factor_decrement_prob.push_back(static_cast<double>(i) / (2.0 * n));
    }
    p.squared_norm_cap =
        static_cast<double>(p.x_max) * p.x_max + (n - 1) * static_cast<double>(p.y_max) * p.y_max;
    return p;
}

StoppingParams StoppingParams::chain(int num_states, int horizon) {
    if (num_states < 2) throw UsageError("stopping chain: needs at least 2 states");
    StoppingParams p = scaled(1, num_states - 1);
    p.horizon = horizon;
    return p;
}

double StoppingParams::depreciation_prob(const StateVector& s) const {
    double sq = static_cast<double>(s[0]) * s[0];
    for (int k = 1; k < dims; ++k) sq += static_cast<double>(s[k]) * s[k];
    return 1.0 - sq / squared_norm_cap;
}

double StoppingParams::replacement_cost(const StateVector& s) const {
    double sq = static_cast<double>(s[0]) * s[0];
    for (int k = 1; k < dims; ++k) sq += static_cast<double>(s[k]) * s[k];
    return replace_base + (2.0 / dims) * (squared_norm_cap - sq);
}

StoppingModel::StoppingModel(StoppingParams params)
    : MdpModel(params.horizon, stopping_space(params),
               std::make_unique<StoppingKernel>(params),
               // Worst stage: penalty plus the costliest replacement.
               -(params.penalty + params.replacement_cost(StateVector::zeros(params.dims))),
               params.revenue),
      params_(std::move(params)) {}

void StoppingModel::actions(int, const StateVector&, std::vector<Action>& out) const {
    out.assign({kStopWait, kStopReplace});
}

double StoppingModel::contribution(int, const StateVector& s, Action a) const {
    const bool has_value = s[0] > 0;
    double c = has_value ? params_.revenue : -params_.penalty;
    if (!(a == kStopWait && has_value)) c -= params_.replacement_cost(s);
    return c;
}

double StoppingModel::terminal_contribution(const StateVector&) const { return 0.0; }

StoppingInstance build_stopping_instance(const StoppingParams& params) {
    return {std::make_shared<StoppingModel>(params), PartialOrderSpec::componentwise()};
}

} // namespace madp::problems
