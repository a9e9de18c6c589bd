#include "madp/problems/glycemic.hpp"

#include <algorithm>
#include <cmath>

namespace madp::problems {

namespace {

StateSpace glycemic_space(const GlycemicParams& p) {
    return StateSpace({p.lo[0], p.lo[1], p.lo[2], p.lo[3]}, {p.hi[0], p.hi[1], p.hi[2], p.hi[3]});
}

int clamp_int(int x, int lo, int hi) { return std::min(std::max(x, lo), hi); }

class GlycemicKernel : public TransitionKernel {
public:
    explicit GlycemicKernel(const GlycemicParams& p) : p_(p) {}

    bool has_exact() const override { return true; }
    bool has_sampling() const override { return true; }

    void outcomes(int, const StateVector& s, Action a, std::vector<Outcome>& out) const override {
        out.clear();
        const JointPmf& eff = p_.effect[static_cast<std::size_t>(a)];
        out.reserve(eff.size());
        for (std::size_t i = 0; i < eff.size(); ++i) {
            out.push_back({apply(s, eff.offsets[i]), eff.probs[i]});
        }
    }

    StateVector sample(int, const StateVector& s, Action a, RngStream& rng) const override {
        return apply(s, p_.effect[static_cast<std::size_t>(a)].sample(rng));
    }

private:
    StateVector apply(const StateVector& s, const StateVector& off) const {
        StateVector next = StateVector::zeros(4);
        for (int k = 0; k < 4; ++k) {
            next[k] = clamp_int(s[k] + off[k], p_.lo[static_cast<std::size_t>(k)],
                                p_.hi[static_cast<std::size_t>(k)]);
        }
        return next;
    }

    GlycemicParams p_;
};

struct TreatmentRow {
    std::array<double, 3> mean;
    std::array<double, 6> cov; // aa, bb, cc, ab, ac, bc
    std::vector<std::int64_t> side_values;
    std::vector<double> side_probs;
};

const std::array<TreatmentRow, 5>& treatment_table() {
    static const std::array<TreatmentRow, 5> rows{{
        {{30, 3, 2}, {25, 8, 8, 0.8, 0.5, 0.2}, {-1, 0}, {0.8, 0.2}},
        {{-25, -1, 3}, {100, 16, 25, 1.2, 0.5, 0.2}, {0, 1, 2}, {0.8, 0.1, 0.1}},
        {{-45, -3, 5}, {100, 16, 25, 1.2, 0.5, 0.1}, {0, 1, 2}, {0.75, 0.15, 0.1}},
        {{-10, -1, -1}, {81, 10, 16, 0.6, 0.5, 0.5}, {0, 1, 2}, {0.8, 0.1, 0.1}},
        {{-10, -1, -4}, {81, 10, 16, 1.2, 0.5, 0.5}, {0, 1, 2}, {0.7, 0.2, 0.1}},
    }};
    return rows;
}

void build_effects(GlycemicParams& p) {
    p.effect.clear();
    const std::vector<std::int64_t> widths{p.hi[0] - p.lo[0], p.hi[1] - p.lo[1],
                                           p.hi[2] - p.lo[2], p.hi[3] - p.lo[3]};
    for (const TreatmentRow& row : treatment_table()) {
        const std::array<std::array<double, 3>, 3> cov{{
            {row.cov[0], row.cov[3], row.cov[4]},
            {row.cov[3], row.cov[1], row.cov[5]},
            {row.cov[4], row.cov[5], row.cov[2]},
        }};
        const JointPmf health = discretize_mvn3(row.mean, cov);
        const DiscretePmf side = DiscretePmf::from_weights(row.side_values, row.side_probs);
        p.effect.push_back(health.product(side).clamped(widths));
    }
}

} // namespace

GlycemicParams GlycemicParams::standard(double cost) {
    GlycemicParams p;
    p.treatment_cost = cost;
    build_effects(p);
    return p;
}

GlycemicParams GlycemicParams::reduced(int range_width) const {
    GlycemicParams p = *this;
    for (std::size_t k = 0; k < 4; ++k) {
        p.hi[k] = std::min(hi[k], lo[k] + range_width);
    }
    build_effects(p);
    return p;
}

double GlycemicParams::health_utility(const StateVector& s) const {
    double u = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double arg =
            std::max(static_cast<double>(utility_ceiling[static_cast<std::size_t>(k)] - s[k]), 1.0);
        u += utility_scale[static_cast<std::size_t>(k)] * std::log(arg);
    }
    return u + side_effect_slope * s[3];
}

GlycemicModel::GlycemicModel(GlycemicParams params)
    : MdpModel(params.horizon, glycemic_space(params), std::make_unique<GlycemicKernel>(params),
               // Utilities are nonincreasing per dimension, so the corners
               // bound the stage contribution; the zero terminal slice must
               // fit inside the declared range too.
               std::min(0.0, params.health_utility(StateVector{params.hi[0], params.hi[1],
                                                               params.hi[2], params.hi[3]}) -
                                 params.treatment_cost),
               std::max(0.0, params.health_utility(StateVector{params.lo[0], params.lo[1],
                                                               params.lo[2], params.lo[3]}))),
      params_(std::move(params)) {
    if (static_cast<int>(params_.effect.size()) != params_.treatments) {
        throw UsageError("glycemic: one effect distribution per treatment required");
    }
    for (const JointPmf& e : params_.effect) e.validate();
}

void GlycemicModel::actions(int, const StateVector&, std::vector<Action>& out) const {
    out.clear();
    for (int a = 0; a < params_.treatments; ++a) out.push_back(a);
}

double GlycemicModel::contribution(int, const StateVector& s, Action a) const {
    return params_.health_utility(s) - (a != 0 ? params_.treatment_cost : 0.0);
}

double GlycemicModel::terminal_contribution(const StateVector&) const { return 0.0; }

StateVector GlycemicModel::start_state() const {
    return StateVector{params_.hi[0], params_.hi[1], params_.hi[2], params_.lo[3]};
}

GlycemicInstance build_glycemic_instance(const GlycemicParams& params) {
    return {std::make_shared<GlycemicModel>(params), PartialOrderSpec::reversed_componentwise()};
}

} // namespace madp::problems
