#include "madp/problems/storage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace madp::problems {

namespace {

constexpr int kShift = 4; // 4 bits per component, values <= 8 everywhere

enum Dim { R = 0, E = 1, P = 2, D = 3 };

StateSpace storage_space(const StorageParams& p) {
    return StateSpace({0, p.e_min, p.p_min, p.d_min}, {p.r_max, p.e_max, p.p_max, p.d_max});
}

int clamp_int(int x, int lo, int hi) { return std::min(std::max(x, lo), hi); }

class StorageKernel : public TransitionKernel {
public:
    explicit StorageKernel(const StorageParams& p) : p_(p) {
        // Offsets clamp-aggregated to the box widths once; exact for every
        // state, and it merges the long price-jump tails.
        supply_ = p.supply_noise.clamped(-(p.e_max - p.e_min), p.e_max - p.e_min);
        price_ = p.price_noise.clamped(-(p.p_max - p.p_min), p.p_max - p.p_min);
        // Demand is regenerated each period around the seasonal level, so
        // the next-demand distribution depends on t only.
        for (int t_next = 1; t_next <= p.horizon; ++t_next) {
            const int base = p.seasonal_demand_level(t_next);
            std::vector<std::int64_t> v;
            for (std::int64_t off : p.demand_noise.values) {
                v.push_back(clamp_int(base + static_cast<int>(off), p.d_min, p.d_max));
            }
            demand_.push_back(DiscretePmf::from_weights(std::move(v), p.demand_noise.probs));
        }
    }

    bool has_exact() const override { return true; }
    bool has_sampling() const override { return true; }

    void outcomes(int t, const StateVector& s, Action a, std::vector<Outcome>& out) const override {
        out.clear();
        const StorageAction x = decode_storage_action(a);
        const int r_next = s[R] - x.rd + x.er - x.rm;
        const DiscretePmf& dem = demand_[static_cast<std::size_t>(t)];
        StateVector next = StateVector::zeros(4);
        next[R] = r_next;
        for (std::size_t i = 0; i < supply_.size(); ++i) {
            next[E] = clamp_int(s[E] + static_cast<int>(supply_.values[i]), p_.e_min, p_.e_max);
            for (std::size_t j = 0; j < price_.size(); ++j) {
                next[P] =
                    clamp_int(s[P] + static_cast<int>(price_.values[j]), p_.p_min, p_.p_max);
                const double pe = supply_.probs[i] * price_.probs[j];
                for (std::size_t k = 0; k < dem.size(); ++k) {
                    next[D] = static_cast<int>(dem.values[k]);
                    out.push_back({next, pe * dem.probs[k]});
                }
            }
        }
    }

    StateVector sample(int t, const StateVector& s, Action a, RngStream& rng) const override {
        const StorageAction x = decode_storage_action(a);
        StateVector next = StateVector::zeros(4);
        next[R] = s[R] - x.rd + x.er - x.rm;
        next[E] = clamp_int(s[E] + static_cast<int>(supply_.sample(rng)), p_.e_min, p_.e_max);
        next[P] = clamp_int(s[P] + static_cast<int>(price_.sample(rng)), p_.p_min, p_.p_max);
        next[D] = static_cast<int>(demand_[static_cast<std::size_t>(t)].sample(rng));
        return next;
    }

private:
    StorageParams p_;
    DiscretePmf supply_;
    DiscretePmf price_;
    std::vector<DiscretePmf> demand_; // indexed by current t
};

} // namespace

Action encode_storage_action(const StorageAction& x) {
    return static_cast<Action>(x.ed | (x.md << kShift) | (x.rd << (2 * kShift)) |
                               (x.er << (3 * kShift)) | (x.rm << (4 * kShift)));
}

StorageAction decode_storage_action(Action a) {
    const int mask = (1 << kShift) - 1;
    return {a & mask, (a >> kShift) & mask, (a >> (2 * kShift)) & mask, (a >> (3 * kShift)) & mask,
            (a >> (4 * kShift)) & mask};
}

StorageParams StorageParams::s1() {
    StorageParams p;
    p.r_max = 30;
    p.supply_noise = uniform_offsets(1);
    p.price_noise =
        mixture_with_jump(discretize_normal(0.0, 2.5, 8), p.jump_prob, discretize_normal(0.0, 50.0, 40));
    p.demand_noise = discretize_normal(0.0, 2.0, 2);
    return p;
}

StorageParams StorageParams::s2() {
    StorageParams p = s1();
    p.r_max = 50;
    p.supply_noise = discretize_normal(0.0, 3.0, 5);
    return p;
}

StorageParams StorageParams::reduced(int r_max_small, int range_width) const {
    StorageParams p = *this;
    p.r_max = r_max_small;
    p.e_max = std::min(e_max, e_min + range_width);
    p.p_max = std::min(p_max, p_min + range_width);
    p.d_max = std::min(d_max, d_min + range_width);
    return p;
}

int StorageParams::seasonal_demand_level(int t_next) const {
    return static_cast<int>(std::floor(
        3.0 - 4.0 * std::sin(2.0 * std::numbers::pi * t_next / horizon)));
}

void enumerate_storage_actions(const StorageParams& params, const StateVector& s,
                               std::vector<Action>& out) {
    out.clear();
    const int r = s[R], e = s[E], d = s[D];
    const int dis_cap = std::min(r, params.gamma_d);
    const int er_cap = std::min(params.r_max - r, params.gamma_c);
    for (int ed = 0; ed <= std::min(d, e); ++ed) {
        const int md_lo = std::max(0, d - ed - dis_cap);
        for (int md = md_lo; md <= d - ed; ++md) {
            const int rd = d - ed - md;
            const int er_hi = std::min(e - ed, er_cap);
            for (int er = 0; er <= er_hi; ++er) {
                for (int rm = 0; rm <= dis_cap - rd; ++rm) {
                    out.push_back(encode_storage_action({ed, md, rd, er, rm}));
                }
            }
        }
    }
}

std::int64_t count_storage_actions(const StorageParams& params, const StateVector& s) {
    const int r = s[R], e = s[E], d = s[D];
    const int dis_cap = std::min(r, params.gamma_d);
    const int er_cap = std::min(params.r_max - r, params.gamma_c);
    std::int64_t n = 0;
    for (int ed = 0; ed <= std::min(d, e); ++ed) {
        const int er_cnt = std::min(e - ed, er_cap) + 1;
        const int md_lo = std::max(0, d - ed - dis_cap);
        for (int md = md_lo; md <= d - ed; ++md) {
            const int rd = d - ed - md;
            n += static_cast<std::int64_t>(dis_cap - rd + 1) * er_cnt;
        }
    }
    return n;
}

StorageModel::StorageModel(StorageParams params)
    : MdpModel(params.horizon, storage_space(params), std::make_unique<StorageKernel>(params),
               0.0,
               // md <= D keeps D + rm - md nonnegative, so the price caps it.
               static_cast<double>(params.p_max) * (params.d_max + params.gamma_d)),
      params_(std::move(params)) {
    params_.supply_noise.validate();
    params_.price_noise.validate();
    params_.demand_noise.validate();
}

void StorageModel::actions(int, const StateVector& s, std::vector<Action>& out) const {
    enumerate_storage_actions(params_, s, out);
}

double StorageModel::contribution(int, const StateVector& s, Action a) const {
    const StorageAction x = decode_storage_action(a);
    return static_cast<double>(s[P]) * (s[D] + x.rm - x.md);
}

double StorageModel::terminal_contribution(const StateVector&) const { return 0.0; }

StorageInstance build_storage_instance(const StorageParams& params) {
    return {std::make_shared<StorageModel>(params), PartialOrderSpec::componentwise()};
}

} // namespace madp::problems
