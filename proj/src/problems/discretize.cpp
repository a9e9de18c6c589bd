#include "madp/problems/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "madp/errors.hpp"

namespace madp::problems {

namespace {

std::vector<double> running_sums(const std::vector<double>& probs) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    return cdf;
}

std::size_t sample_index(const std::vector<double>& cdf, RngStream& rng) {
    const double u = rng.uniform01() * cdf.back();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

} // namespace

DiscretePmf DiscretePmf::from_weights(std::vector<std::int64_t> values,
                                      std::vector<double> weights) {
    if (values.size() != weights.size() || values.empty()) {
        throw UsageError("DiscretePmf: values and weights must be nonempty and equal length");
    }
    std::map<std::int64_t, double> merged;
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] < 0.0 || !std::isfinite(weights[i])) {
            throw DegenerateInputError("DiscretePmf: negative or non-finite weight");
        }
        merged[values[i]] += weights[i];
        total += weights[i];
    }
    if (!(total > 0.0)) {
        throw DegenerateInputError("DiscretePmf: density has no mass on the grid");
    }
    DiscretePmf pmf;
    for (const auto& [v, w] : merged) {
        pmf.values.push_back(v);
        pmf.probs.push_back(w / total);
    }
    pmf.cdf = running_sums(pmf.probs);
    return pmf;
}

void DiscretePmf::validate(double tol) const {
    if (values.size() != probs.size() || values.empty()) {
        throw ModelError("DiscretePmf: malformed");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw ModelError("DiscretePmf: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > tol) {
        throw ModelError("DiscretePmf: probabilities sum to " + std::to_string(total));
    }
}

std::int64_t DiscretePmf::sample(RngStream& rng) const {
    return values[sample_index(cdf, rng)];
}

DiscretePmf DiscretePmf::clamped(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> v;
    v.reserve(values.size());
    for (std::int64_t x : values) v.push_back(std::clamp(x, lo, hi));
    return from_weights(std::move(v), probs);
}

DiscretePmf discretize_density(const std::function<double(double)>& density,
                               const std::vector<std::int64_t>& grid) {
    if (grid.empty()) throw UsageError("discretize_density: empty grid");
    std::vector<double> w;
    w.reserve(grid.size());
    for (std::int64_t x : grid) {
        const double d = density(static_cast<double>(x));
        if (d < 0.0 || !std::isfinite(d)) {
            throw DegenerateInputError("discretize_density: density must be nonnegative and finite");
        }
        w.push_back(d);
    }
    return DiscretePmf::from_weights(grid, std::move(w));
}

DiscretePmf discretize_normal(double mean, double stddev, std::int64_t half_width) {
    std::vector<std::int64_t> grid;
    for (std::int64_t x = -half_width; x <= half_width; ++x) grid.push_back(x);
    const double inv2var = 1.0 / (2.0 * stddev * stddev);
    return discretize_density(
        [mean, inv2var](double x) { return std::exp(-(x - mean) * (x - mean) * inv2var); }, grid);
}

DiscretePmf uniform_offsets(std::int64_t half_width) {
    std::vector<std::int64_t> grid;
    std::vector<double> w;
    for (std::int64_t x = -half_width; x <= half_width; ++x) {
        grid.push_back(x);
        w.push_back(1.0);
    }
    return DiscretePmf::from_weights(std::move(grid), std::move(w));
}

DiscretePmf convolve(const DiscretePmf& x, const DiscretePmf& y) {
    std::map<std::int64_t, double> sum;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            sum[x.values[i] + y.values[j]] += x.probs[i] * y.probs[j];
        }
    }
    std::vector<std::int64_t> v;
    std::vector<double> w;
    for (const auto& [val, p] : sum) {
        v.push_back(val);
        w.push_back(p);
    }
    return DiscretePmf::from_weights(std::move(v), std::move(w));
}

DiscretePmf mixture_with_jump(const DiscretePmf& base, double p_extra, const DiscretePmf& jump) {
    if (!(p_extra >= 0.0 && p_extra <= 1.0)) {
        throw UsageError("mixture_with_jump: mixing probability outside [0,1]");
    }
    const DiscretePmf shifted = convolve(base, jump);
    std::map<std::int64_t, double> sum;
    for (std::size_t i = 0; i < base.size(); ++i) {
        sum[base.values[i]] += (1.0 - p_extra) * base.probs[i];
    }
    for (std::size_t i = 0; i < shifted.size(); ++i) {
        sum[shifted.values[i]] += p_extra * shifted.probs[i];
    }
    std::vector<std::int64_t> v;
    std::vector<double> w;
    for (const auto& [val, p] : sum) {
        v.push_back(val);
        w.push_back(p);
    }
    return DiscretePmf::from_weights(std::move(v), std::move(w));
}

namespace {

struct VecLess {
    bool operator()(const StateVector& a, const StateVector& b) const {
        for (int k = 0; k < a.size(); ++k) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return false;
    }
};

JointPmf joint_from_map(int dims, const std::map<StateVector, double, VecLess>& merged) {
    JointPmf pmf;
    pmf.dims = dims;
    double total = 0.0;
    for (const auto& [v, w] : merged) total += w;
    if (!(total > 0.0)) throw DegenerateInputError("JointPmf: no mass");
    for (const auto& [v, w] : merged) {
        pmf.offsets.push_back(v);
        pmf.probs.push_back(w / total);
    }
    pmf.cdf = running_sums(pmf.probs);
    return pmf;
}

} // namespace

JointPmf JointPmf::from_weights(int dims, std::vector<StateVector> offsets,
                                std::vector<double> weights) {
    if (offsets.size() != weights.size() || offsets.empty()) {
        throw UsageError("JointPmf: offsets and weights must be nonempty and equal length");
    }
    std::map<StateVector, double, VecLess> merged;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (offsets[i].size() != dims) throw UsageError("JointPmf: inconsistent dimensions");
        if (weights[i] < 0.0 || !std::isfinite(weights[i])) {
            throw DegenerateInputError("JointPmf: negative or non-finite weight");
        }
        merged[offsets[i]] += weights[i];
    }
    return joint_from_map(dims, merged);
}

void JointPmf::validate(double tol) const {
    if (offsets.size() != probs.size() || offsets.empty()) throw ModelError("JointPmf: malformed");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw ModelError("JointPmf: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > tol) {
        throw ModelError("JointPmf: probabilities sum to " + std::to_string(total));
    }
}

const StateVector& JointPmf::sample(RngStream& rng) const {
    return offsets[sample_index(cdf, rng)];
}

JointPmf JointPmf::product(const DiscretePmf& extra) const {
    std::map<StateVector, double, VecLess> merged;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        for (std::size_t j = 0; j < extra.size(); ++j) {
            merged[offsets[i].appended(static_cast<std::int32_t>(extra.values[j]))] +=
                probs[i] * extra.probs[j];
        }
    }
    return joint_from_map(dims + 1, merged);
}

JointPmf JointPmf::clamped(const std::vector<std::int64_t>& widths) const {
    if (static_cast<int>(widths.size()) != dims) {
        throw UsageError("JointPmf::clamped: width per dimension required");
    }
    std::map<StateVector, double, VecLess> merged;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        StateVector v = offsets[i];
        for (int k = 0; k < dims; ++k) {
            const std::int64_t w = widths[static_cast<std::size_t>(k)];
            v[k] = static_cast<std::int32_t>(
                std::clamp<std::int64_t>(v[k], -w, w));
        }
        merged[v] += probs[i];
    }
    return joint_from_map(dims, merged);
}

DiscretePmf JointPmf::marginal(int dim) const {
    std::map<std::int64_t, double> sum;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        sum[offsets[i][dim]] += probs[i];
    }
    std::vector<std::int64_t> v;
    std::vector<double> w;
    for (const auto& [val, p] : sum) {
        v.push_back(val);
        w.push_back(p);
    }
    return DiscretePmf::from_weights(std::move(v), std::move(w));
}

JointPmf discretize_mvn3(const std::array<double, 3>& mean,
                         const std::array<std::array<double, 3>, 3>& cov) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                cov[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                throw UsageError("discretize_mvn3: covariance must be symmetric");
            }
        }
    }
    // Cholesky cov = L L^T; failure means not positive-definite.
    double l[3][3] = {};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
            if (i == j) {
                if (sum <= 0.0) {
                    throw UsageError("discretize_mvn3: covariance is not positive-definite");
                }
                l[i][i] = std::sqrt(sum);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    // Quadratic form via forward substitution: q = ||L^{ -1 }(x - mean)||^2.
    const auto quad = [&](const std::array<double, 3>& d) {
        double y0 = d[0] / l[0][0];
        double y1 = (d[1] - l[1][0] * y0) / l[1][1];
        double y2 = (d[2] - l[2][0] * y0 - l[2][1] * y1) / l[2][2];
        return y0 * y0 + y1 * y1 + y2 * y2;
    };

    std::array<std::int64_t, 3> lo{}, hi{};
    for (int i = 0; i < 3; ++i) {
        const double half = 3.0 * std::sqrt(cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
        lo[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(mean[static_cast<std::size_t>(i)] - half));
        hi[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(mean[static_cast<std::size_t>(i)] + half));
    }
    std::vector<StateVector> offsets;
    std::vector<double> weights;
    for (std::int64_t a = lo[0]; a <= hi[0]; ++a) {
        for (std::int64_t b = lo[1]; b <= hi[1]; ++b) {
            for (std::int64_t c = lo[2]; c <= hi[2]; ++c) {
                const std::array<double, 3> d{static_cast<double>(a) - mean[0],
                                              static_cast<double>(b) - mean[1],
                                              static_cast<double>(c) - mean[2]};
                offsets.push_back(StateVector{static_cast<int>(a), static_cast<int>(b),
                                              static_cast<int>(c)});
                weights.push_back(std::exp(-0.5 * quad(d)));
            }
        }
    }
    return JointPmf::from_weights(3, std::move(offsets), std::move(weights));
}

} // namespace madp::problems
