#pragma once

#include <array>
#include <functional>
#include <vector>

#include "madp/rng.hpp"
#include "madp/state_space.hpp"

namespace madp::problems {

/// Finite distribution over distinct integer outcomes. The discretization
/// target for every noise process in the benchmark problems.
struct DiscretePmf {
    std::vector<std::int64_t> values;
    std::vector<double> probs;
    std::vector<double> cdf; // inclusive running sums, last entry 1

    /// Builds from nonnegative weights, normalizing to total mass 1.
    /// Duplicate values are merged. Throws DegenerateInputError when the
    /// total mass is not positive.
    static DiscretePmf from_weights(std::vector<std::int64_t> values,
                                    std::vector<double> weights);

    std::size_t size() const { return values.size(); }
    double total() const { return cdf.empty() ? 0.0 : cdf.back(); }
    void validate(double tol = 1e-12) const;

    std::int64_t sample(RngStream& rng) const;

    /// Values mapped through clamp(v, lo, hi), merging collapsed outcomes.
    /// Clamping a noise offset to the width of its target box is exact:
    /// every state in the box lands on the same next state either way.
    DiscretePmf clamped(std::int64_t lo, std::int64_t hi) const;
};

/// probs[i] = density(grid[i]) / sum_j density(grid[j]).
DiscretePmf discretize_density(const std::function<double(double)>& density,
                               const std::vector<std::int64_t>& grid);

/// Normal(mean, stddev^2) discretized on {-half_width, ..., +half_width}.
DiscretePmf discretize_normal(double mean, double stddev, std::int64_t half_width);

/// Discrete uniform on {-half_width, ..., +half_width}.
DiscretePmf uniform_offsets(std::int64_t half_width);

/// Distribution of X + Y for independent X, Y.
DiscretePmf convolve(const DiscretePmf& x, const DiscretePmf& y);

/// Distribution of X + B * Y with B ~ Bernoulli(p_extra) independent:
/// (1 - p) * pmf(X) + p * pmf(X + Y).
DiscretePmf mixture_with_jump(const DiscretePmf& base, double p_extra, const DiscretePmf& jump);

/// Finite distribution over small integer offset vectors.
struct JointPmf {
    int dims = 0;
    std::vector<StateVector> offsets;
    std::vector<double> probs;
    std::vector<double> cdf;

    static JointPmf from_weights(int dims, std::vector<StateVector> offsets,
                                 std::vector<double> weights);

    std::size_t size() const { return offsets.size(); }
    void validate(double tol = 1e-12) const;
    const StateVector& sample(RngStream& rng) const;

    /// Appends an independent scalar dimension (product distribution).
    JointPmf product(const DiscretePmf& extra) const;

    /// Per-dimension clamp of the offsets to [-width_k, width_k], merging
    /// collapsed outcomes; exact for additive transitions clamped to a box
    /// of those widths.
    JointPmf clamped(const std::vector<std::int64_t>& widths) const;

    /// Marginal pmf of one dimension (weights summed over the rest).
    DiscretePmf marginal(int dim) const;
};

/// Trivariate normal discretized as the normalized joint density over the
/// integer product grid spanning mean_i +- 3 sqrt(cov_ii) per dimension.
/// Throws UsageError if the covariance is not symmetric positive-definite.
JointPmf discretize_mvn3(const std::array<double, 3>& mean,
                         const std::array<std::array<double, 3>, 3>& cov);

} // namespace madp::problems
