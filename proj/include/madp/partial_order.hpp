#pragma once

#include <algorithm>
#include <vector>

#include "madp/state_space.hpp"

namespace madp {

enum class OrderKind {
    Componentwise,
    GeneralizedComponentwise,
    ReversedComponentwise,
};

enum class Comparison { Less, Equal, Greater, Incomparable };

/// Partial order on state vectors. Componentwise: s ⪯ s' iff s ≤ s'
/// elementwise. Generalized componentwise: states are comparable only when
/// the environment block matches, and ordered by the primary block.
/// Reversed componentwise: componentwise with the direction flipped.
class PartialOrderSpec {
public:
    static PartialOrderSpec componentwise() { return PartialOrderSpec(OrderKind::Componentwise); }

    static PartialOrderSpec reversed_componentwise() {
        return PartialOrderSpec(OrderKind::ReversedComponentwise);
    }

    static PartialOrderSpec generalized(std::vector<int> primary_dims,
                                        std::vector<int> environment_dims) {
        PartialOrderSpec o(OrderKind::GeneralizedComponentwise);
        o.primary_ = std::move(primary_dims);
        o.environment_ = std::move(environment_dims);
        std::vector<int> all = o.primary_;
        all.insert(all.end(), o.environment_.begin(), o.environment_.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i] != static_cast<int>(i)) {
                throw UsageError("generalized order: primary and environment blocks must "
                                 "partition dimensions 0.." + std::to_string(all.size() - 1));
            }
        }
        if (o.primary_.empty()) throw UsageError("generalized order: empty primary block");
        return o;
    }

    OrderKind kind() const { return kind_; }
    const std::vector<int>& primary_dims() const { return primary_; }
    const std::vector<int>& environment_dims() const { return environment_; }

    /// True if dimension k participates in the ordering (always true except
    /// for environment dimensions of the generalized kind, which must match
    /// exactly for two states to be comparable).
    bool dim_is_ordered(int k) const {
        if (kind_ != OrderKind::GeneralizedComponentwise) return true;
        return std::find(environment_.begin(), environment_.end(), k) == environment_.end();
    }

    Comparison compare(const StateVector& a, const StateVector& b) const {
        if (a.size() != b.size()) {
            throw UsageError("compare: dimension mismatch " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
        }
        if (kind_ == OrderKind::GeneralizedComponentwise) {
            const int n = a.size();
            if (n != static_cast<int>(primary_.size() + environment_.size())) {
                throw UsageError("compare: generalized order blocks do not cover the state");
            }
            for (int k : environment_) {
                if (a[k] != b[k]) return Comparison::Incomparable;
            }
        }
        bool some_less = false, some_greater = false;
        for (int k = 0; k < a.size(); ++k) {
            if (!dim_is_ordered(k)) continue;
            if (a[k] < b[k]) some_less = true;
            if (a[k] > b[k]) some_greater = true;
        }
        if (some_less && some_greater) return Comparison::Incomparable;
        Comparison c = some_less    ? Comparison::Less
                       : some_greater ? Comparison::Greater
                                      : Comparison::Equal;
        if (kind_ == OrderKind::ReversedComponentwise) {
            if (c == Comparison::Less) return Comparison::Greater;
            if (c == Comparison::Greater) return Comparison::Less;
        }
        return c;
    }

    bool leq(const StateVector& a, const StateVector& b) const {
        Comparison c = compare(a, b);
        return c == Comparison::Less || c == Comparison::Equal;
    }

private:
    explicit PartialOrderSpec(OrderKind kind) : kind_(kind) {}

    OrderKind kind_;
    std::vector<int> primary_;
    std::vector<int> environment_;
};

inline Comparison compare(const PartialOrderSpec& order, const StateVector& a,
                          const StateVector& b) {
    return order.compare(a, b);
}

/// States s' ⪯ s with nothing strictly between. On a box these are the
/// single-step decrements of s along ordered dimensions (increments for the
/// reversed kind).
std::vector<StateVector> lower_immediate_neighbors(const PartialOrderSpec& order,
                                                   const StateSpace& space,
                                                   const StateVector& s);

/// Exact dual of lower_immediate_neighbors.
std::vector<StateVector> upper_immediate_neighbors(const PartialOrderSpec& order,
                                                   const StateSpace& space,
                                                   const StateVector& s);

} // namespace madp
