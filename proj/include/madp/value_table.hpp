#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "madp/state_space.hpp"

namespace madp {

/// Flat value function over (t, s) cells: a vector of length
/// (horizon + 1) * |S| addressable by time slice and state. Holds exact
/// tables, solver iterates, and (over a space with an appended action
/// dimension) state-action tables. Reads are safe from multiple threads;
/// writes require a single writer.
class ValueTable {
public:
    ValueTable(int horizon, StateSpace space, double fill = 0.0)
        : horizon_(horizon), space_(std::move(space)) {
        if (horizon_ < 0) throw UsageError("ValueTable: negative horizon");
        v_.assign(static_cast<std::size_t>((horizon_ + 1) * space_.cardinality()), fill);
    }

    int horizon() const { return horizon_; }
    const StateSpace& space() const { return space_; }
    std::int64_t size() const { return static_cast<std::int64_t>(v_.size()); }

    double at(int t, std::int64_t flat) const { return v_[cell(t, flat)]; }
    double& at(int t, std::int64_t flat) { return v_[cell(t, flat)]; }
    double at(int t, const StateVector& s) const { return v_[cell(t, space_.index_of(s))]; }
    double& at(int t, const StateVector& s) { return v_[cell(t, space_.index_of(s))]; }

    std::span<double> slice(int t) {
        check_t(t);
        return {v_.data() + t * space_.cardinality(), static_cast<std::size_t>(space_.cardinality())};
    }
    std::span<const double> slice(int t) const {
        check_t(t);
        return {v_.data() + t * space_.cardinality(), static_cast<std::size_t>(space_.cardinality())};
    }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    bool all_finite() const {
        for (double x : v_) {
            if (!std::isfinite(x)) return false;
        }
        return true;
    }

    /// Sup-norm distance over all (t, s) cells; tables must share shape.
    double sup_distance(const ValueTable& other) const {
        if (horizon_ != other.horizon_ || !(space_ == other.space_)) {
            throw UsageError("sup_distance: mismatched table shapes");
        }
        double d = 0.0;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            d = std::max(d, std::abs(v_[i] - other.v_[i]));
        }
        return d;
    }

    bool operator==(const ValueTable& o) const {
        return horizon_ == o.horizon_ && space_ == o.space_ && v_ == o.v_;
    }

private:
    std::size_t cell(int t, std::int64_t flat) const {
        check_t(t);
        if (flat < 0 || flat >= space_.cardinality()) {
            throw BoundsError("ValueTable: flat index out of range");
        }
        return static_cast<std::size_t>(t * space_.cardinality() + flat);
    }
    void check_t(int t) const {
        if (t < 0 || t > horizon_) {
            throw BoundsError("ValueTable: time " + std::to_string(t) + " outside [0," +
                              std::to_string(horizon_) + "]");
        }
    }

    int horizon_;
    StateSpace space_;
    std::vector<double> v_;
};

} // namespace madp
