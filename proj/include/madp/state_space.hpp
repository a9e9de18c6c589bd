#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "madp/errors.hpp"

namespace madp {

/// Hard cap on state dimensionality (largest instance is 7-D; state-action
/// tables append one more dimension).
inline constexpr int kMaxDims = 8;

/// Fixed-capacity integer coordinate tuple. Value type, cheap to copy.
class StateVector {
public:
    StateVector() = default;

    StateVector(std::initializer_list<int> coords) {
        if (coords.size() > static_cast<std::size_t>(kMaxDims)) {
            throw UsageError("StateVector: more than " + std::to_string(kMaxDims) + " dimensions");
        }
        for (int v : coords) c_[n_++] = v;
    }

    static StateVector zeros(int dims) {
        if (dims < 0 || dims > kMaxDims) throw UsageError("StateVector: bad dimension count");
        StateVector s;
        s.n_ = static_cast<std::int8_t>(dims);
        return s;
    }

    int size() const { return n_; }
    std::int32_t operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    std::int32_t& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

    /// Copy with one more trailing coordinate.
    StateVector appended(std::int32_t coord) const {
        if (n_ >= kMaxDims) throw UsageError("StateVector: dimension cap exceeded");
        StateVector s = *this;
        s.c_[s.n_++] = coord;
        return s;
    }

    /// Copy without the trailing coordinate.
    StateVector without_last() const {
        if (n_ == 0) throw UsageError("StateVector: empty");
        StateVector s = *this;
        --s.n_;
        return s;
    }

    bool operator==(const StateVector& o) const {
        if (n_ != o.n_) return false;
        for (int k = 0; k < n_; ++k) {
            if (c_[static_cast<std::size_t>(k)] != o.c_[static_cast<std::size_t>(k)]) return false;
        }
        return true;
    }
    bool operator!=(const StateVector& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string out = "(";
        for (int k = 0; k < n_; ++k) {
            if (k > 0) out += ",";
            out += std::to_string(c_[static_cast<std::size_t>(k)]);
        }
        return out + ")";
    }

private:
    std::array<std::int32_t, kMaxDims> c_{};
    std::int8_t n_ = 0;
};

/// Box of integer vectors: per-dimension inclusive bounds with row-major
/// flat indexing (last dimension fastest). index_of/state_of are mutually
/// inverse bijections onto [0, cardinality).
class StateSpace {
public:
    StateSpace(std::vector<int> lo, std::vector<int> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_.size() != hi_.size() || lo_.empty()) {
            throw UsageError("StateSpace: lo/hi must be nonempty and equal length");
        }
        if (lo_.size() > static_cast<std::size_t>(kMaxDims)) {
            throw UsageError("StateSpace: more than " + std::to_string(kMaxDims) + " dimensions");
        }
        for (std::size_t k = 0; k < lo_.size(); ++k) {
            if (lo_[k] > hi_[k]) {
                throw UsageError("StateSpace: lo > hi in dimension " + std::to_string(k));
            }
        }
        strides_.assign(lo_.size(), 1);
        cardinality_ = 1;
        for (int k = static_cast<int>(lo_.size()) - 1; k >= 0; --k) {
            strides_[static_cast<std::size_t>(k)] = cardinality_;
            cardinality_ *= extent(k);
        }
    }

    int dims() const { return static_cast<int>(lo_.size()); }
    int lo(int k) const { return lo_[static_cast<std::size_t>(k)]; }
    int hi(int k) const { return hi_[static_cast<std::size_t>(k)]; }
    std::int64_t extent(int k) const { return hi(k) - lo(k) + 1; }
    std::int64_t stride(int k) const { return strides_[static_cast<std::size_t>(k)]; }
    std::int64_t cardinality() const { return cardinality_; }

    bool contains(const StateVector& s) const {
        if (s.size() != dims()) return false;
        for (int k = 0; k < dims(); ++k) {
            if (s[k] < lo(k) || s[k] > hi(k)) return false;
        }
        return true;
    }

    std::int64_t index_of(const StateVector& s) const {
        if (s.size() != dims()) {
            throw UsageError("index_of: state has " + std::to_string(s.size()) +
                             " coordinates, space has " + std::to_string(dims()));
        }
        std::int64_t idx = 0;
        for (int k = 0; k < dims(); ++k) {
            if (s[k] < lo(k) || s[k] > hi(k)) {
                throw BoundsError("index_of: coordinate " + std::to_string(s[k]) +
                                  " outside [" + std::to_string(lo(k)) + "," +
                                  std::to_string(hi(k)) + "] in dimension " + std::to_string(k));
            }
            idx += (s[k] - lo(k)) * stride(k);
        }
        return idx;
    }

    StateVector state_of(std::int64_t index) const {
        if (index < 0 || index >= cardinality_) {
            throw BoundsError("state_of: index " + std::to_string(index) + " outside [0," +
                              std::to_string(cardinality_) + ")");
        }
        StateVector s = StateVector::zeros(dims());
        for (int k = 0; k < dims(); ++k) {
            s[k] = static_cast<std::int32_t>(lo(k) + index / stride(k));
            index %= stride(k);
        }
        return s;
    }

    StateVector lower_corner() const {
        StateVector s = StateVector::zeros(dims());
        for (int k = 0; k < dims(); ++k) s[k] = lo(k);
        return s;
    }

    StateVector upper_corner() const {
        StateVector s = StateVector::zeros(dims());
        for (int k = 0; k < dims(); ++k) s[k] = hi(k);
        return s;
    }

    StateSpace appended(int dim_lo, int dim_hi) const {
        std::vector<int> lo = lo_, hi = hi_;
        lo.push_back(dim_lo);
        hi.push_back(dim_hi);
        return StateSpace(std::move(lo), std::move(hi));
    }

    bool operator==(const StateSpace& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

    /// Visits every state in flat-index order. F is called as f(state, flat).
    template <class F>
    void for_each_state(F&& f) const {
        StateVector s = lower_corner();
        const std::int64_t n = cardinality_;
        for (std::int64_t idx = 0; idx < n; ++idx) {
            f(static_cast<const StateVector&>(s), idx);
            for (int k = dims() - 1; k >= 0; --k) {
                if (s[k] < hi(k)) {
                    ++s[k];
                    break;
                }
                s[k] = lo(k);
            }
        }
    }

private:
    std::vector<int> lo_, hi_;
    std::vector<std::int64_t> strides_;
    std::int64_t cardinality_ = 0;
};

} // namespace madp
