#include "madp/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <array>

namespace madp {

namespace {

struct Box {
    std::array<int, kMaxDims> lo;
    std::array<int, kMaxDims> hi;
};

/// Coordinate box of states comparable to s on its upper side (above == true)
/// or lower side. For the generalized kind the environment block is pinned.
Box comparable_cone(const PartialOrderSpec& order, const StateSpace& space, const StateVector& s,
                    bool above) {
    // Under the reversed order, "above s in the order" is componentwise
    // below, so the coordinate sweep flips.
    const bool coord_up = (order.kind() == OrderKind::ReversedComponentwise) ? !above : above;
    Box box{};
    for (int k = 0; k < space.dims(); ++k) {
        if (!order.dim_is_ordered(k)) {
            box.lo[static_cast<std::size_t>(k)] = s[k];
            box.hi[static_cast<std::size_t>(k)] = s[k];
        } else if (coord_up) {
            box.lo[static_cast<std::size_t>(k)] = s[k];
            box.hi[static_cast<std::size_t>(k)] = space.hi(k);
        } else {
            box.lo[static_cast<std::size_t>(k)] = space.lo(k);
            box.hi[static_cast<std::size_t>(k)] = s[k];
        }
    }
    return box;
}

/// Visits each flat index in the coordinate box, odometer order.
template <class F>
void for_each_flat_in_box(const StateSpace& space, const Box& box, F&& f) {
    const int dims = space.dims();
    std::array<int, kMaxDims> c{};
    std::int64_t flat = 0;
    for (int k = 0; k < dims; ++k) {
        c[static_cast<std::size_t>(k)] = box.lo[static_cast<std::size_t>(k)];
        flat += (box.lo[static_cast<std::size_t>(k)] - space.lo(k)) * space.stride(k);
    }
    while (true) {
        f(flat);
        int k = dims - 1;
        for (; k >= 0; --k) {
            if (c[static_cast<std::size_t>(k)] < box.hi[static_cast<std::size_t>(k)]) {
                ++c[static_cast<std::size_t>(k)];
                flat += space.stride(k);
                break;
            }
            flat -= (c[static_cast<std::size_t>(k)] - box.lo[static_cast<std::size_t>(k)]) *
                    space.stride(k);
            c[static_cast<std::size_t>(k)] = box.lo[static_cast<std::size_t>(k)];
        }
        if (k < 0) break;
    }
}

void record(ViolationReport& report, std::size_t max_recorded, std::int64_t lower,
            std::int64_t upper, double gap) {
    ++report.total_count;
    report.max_gap = std::max(report.max_gap, gap);
    if (report.pairs.size() < max_recorded) {
        report.pairs.push_back({lower, upper, gap});
    }
}

} // namespace

ViolationReport check_monotone(const PartialOrderSpec& order, const StateSpace& space,
                               std::span<const double> slice, CheckMode mode,
                               std::size_t max_recorded, double min_gap) {
    if (static_cast<std::int64_t>(slice.size()) != space.cardinality()) {
        throw UsageError("check_monotone: slice length does not match the space");
    }
    ViolationReport report;
    if (mode == CheckMode::Exhaustive) {
        space.for_each_state([&](const StateVector& s, std::int64_t flat) {
            const double v = slice[static_cast<std::size_t>(flat)];
            const Box cone = comparable_cone(order, space, s, /*above=*/true);
            for_each_flat_in_box(space, cone, [&](std::int64_t other) {
                if (other == flat) return;
                const double vo = slice[static_cast<std::size_t>(other)];
                if (v - vo > min_gap) record(report, max_recorded, flat, other, v - vo);
            });
        });
    } else {
        space.for_each_state([&](const StateVector& s, std::int64_t flat) {
            const double v = slice[static_cast<std::size_t>(flat)];
            for (const StateVector& nb : lower_immediate_neighbors(order, space, s)) {
                const std::int64_t nb_flat = space.index_of(nb);
                const double vn = slice[static_cast<std::size_t>(nb_flat)];
                if (vn - v > min_gap) record(report, max_recorded, nb_flat, flat, vn - v);
            }
        });
    }
    return report;
}

ViolationReport check_monotone(const PartialOrderSpec& order, const StateSpace& space,
                               std::span<const double> slice) {
    const CheckMode mode =
        space.cardinality() <= 100000 ? CheckMode::Exhaustive : CheckMode::NeighborPairs;
    return check_monotone(order, space, slice, mode);
}

void monotone_project(const PartialOrderSpec& order, const StateSpace& space,
                      std::span<double> slice, const StateVector& s_ref, double z_ref) {
    if (static_cast<std::int64_t>(slice.size()) != space.cardinality()) {
        throw UsageError("monotone_project: slice length does not match the space");
    }
    if (!std::isfinite(z_ref)) throw UsageError("monotone_project: z_ref must be finite");
    const std::int64_t ref = space.index_of(s_ref);

    const Box up = comparable_cone(order, space, s_ref, /*above=*/true);
    for_each_flat_in_box(space, up, [&](std::int64_t flat) {
        if (flat == ref) return;
        double& v = slice[static_cast<std::size_t>(flat)];
        v = std::max(v, z_ref);
    });
    const Box down = comparable_cone(order, space, s_ref, /*above=*/false);
    for_each_flat_in_box(space, down, [&](std::int64_t flat) {
        if (flat == ref) return;
        double& v = slice[static_cast<std::size_t>(flat)];
        v = std::min(v, z_ref);
    });
    slice[static_cast<std::size_t>(ref)] = z_ref;
}

} // namespace madp
