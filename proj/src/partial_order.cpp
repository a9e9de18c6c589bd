#include "madp/partial_order.hpp"

namespace madp {

namespace {

std::vector<StateVector> step_neighbors(const PartialOrderSpec& order, const StateSpace& space,
                                        const StateVector& s, int direction) {
    if (!space.contains(s)) {
        throw BoundsError("immediate neighbors: state " + s.to_string() + " outside the space");
    }
    // "Lower" means one step down the order. For the reversed kind that is
    // one coordinate increment.
    const int step = order.kind() == OrderKind::ReversedComponentwise ? -direction : direction;
    std::vector<StateVector> out;
    for (int k = 0; k < space.dims(); ++k) {
        if (!order.dim_is_ordered(k)) continue;
        const int c = s[k] + step;
        if (c < space.lo(k) || c > space.hi(k)) continue;
        StateVector n = s;
        n[k] = c;
        out.push_back(n);
    }
    return out;
}

} // namespace

std::vector<StateVector> lower_immediate_neighbors(const PartialOrderSpec& order,
                                                   const StateSpace& space,
                                                   const StateVector& s) {
    return step_neighbors(order, space, s, -1);
}

std::vector<StateVector> upper_immediate_neighbors(const PartialOrderSpec& order,
                                                   const StateSpace& space,
                                                   const StateVector& s) {
    return step_neighbors(order, space, s, +1);
}

} // namespace madp
