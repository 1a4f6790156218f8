#include "ftsmfc/output_filter.hpp"

#include "ftsmfc/errors.hpp"

namespace ftsmfc {

OutputFilterState filter_update(const OutputFilterState& state, const Vector& y_meas_next) {
    if (y_meas_next.size() != state.y_hat.size()) throw DimensionError("filter_update: dimension mismatch");
    if (!y_meas_next.allFinite()) throw DomainError("filter_update: non-finite measurement");
    const Vector e = state.error();
    OutputFilterState next = state;
    next.y_hat = y_meas_next + holder_gain(e, state.params) * e;
    next.y_meas = y_meas_next;
    return next;
}

}  // namespace ftsmfc
