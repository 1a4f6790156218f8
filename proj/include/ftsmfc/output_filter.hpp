#pragma once

#include "ftsmfc/fts_core.hpp"
#include "ftsmfc/types.hpp"

namespace ftsmfc {

// Finite-time-stable output observer run on measured outputs:
//   y_hat_{k+1} = y^m_{k+1} + B(e_k) e_k,   e_k = y_hat_k - y^m_k,
// B the Hölder gain with (p, beta, L).
struct OutputFilterState {
    Vector y_hat;
    Vector y_meas;  // measurement paired with y_hat (y^m_k)
    HolderGainParams params;

    OutputFilterState(Vector y_hat0, Vector y_meas0, HolderGainParams p)
        : y_hat(std::move(y_hat0)), y_meas(std::move(y_meas0)), params(std::move(p)) {}

    Vector error() const { return y_hat - y_meas; }
};

OutputFilterState filter_update(const OutputFilterState& state, const Vector& y_meas_next);

}  // namespace ftsmfc
