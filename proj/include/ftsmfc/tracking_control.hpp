#pragma once

#include <cstdint>

#include "ftsmfc/fts_core.hpp"
#include "ftsmfc/types.hpp"

namespace ftsmfc {

struct ControlGains {
    HolderGainParams params;  // (s, mu)
    Matrix G;                 // designed n x m influence matrix, full row rank
    int relative_degree = 1;  // nu >= 1

    ControlGains(HolderGainParams p, Matrix g, int nu);
};

struct TrackingError {
    Vector e_y;
    std::int64_t step_index = 0;
};

// Singular values below this fraction of the largest count as rank loss.
inline constexpr double kRankTolerance = 1e-12;

// Solves G u = rhs: exact inverse for square G, minimum-norm solution
// u = G^T (G G^T)^{-1} rhs when G is wide. Throws SingularMatrixError when G
// is not of full row rank, DimensionError for tall G or mismatched sizes.
Vector solve_input(const Matrix& G, const Vector& rhs);

// G u_k = y^d_{k+nu} - F_hat_k.
Vector control_law_basic(const Vector& y_d_future, const Vector& F_hat, const ControlGains& gains);

// G u_k = y^d_{k+nu} - F_hat_k + C(e) e, e the most recent (observed) tracking error.
Vector control_law_fts(const Vector& y_d_future, const Vector& F_hat, const Vector& e_y_recent,
                       const ControlGains& gains);

// Membership in {e : sigma(e) ||e|| <= B}, sigma from the tracking gain at e.
bool in_neighborhood_y(const Vector& e_y, double bound, const HolderGainParams& params);

}  // namespace ftsmfc
