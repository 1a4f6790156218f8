#include "ftsmfc/tracking_control.hpp"

#include <string>

#include "ftsmfc/errors.hpp"
#include "ftsmfc/ulm_observer.hpp"

namespace ftsmfc {

ControlGains::ControlGains(HolderGainParams p, Matrix g, int nu)
    : params(std::move(p)), G(std::move(g)), relative_degree(nu) {
    if (nu < 1) throw DomainError("relative degree must be >= 1");
    if (G.rows() == 0 || G.cols() < G.rows()) {
        throw DimensionError("influence matrix must be n x m with m >= n");
    }
    if (!G.allFinite()) throw DomainError("influence matrix has non-finite entries");
}

Vector solve_input(const Matrix& G, const Vector& rhs) {
    if (G.rows() != rhs.size()) {
        throw DimensionError("solve_input: G has " + std::to_string(G.rows()) + " rows, rhs has " +
                             std::to_string(rhs.size()));
    }
    if (G.cols() < G.rows()) throw DimensionError("solve_input: G must have at least as many columns as rows");
    if (!rhs.allFinite()) throw DomainError("solve_input: non-finite right-hand side");

    const Eigen::JacobiSVD<Matrix> svd(G);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(sv.size() - 1) > kRankTolerance * sv(0))) {
        throw SingularMatrixError("solve_input: influence matrix is rank deficient");
    }
    if (G.rows() == G.cols()) {
        return G.partialPivLu().solve(rhs);
    }
    const Matrix GGt = G * G.transpose();
    return G.transpose() * GGt.ldlt().solve(rhs);
}

Vector control_law_basic(const Vector& y_d_future, const Vector& F_hat, const ControlGains& gains) {
    return solve_input(gains.G, y_d_future - F_hat);
}

Vector control_law_fts(const Vector& y_d_future, const Vector& F_hat, const Vector& e_y_recent,
                       const ControlGains& gains) {
    const double c = holder_gain(e_y_recent, gains.params);
    return solve_input(gains.G, y_d_future - F_hat + c * e_y_recent);
}

bool in_neighborhood_y(const Vector& e_y, double bound, const HolderGainParams& params) {
    if (!(bound > 0.0)) throw DomainError("in_neighborhood_y: bound must be positive");
    return neighborhood_measure(e_y, params) <= bound;
}

}  // namespace ftsmfc
