#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ftsmfc/types.hpp"

namespace ftsmfc {

// Parameters of the Hölder-continuous gain
//
//     g(e) = (x - scale) / (x + scale),   x = (e^T W e)^(1 - 1/exponent)
//
// shared by the disturbance observers (D), the tracking law (C) and the
// output filter (B). exponent lies in ]1,2[, scale > 0, W is symmetric
// positive definite (identity when not given, or a scalar multiple of it).
class HolderGainParams {
public:
    HolderGainParams(double exponent, double scale);
    HolderGainParams(double exponent, double scale, Matrix weight);

    // W = weight * I of whatever dimension the error has.
    static HolderGainParams with_scalar_weight(double exponent, double scale, double weight);

    double exponent() const noexcept { return exponent_; }
    double scale() const noexcept { return scale_; }
    const std::optional<Matrix>& weight() const noexcept { return weight_; }
    double scalar_weight() const noexcept { return scalar_weight_; }

    // 1 - 1/exponent, in ]0, 1/2[.
    double power() const noexcept { return 1.0 - 1.0 / exponent_; }

    // e^T W e. Throws DimensionError if a matrix weight does not match e.
    double quadratic_form(const Vector& e) const;

private:
    double exponent_;
    double scale_;
    double scalar_weight_ = 1.0;
    std::optional<Matrix> weight_;
};

// q^a with an explicit zero branch; q >= 0.
inline double holder_power(double q, double a) {
    return q == 0.0 ? 0.0 : std::exp(a * std::log(q));
}

// Gain value in [-1, 1); exactly -1 at e = 0. Throws DomainError for non-finite e.
double holder_gain(const Vector& e, const HolderGainParams& params);

// Same formula evaluated from the quadratic form q = e^T W e directly.
double holder_gain_from_quadratic(double q, const HolderGainParams& params);

// Lyapunov decrement function gamma(V) = 4 scale V^(2a) / (V^a + scale)^2, a = 1 - 1/exponent.
double gamma_of_V(double V, const HolderGainParams& params);

// rho (observer) / sigma (tracking) radius for a gain value g in [-1, 1):
// zeta = 1 - g^2 and rho = zeta / (1 - sqrt(1 - zeta)), evaluated as 1 + sqrt(1 - zeta).
double robustness_radius(double gain_value);
double robustness_radius_from_zeta(double zeta);

struct LyapunovTrace {
    std::vector<double> values;
    double alpha = 0.5;
    double eta = 1.0;

    // Non-negative values, and zero is absorbing.
    bool is_well_formed() const;
};

// One step of V_{j+1} = max(0, V_j - eta V_j^alpha).
inline double fts_step(double V, double eta, double alpha) {
    if (V <= 0.0) return 0.0;
    const double next = V - eta * std::exp(alpha * std::log(V));
    return next > 0.0 ? next : 0.0;
}

struct FtsRecursionResult {
    LyapunovTrace trace;
    // First index with V = 0; empty if not reached within max_steps.
    std::optional<std::size_t> settle_index;
};

FtsRecursionResult fts_recursion(double V0, double eta, double alpha, std::size_t max_steps);

// Streaming form of fts_recursion: calls visit(V_k) for k = 0, 1, ... and stops
// after the first zero or after max_steps steps. Returns the settle index.
template <class Visit>
std::optional<std::size_t> fts_recursion_visit(double V0, double eta, double alpha, std::size_t max_steps,
                                               Visit&& visit) {
    double V = V0;
    visit(V);
    for (std::size_t k = 0; k < max_steps; ++k) {
        if (V == 0.0) return k;
        V = fts_step(V, eta, alpha);
        visit(V);
    }
    if (V == 0.0) return max_steps;
    return std::nullopt;
}

using GammaFn = std::function<double(double)>;

// Online check of the finite-time-stability conditions on a Lyapunov sequence:
//   V_{k+1} <= max(0, V_k - gamma(V_k) V_k^alpha)     (decrement)
//   gamma(V) >= epsilon^(1 - alpha) whenever V >= epsilon  (gain)
// The non-negativity projection covers the final step, where the unprojected
// bound is negative and the sequence lands on 0.
class FtsConditionMonitor {
public:
    FtsConditionMonitor(GammaFn gamma, double alpha, double epsilon);

    void push(double V);

    bool holds() const noexcept { return decrement_ok_ && gain_ok_; }
    bool decrement_ok() const noexcept { return decrement_ok_; }
    bool gain_ok() const noexcept { return gain_ok_; }
    std::size_t count() const noexcept { return count_; }
    // Smallest slack seen in the decrement inequality (negative when violated).
    double worst_decrement_margin() const noexcept { return worst_decrement_margin_; }

private:
    GammaFn gamma_;
    double alpha_;
    double epsilon_;
    double gain_floor_;
    std::optional<double> prev_;
    std::size_t count_ = 0;
    bool decrement_ok_ = true;
    bool gain_ok_ = true;
    double worst_decrement_margin_ = INFINITY;
};

// Relative tolerance applied to floating rounding in the decrement check.
inline constexpr double kDecrementRelTol = 1e-12;

// Online Hölder check |V_i - V_j| / |i-j|^h <= epsilon + epsilon |i-j|, h = 1/(1-alpha).
//
// Valid for non-increasing sequences whose decrements are non-increasing (all
// traces of fts_recursion): the largest difference at gap g is then V_0 - V_g,
// so only pairs anchored at index 0 are examined. Sequences that break that
// shape are reported through shape_ok().
class HolderMonitor {
public:
    HolderMonitor(double alpha, double epsilon);

    void push(double V);

    bool holds() const noexcept { return shape_ok_ && bound_ok_; }
    bool shape_ok() const noexcept { return shape_ok_; }
    bool bound_ok() const noexcept { return bound_ok_; }
    // Smallest (bound - ratio) seen; negative when violated.
    double worst_margin() const noexcept { return worst_margin_; }
    std::size_t count() const noexcept { return count_; }

private:
    double exponent_;
    double epsilon_;
    double first_ = 0.0;
    double prev_ = 0.0;
    double prev_decrement_ = INFINITY;
    std::size_t count_ = 0;
    bool shape_ok_ = true;
    bool bound_ok_ = true;
    double worst_margin_ = INFINITY;
};

// Slack added to epsilon in the Hölder bound at index gap g.
inline double holder_slack(double epsilon, double gap) { return epsilon * gap; }

bool verify_fts_condition(const LyapunovTrace& trace, const GammaFn& gamma, double epsilon);

bool verify_holder_continuity(const LyapunovTrace& trace, double epsilon);

}  // namespace ftsmfc
