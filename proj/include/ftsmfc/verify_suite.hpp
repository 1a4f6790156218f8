#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ftsmfc/config.hpp"
#include "ftsmfc/ulm_observer.hpp"

namespace ftsmfc {

// Margins are signed slack: >= 0 satisfied, < 0 violated.
struct PropertyResult {
    std::string property;
    std::size_t samples = 0;
    double worst_margin = 0.0;
    bool passed = false;
    std::string note;
};

struct SuiteReport {
    std::string selector;
    std::vector<PropertyResult> properties;

    bool passed() const;
};

const std::vector<std::string>& suite_selectors();

// Throws std::invalid_argument for an unknown selector.
SuiteReport run_suite(const std::string& selector);

void print_report(const SuiteReport& report, std::ostream& out);
void print_property(const PropertyResult& r, std::ostream& out);

// ---------------------------------------------------------------------------
// Individual properties (fixed seeds in the suites; parameters exposed for tests)
// ---------------------------------------------------------------------------

// Random (V0, eta, alpha): V0 log-uniform in [1e-6, 1e6], eta log-uniform in
// [1e-3, 10], alpha uniform in [0.05, 0.95], epsilon = eta^(1/(1-alpha)).
struct RecursionOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    bool fts_condition = true;
    bool holder = true;
};

// Up to three results: reaches 0 within ceil(V0^(1-alpha) / ((1-alpha) eta)),
// FTS condition, Hölder continuity.
std::vector<PropertyResult> check_lyapunov_recursion(const RecursionOptions& opt);

// |gamma(V) - (1 - g^2) V^a| <= 1e-12 max(1, gamma), e^T e = V.
PropertyResult check_gamma_identity(std::size_t samples, std::uint64_t seed);

// gamma(V*) = lambda at V* = lambda^(1/a), and gamma <= lambda exactly below V*.
PropertyResult check_gamma_boundary(std::size_t samples, std::uint64_t seed);

// 1 + sqrt(1 - zeta) against the quotient form for zeta in [1e-6, 1]; range [1, 2].
PropertyResult check_rho(std::size_t samples, std::uint64_t seed);

// D(0) = C(0) = B(0) = -1 exactly, gain < 1, non-decreasing in ||e||.
PropertyResult check_gain_shape(std::size_t samples, std::uint64_t seed);

// State update against the closed-form error recursion on a sinusoidal F.
PropertyResult check_observer_identity(ObserverOrder order, std::size_t steps, std::uint64_t seed);

// Closed loop on a constant-F synthetic plant (nu = 1, noise and filter off):
// steps until ||e^F|| and ||e^y|| stay below tol. Passes when every trial
// needs at most max_steps; measurement continues to measure_cap.
PropertyResult check_constant_rejection(ObserverOrder order, ControlLaw law, std::size_t trials,
                                        std::size_t max_steps, double tol, std::uint64_t seed,
                                        std::size_t measure_cap = 100000);

// Second-order observer on affine F: steps until ||e^Delta|| < tol and then ||e^F|| < tol.
PropertyResult check_ramp_rejection(std::size_t trials, std::size_t max_steps, double tol, std::uint64_t seed,
                                    std::size_t measure_cap = 100000);

// Closed-loop error identities on synthetic nu = 1 plants, tolerance 1e-10 per step:
// basic:  e^y_{k+1} = -e^F_k;   fts:  e^y_{k+1} + e^F_k = C(e^y_k) e^y_k.
PropertyResult check_closed_loop_identity(ControlLaw law, std::size_t steps, std::uint64_t seed);

// Residual ||G u - rhs|| <= 1e-10 ||rhs|| for random square and wide G.
PropertyResult check_solve_input(std::size_t samples, std::uint64_t seed);

// Observer on random-walk F with ||dF|| = B: after the first entry into
// {rho ||e|| <= B}, membership must hold for post_steps further steps.
PropertyResult check_observer_neighborhood(const std::vector<double>& bounds, std::size_t trials,
                                           std::size_t post_steps, std::uint64_t seed);

// Tracking recursion e_{k+1} = C(e_k) e_k - e^F_k with injected ||e^F_k|| = B:
// entry into {sigma ||e|| <= B} must be finite and membership must persist.
PropertyResult check_tracking_neighborhood(const std::vector<double>& bounds, std::size_t trials,
                                           std::size_t post_steps, std::uint64_t seed);

}  // namespace ftsmfc
