#include "ftsmfc/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ftsmfc/errors.hpp"
#include "ftsmfc/fts_core.hpp"
#include "ftsmfc/plant_models.hpp"
#include "ftsmfc/simulation.hpp"
#include "ftsmfc/tracking_control.hpp"

namespace ftsmfc {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(Rng& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

Vector random_direction(Rng& rng, Index n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    double norm = 0.0;
    do {
        for (Index i = 0; i < n; ++i) v(i) = normal(rng);
        norm = v.norm();
    } while (!(norm > 0.0));
    return v / norm;
}

Matrix design_G() {
    Matrix G(2, 2);
    G << 0.559, 0.196, 0.196, 0.657;
    return 0.01 * G;
}

HolderGainParams observer_gains() { return HolderGainParams(9.0 / 7.0, 1.5); }
HolderGainParams control_gains() { return HolderGainParams(11.0 / 9.0, 0.35); }

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(6) << v;
    return ss.str();
}

PropertyResult make(std::string name) {
    PropertyResult r;
    r.property = std::move(name);
    r.worst_margin = std::numeric_limits<double>::infinity();
    return r;
}

void finish(PropertyResult& r) {
    r.passed = r.worst_margin >= 0.0;
}

// Synthetic closed-loop configuration: nu = 1, filter and noise off, dt = 1.
SimConfig synthetic_config(SyntheticSpec spec, ObserverOrder order, ControlLaw law, std::size_t steps) {
    SimConfig c = reference_config();
    c.plant.kind = PlantKind::Synthetic;
    c.controller.G = spec.G;
    c.plant.synthetic = std::move(spec);
    c.dt = 1.0;
    c.T = static_cast<double>(steps);
    c.controller.law = law;
    c.observer.order = order;
    c.filter.enabled = false;
    c.filter.initial_estimate = Vector();
    c.noise.enabled = false;
    c.desired.source = DesiredSource::Constant;
    c.desired.value = Vector::Zero(2);
    c.observer.F_hat0 = Vector::Zero(2);
    c.metrics.band = Vector::Constant(2, 0.5);
    return c;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.passed; });
}

std::vector<PropertyResult> check_lyapunov_recursion(const RecursionOptions& opt) {
    Rng rng(opt.seed);
    PropertyResult reach = make("lemma1: recursion reaches exactly 0 within the c-sequence bound");
    PropertyResult fts = make("lemma1: trace satisfies the FTS condition, eps = eta^(1/(1-alpha))");
    PropertyResult hold = make("holder: trace is Holder continuous with exponent 1/(1-alpha)");
    std::size_t holder_fail = 0;
    std::size_t max_n = 0;

    for (std::size_t s = 0; s < opt.samples; ++s) {
        const double V0 = log_uniform(rng, 1e-6, 1e6);
        const double eta = log_uniform(rng, 1e-3, 10.0);
        const double alpha = uniform(rng, 0.05, 0.95);
        const double eps = std::pow(eta, 1.0 / (1.0 - alpha));
        const double bound = std::ceil(std::pow(V0, 1.0 - alpha) / ((1.0 - alpha) * eta));
        const auto cap = static_cast<std::size_t>(bound) + 1;

        FtsConditionMonitor fmon([eta](double) { return eta; }, alpha, eps);
        HolderMonitor hmon(alpha, eps);
        const auto N = fts_recursion_visit(V0, eta, alpha, cap, [&](double V) {
            if (opt.fts_condition) fmon.push(V);
            if (opt.holder) hmon.push(V);
        });

        ++reach.samples;
        if (N) {
            max_n = std::max(max_n, *N);
            reach.worst_margin = std::min(reach.worst_margin, (bound - static_cast<double>(*N)) / bound);
        } else {
            reach.worst_margin = std::min(reach.worst_margin, -1.0);
        }
        if (opt.fts_condition) {
            ++fts.samples;
            const double m = fmon.holds() ? std::max(0.0, fmon.worst_decrement_margin()) : std::min(-1e-300, fmon.worst_decrement_margin());
            fts.worst_margin = std::min(fts.worst_margin, m);
        }
        if (opt.holder) {
            ++hold.samples;
            const double m = hmon.worst_margin() / eps;  // relative to epsilon
            if (!hmon.holds()) ++holder_fail;
            hold.worst_margin = std::min(hold.worst_margin, hmon.holds() ? std::max(0.0, m) : std::min(-1e-300, m));
        }
    }
    finish(reach);
    reach.note = "largest N = " + std::to_string(max_n);
    std::vector<PropertyResult> out{reach};
    if (opt.fts_condition) {
        finish(fts);
        out.push_back(fts);
    }
    if (opt.holder) {
        finish(hold);
        hold.note = std::to_string(holder_fail) + " of " + std::to_string(hold.samples) +
                    " traces exceed eps + eps*|i-j| (margin relative to eps)";
        out.push_back(hold);
    }
    return out;
}

PropertyResult check_gamma_identity(std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r = make("gamma: gamma(V) = (1 - g(e)^2) V^(1-1/r) with e^T e = V");
    for (std::size_t s = 0; s < samples; ++s) {
        const double V = s == 0 ? 0.0 : log_uniform(rng, 1e-6, 1e6);
        const HolderGainParams p(uniform(rng, 1.0 + 1e-6, 2.0 - 1e-6), log_uniform(rng, 0.1, 10.0));
        const Vector e = std::sqrt(V) * random_direction(rng, 2);
        const double g = holder_gain(e, p);
        const double lhs = gamma_of_V(V, p);
        const double rhs = (1.0 - g * g) * holder_power(e.squaredNorm(), p.power());
        const double tol = 1e-12 * std::max(1.0, lhs);
        r.worst_margin = std::min(r.worst_margin, (tol - std::abs(lhs - rhs)) / tol);
        ++r.samples;
    }
    finish(r);
    r.note = "V log-uniform in [1e-6, 1e6], lambda in [0.1, 10]; margin relative to tolerance";
    return r;
}

PropertyResult check_gamma_boundary(std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r = make("gamma: gamma(V) <= lambda iff V <= lambda^(1/(1-1/r))");
    for (std::size_t s = 0; s < samples; ++s) {
        // r >= 1.01 keeps V* = lambda^(1/(1-1/r)) inside double range
        const HolderGainParams p(uniform(rng, 1.01, 2.0 - 1e-6), log_uniform(rng, 0.1, 10.0));
        const double lam = p.scale();
        const double Vstar = std::pow(lam, 1.0 / p.power());
        const double at = gamma_of_V(Vstar, p);
        const double tol = 1e-12 * lam;
        r.worst_margin = std::min(r.worst_margin, (tol - std::abs(at - lam)) / tol);
        const double V = Vstar * log_uniform(rng, 1e-3, 1e3);
        if (std::abs(V / Vstar - 1.0) > 1e-9) {
            const bool below = gamma_of_V(V, p) <= lam;
            if (below != (V <= Vstar)) r.worst_margin = std::min(r.worst_margin, -1.0);
        }
        ++r.samples;
    }
    finish(r);
    return r;
}

PropertyResult check_rho(std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r = make("rho: 1 + sqrt(1 - zeta) equals zeta / (1 - sqrt(1 - zeta)), range [1, 2]");
    for (std::size_t s = 0; s < samples; ++s) {
        double zeta = log_uniform(rng, 1e-6, 1.0);
        if (s == 0) zeta = 1.0;
        if (s == 1) zeta = 1e-6;
        const double stable = robustness_radius_from_zeta(zeta);
        // quotient form with 1 - sqrt(1 - zeta) = -expm1(log1p(-zeta) / 2)
        const double quotient = zeta / -std::expm1(0.5 * std::log1p(-zeta));
        const double tol = 1e-12 * quotient;
        double m = (tol - std::abs(stable - quotient)) / tol;
        if (!(stable >= 1.0 && stable <= 2.0)) m = -1.0;
        r.worst_margin = std::min(r.worst_margin, m);
        ++r.samples;
    }
    const double lim = robustness_radius(-1.0);
    if (lim != 2.0) r.worst_margin = -1.0;
    finish(r);
    r.note = "zeta log-uniform in [1e-6, 1]; rho(g = -1) = " + fmt(lim);
    return r;
}

PropertyResult check_gain_shape(std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r = make("gain: D(0) = C(0) = B(0) = -1, g < 1, non-decreasing in ||e||");
    const HolderGainParams filt = HolderGainParams::with_scalar_weight(7.0 / 5.0, 2.0, 2.1);
    for (const auto& p : {observer_gains(), control_gains(), filt}) {
        for (Index n = 1; n <= 4; ++n) {
            if (holder_gain(Vector::Zero(n), p) != -1.0) r.worst_margin = -1.0;
        }
    }
    for (std::size_t s = 0; s < samples; ++s) {
        const HolderGainParams p(uniform(rng, 1.0 + 1e-6, 2.0 - 1e-6), log_uniform(rng, 0.1, 10.0));
        const Vector dir = random_direction(rng, 3);
        const double a = log_uniform(rng, 1e-8, 1e8);
        const double b = a * log_uniform(rng, 1.0, 10.0);
        const double ga = holder_gain(a * dir, p), gb = holder_gain(b * dir, p);
        r.worst_margin = std::min(r.worst_margin, gb - ga + 0.0);
        if (!(ga < 1.0 && gb < 1.0 && ga >= -1.0)) r.worst_margin = -1.0;
        ++r.samples;
    }
    finish(r);
    return r;
}

PropertyResult check_observer_identity(ObserverOrder order, std::size_t steps, std::uint64_t seed) {
    Rng rng(seed);
    const bool first = order == ObserverOrder::First;
    PropertyResult r = make(first ? "observer1: e_{k+1} = D(e_k) e_k - dF_k agrees with the state update"
                                  : "observer2: e_{k+1} = D(e_k) e_k + D(eD_{k-1}) eD_{k-1} - d2F_k agrees with the state update");
    const HolderGainParams p = observer_gains();
    for (int trial = 0; trial < 10; ++trial) {
        SyntheticSpec spec;
        spec.kind = SyntheticKind::Sinusoid;
        spec.offset = random_direction(rng, 2) * uniform(rng, 0.0, 5.0);
        spec.amplitude = Vector::Constant(2, uniform(rng, 0.1, 2.0));
        spec.omega = uniform(rng, 0.01, 0.5);
        spec.G = design_G();
        const SyntheticUlmPlant plant(spec);
        const Vector F_hat0 = random_direction(rng, 2) * uniform(rng, 0.0, 10.0);

        FirstOrderObserverState s1(F_hat0, p);
        SecondOrderObserverState s2(F_hat0, p, p);
        for (std::size_t k = 0; k < steps; ++k) {
            const Vector Fk = plant.F_at(static_cast<std::int64_t>(k));
            const Vector Fn = plant.F_at(static_cast<std::int64_t>(k) + 1);
            Vector direct, recursion;
            if (first) {
                const Vector e = s1.F_hat - Fk;
                s1 = first_order_update(s1, Fk);
                direct = s1.F_hat - Fn;
                recursion = holder_gain(e, p) * e - (Fn - Fk);
            } else {
                const Vector e = s2.F_hat - Fk;
                s2 = second_order_update(s2, Fk);
                if (k == 0) continue;  // first-order bootstrap step
                const Vector Fp = plant.F_at(static_cast<std::int64_t>(k) - 1);
                const Vector& eD = s2.e_delta_prev;
                direct = s2.F_hat - Fn;
                recursion = holder_gain(e, p) * e + holder_gain(eD, p) * eD - (Fn - 2.0 * Fk + Fp);
            }
            const double tol = 1e-12 * std::max(1.0, direct.norm());
            r.worst_margin = std::min(r.worst_margin, (tol - (direct - recursion).norm()) / tol);
            ++r.samples;
        }
    }
    finish(r);
    return r;
}

PropertyResult check_constant_rejection(ObserverOrder order, ControlLaw law, std::size_t trials,
                                        std::size_t max_steps, double tol, std::uint64_t seed,
                                        std::size_t measure_cap) {
    Rng rng(seed);
    std::ostringstream name;
    name << (order == ObserverOrder::First ? "observer1" : "observer2") << " + "
         << (law == ControlLaw::Fts ? "fts" : "basic") << " law: constant F rejected to " << tol << " within "
         << max_steps << " steps";
    PropertyResult r = make(name.str());
    const std::size_t cap = std::max(max_steps, measure_cap);
    std::size_t worst = 0;
    bool unreached = false;
    for (std::size_t t = 0; t < trials; ++t) {
        const double norm = t == 0 ? 10.0 : log_uniform(rng, 1e-2, 10.0);
        SyntheticSpec spec;
        spec.kind = SyntheticKind::Constant;
        spec.offset = norm * random_direction(rng, 2);
        spec.G = design_G();
        const SimLog log = run_closed_loop(synthetic_config(spec, order, law, cap));

        // last record outside the tolerance
        std::size_t settle = log.records.size();
        for (std::size_t k = log.records.size(); k-- > 0;) {
            const auto& rec = log.records[k];
            const bool fin = rec.e_F.allFinite();
            if (!fin || rec.e_F.norm() >= tol || rec.e_y.norm() >= tol) {
                settle = k + 1;
                break;
            }
            settle = k;
        }
        if (settle >= log.records.size()) {
            unreached = true;
            worst = cap + 1;
        } else {
            worst = std::max(worst, settle);
        }
        ++r.samples;
    }
    r.worst_margin = static_cast<double>(max_steps) - static_cast<double>(worst);
    finish(r);
    r.note = unreached ? "not reached within " + std::to_string(cap) + " steps"
                       : "slowest trial needs " + std::to_string(worst) + " steps";
    return r;
}

PropertyResult check_ramp_rejection(std::size_t trials, std::size_t max_steps, double tol, std::uint64_t seed,
                                    std::size_t measure_cap) {
    Rng rng(seed);
    std::ostringstream name;
    name << "observer2: affine F, e^Delta then e^F below " << tol << " within " << max_steps << " steps";
    PropertyResult r = make(name.str());
    const HolderGainParams p = observer_gains();
    const std::size_t cap = std::max(max_steps, measure_cap);
    std::size_t worst = 0, worst_delta = 0;
    bool unreached = false;
    for (std::size_t t = 0; t < trials; ++t) {
        Vector d(2);
        if (t == 0) {
            d << 0.01, -0.02;
        } else {
            d = uniform(rng, 1e-3, 0.1) * random_direction(rng, 2);
        }
        const Vector F0 = uniform(rng, 0.0, 5.0) * random_direction(rng, 2);
        const Vector F_hat0 = uniform(rng, 0.0, 10.0) * random_direction(rng, 2);
        SecondOrderObserverState s(F_hat0, p, p);
        std::size_t k_delta = 0, k_F = 0;
        bool delta_done = false, done = false;
        for (std::size_t k = 0; k < cap && !done; ++k) {
            const Vector Fk = F0 + static_cast<double>(k) * d;
            s = second_order_update(s, Fk);
            const Vector eF = s.F_hat - (Fk + d);
            if (k >= 1 && !delta_done && s.e_delta_prev.norm() < tol) {
                delta_done = true;
                k_delta = k;
            }
            if (delta_done && eF.norm() < tol) {
                done = true;
                k_F = k + 1;
            }
        }
        if (!done) {
            unreached = true;
            worst = cap + 1;
        } else {
            worst = std::max(worst, k_F);
            worst_delta = std::max(worst_delta, k_delta);
        }
        ++r.samples;
    }
    r.worst_margin = static_cast<double>(max_steps) - static_cast<double>(worst);
    finish(r);
    r.note = unreached ? "not reached within " + std::to_string(cap) + " steps"
                       : "slowest trial: e^Delta after " + std::to_string(worst_delta) + " steps, e^F after " +
                             std::to_string(worst) + " steps";
    return r;
}

PropertyResult check_closed_loop_identity(ControlLaw law, std::size_t steps, std::uint64_t seed) {
    Rng rng(seed);
    const bool fts = law == ControlLaw::Fts;
    PropertyResult r = make(fts ? "control: e^y_{k+1} + e^F_k = C(e^y_k) e^y_k in closed loop"
                                : "control: e^y_{k+1} = -e^F_k in closed loop");
    const HolderGainParams cp = control_gains();
    for (int trial = 0; trial < 8; ++trial) {
        SyntheticSpec spec;
        spec.kind = trial % 2 ? SyntheticKind::Sinusoid : SyntheticKind::RandomWalk;
        spec.offset = uniform(rng, 0.0, 5.0) * random_direction(rng, 2);
        spec.amplitude = Vector::Constant(2, uniform(rng, 0.1, 2.0));
        spec.omega = uniform(rng, 0.01, 0.5);
        spec.bound = 0.1;
        spec.seed = seed + static_cast<std::uint64_t>(trial);
        spec.G = design_G();
        spec.y_init = uniform(rng, 0.0, 3.0) * random_direction(rng, 2);
        const ObserverOrder order = trial < 4 ? ObserverOrder::First : ObserverOrder::Second;
        SimConfig cfg = synthetic_config(spec, order, law, steps);
        cfg.desired.value = uniform(rng, 0.0, 3.0) * random_direction(rng, 2);
        const SimLog log = run_closed_loop(cfg);
        for (std::size_t k = 0; k + 1 < log.records.size(); ++k) {
            const Vector& ey = log.records[k].e_y;
            const Vector& ey_next = log.records[k + 1].e_y;
            const Vector& eF = log.records[k + 1].e_F;  // estimate held for index k minus F_k
            const Vector rhs = fts ? Vector(holder_gain(ey, cp) * ey) : Vector(Vector::Zero(2));
            const Vector lhs = ey_next + eF;
            const double scale = std::max({1.0, ey_next.norm(), eF.norm(), rhs.norm()});
            const double tol = 1e-10 * scale;
            r.worst_margin = std::min(r.worst_margin, (tol - (lhs - rhs).norm()) / tol);
            ++r.samples;
        }
    }
    finish(r);
    return r;
}

PropertyResult check_solve_input(std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    PropertyResult r = make("control: solve_input residual <= 1e-10 ||rhs||");
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t s = 0; s < samples; ++s) {
        const Index n = 1 + static_cast<Index>(s % 4);
        const Index m = n + static_cast<Index>((s / 4) % 3);
        Matrix G(n, m);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < m; ++j) G(i, j) = normal(rng);
        }
        G *= log_uniform(rng, 1e-3, 1e3);
        Vector rhs(n);
        for (Index i = 0; i < n; ++i) rhs(i) = normal(rng);
        Vector u;
        try {
            u = solve_input(G, rhs);
        } catch (const SingularMatrixError&) {
            continue;
        }
        const double tol = 1e-10 * rhs.norm();
        r.worst_margin = std::min(r.worst_margin, (tol - (G * u - rhs).norm()) / tol);
        ++r.samples;
    }
    finish(r);
    return r;
}

PropertyResult check_observer_neighborhood(const std::vector<double>& bounds, std::size_t trials,
                                           std::size_t post_steps, std::uint64_t seed) {
    PropertyResult r = make("robustness: observer error stays in {rho ||e|| <= B} after entry, ||dF|| = B");
    const HolderGainParams p = observer_gains();
    std::size_t violations = 0, runs_with_violation = 0, never = 0;
    for (const double B : bounds) {
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng(seed + 7919 * t);
            SyntheticSpec spec;
            spec.kind = SyntheticKind::RandomWalk;
            spec.offset = uniform(rng, -1.0, 1.0) * random_direction(rng, 2);
            spec.bound = B;
            spec.seed = seed + t;
            spec.G = design_G();
            const SyntheticUlmPlant plant(spec);
            FirstOrderObserverState s(Vector::Zero(2), p);
            std::int64_t k = 0;
            const std::int64_t entry_cap = 1000000;
            bool entered = false;
            for (; k < entry_cap; ++k) {
                const Vector e = s.F_hat - plant.F_at(k);
                if (neighborhood_measure(e, p) <= B) {
                    entered = true;
                    break;
                }
                s = first_order_update(s, plant.F_at(k));
            }
            ++r.samples;
            if (!entered) {
                ++never;
                r.worst_margin = std::min(r.worst_margin, -1.0);
                continue;
            }
            std::size_t v = 0;
            for (std::size_t i = 0; i < post_steps; ++i) {
                s = first_order_update(s, plant.F_at(k));
                ++k;
                const double meas = neighborhood_measure(s.F_hat - plant.F_at(k), p);
                r.worst_margin = std::min(r.worst_margin, (B - meas) / B);
                if (meas > B) ++v;
            }
            violations += v;
            if (v) ++runs_with_violation;
        }
    }
    finish(r);
    r.note = std::to_string(runs_with_violation) + " of " + std::to_string(r.samples) + " runs leave the set, " +
             std::to_string(violations) + " violating steps; " + std::to_string(never) +
             " runs never enter (margin relative to B)";
    return r;
}

PropertyResult check_tracking_neighborhood(const std::vector<double>& bounds, std::size_t trials,
                                           std::size_t post_steps, std::uint64_t seed) {
    PropertyResult r = make("robustness: tracking error enters {sigma ||e|| <= B} and stays, ||e^F|| = B");
    const HolderGainParams p = control_gains();
    std::size_t violations = 0, runs_with_violation = 0, never = 0;
    std::int64_t latest_entry = 0;
    for (const double B : bounds) {
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng(seed + 104729 * t + static_cast<std::uint64_t>(B * 1e6));
            Vector e = log_uniform(rng, 1e-2, 10.0) * random_direction(rng, 2);
            std::int64_t k = 0;
            const std::int64_t entry_cap = 1000000;
            bool entered = false;
            for (; k < entry_cap; ++k) {
                if (neighborhood_measure(e, p) <= B) {
                    entered = true;
                    break;
                }
                e = holder_gain(e, p) * e - B * random_direction(rng, 2);
            }
            ++r.samples;
            if (!entered) {
                ++never;
                r.worst_margin = std::min(r.worst_margin, -1.0);
                continue;
            }
            latest_entry = std::max(latest_entry, k);
            std::size_t v = 0;
            for (std::size_t i = 0; i < post_steps; ++i) {
                e = holder_gain(e, p) * e - B * random_direction(rng, 2);
                const double meas = neighborhood_measure(e, p);
                r.worst_margin = std::min(r.worst_margin, (B - meas) / B);
                if (meas > B) ++v;
            }
            violations += v;
            if (v) ++runs_with_violation;
        }
    }
    finish(r);
    r.note = "entry finite in " + std::to_string(r.samples - never) + " of " + std::to_string(r.samples) +
             " runs (latest step " + std::to_string(latest_entry) + "); " + std::to_string(runs_with_violation) +
             " runs leave the set, " + std::to_string(violations) + " violating steps (margin relative to B)";
    return r;
}

const std::vector<std::string>& suite_selectors() {
    static const std::vector<std::string> s{"lemma1", "holder",   "gamma",   "rho",
                                            "observer1", "observer2", "control", "robustness"};
    return s;
}

SuiteReport run_suite(const std::string& selector) {
    SuiteReport rep;
    rep.selector = selector;
    auto& P = rep.properties;
    if (selector == "lemma1") {
        P = check_lyapunov_recursion({10000, 11, true, false});
    } else if (selector == "holder") {
        auto res = check_lyapunov_recursion({10000, 11, false, true});
        P.push_back(res.back());
    } else if (selector == "gamma") {
        P.push_back(check_gamma_identity(1000000, 21));
        P.push_back(check_gamma_boundary(100000, 22));
        P.push_back(check_gain_shape(100000, 23));
    } else if (selector == "rho") {
        P.push_back(check_rho(1000000, 31));
    } else if (selector == "observer1") {
        P.push_back(check_observer_identity(ObserverOrder::First, 2000, 41));
        P.push_back(check_constant_rejection(ObserverOrder::First, ControlLaw::Fts, 10, 500, 1e-12, 42));
    } else if (selector == "observer2") {
        P.push_back(check_observer_identity(ObserverOrder::Second, 2000, 51));
        P.push_back(check_ramp_rejection(10, 1000, 1e-9, 52));
    } else if (selector == "control") {
        P.push_back(check_solve_input(10000, 61));
        P.push_back(check_closed_loop_identity(ControlLaw::Basic, 2000, 62));
        P.push_back(check_closed_loop_identity(ControlLaw::Fts, 2000, 63));
        P.push_back(check_constant_rejection(ObserverOrder::First, ControlLaw::Fts, 10, 500, 1e-9, 64));
    } else if (selector == "robustness") {
        P.push_back(check_observer_neighborhood({0.01, 0.1, 1.0}, 100, 10000, 71));
        P.push_back(check_tracking_neighborhood({0.01, 0.1, 1.0}, 100, 10000, 72));
    } else {
        throw std::invalid_argument("unknown suite '" + selector + "'");
    }
    return rep;
}

void print_property(const PropertyResult& r, std::ostream& out) {
    out << (r.passed ? "PASS" : "FAIL") << "  " << r.property << "  samples=" << r.samples
        << "  worst_margin=" << fmt(r.worst_margin);
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << '\n';
}

void print_report(const SuiteReport& report, std::ostream& out) {
    out << "suite " << report.selector << '\n';
    for (const auto& r : report.properties) {
        out << "  ";
        print_property(r, out);
    }
    out << "result " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace ftsmfc
