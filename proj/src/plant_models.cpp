#include "ftsmfc/plant_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftsmfc/errors.hpp"

namespace ftsmfc {

void PendulumParams::validate() const {
    const double vals[] = {M_cart, m_pend, l_half, I_pend, g, c_x, c_theta};
    for (double v : vals) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("pendulum parameters must be finite and positive");
    }
}

LiftedPlantState LiftedPlantState::from_initial(const Eigen::Vector4d& q_qdot, double dt) {
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    LiftedPlantState s;
    s.y_prev = q_qdot.head<2>();
    s.y_curr = s.y_prev + dt * q_qdot.tail<2>();
    return s;
}

Eigen::Matrix2d mass_matrix(double theta, const PendulumParams& p) {
    const double ml = p.m_pend * p.l_half;
    const double off = -ml * std::cos(theta);
    Eigen::Matrix2d M;
    M << p.M_cart + p.m_pend, off, off, p.I_pend + ml * p.l_half;
    return M;
}

Eigen::Vector2d bias_vector(double theta, double xdot, double thetadot, const PendulumParams& p) {
    const double ml = p.m_pend * p.l_half;
    const double s = std::sin(theta);
    return {ml * thetadot * thetadot * s + p.c_x * std::tanh(xdot),
            p.c_theta * std::tanh(thetadot) - ml * p.g * s};
}

PendulumStep pendulum_step(const LiftedPlantState& state, const Eigen::Vector2d& u, double dt,
                           const PendulumParams& params) {
    if (!(dt > 0.0)) throw DomainError("pendulum_step: dt must be positive");
    if (!u.allFinite()) throw DomainError("pendulum_step: non-finite input");

    const Eigen::Matrix2d M = mass_matrix(state.y_prev(1), params);
    const double det = M.determinant();
    if (!(det > 0.0)) throw SingularMatrixError("pendulum_step: singular mass matrix");
    Eigen::Matrix2d Minv;
    Minv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
    Minv /= det;

    const Eigen::Vector2d qdot = (state.y_curr - state.y_prev) / dt;
    const Eigen::Vector2d D = bias_vector(state.y_prev(1), qdot(0), qdot(1), params);
    const double dt2 = dt * dt;

    PendulumStep out;
    out.G_true = dt2 * Minv;
    out.F_true = 2.0 * state.y_curr - state.y_prev - out.G_true * D;
    out.y_next = out.F_true + out.G_true * u;
    return out;
}

Eigen::Vector2d open_loop_input(double theta, double thetadot, const PendulumParams& p) {
    const double s = std::sin(theta);
    const double ml = p.m_pend * p.l_half;
    const double force = ml * thetadot * thetadot * s - 2.0 * (p.M_cart + p.m_pend * s * s) * p.g * s -
                         (p.M_cart + p.m_pend) * p.g * s;
    return {force, -ml * p.g * s};
}

std::size_t sample_count(double T, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("T must be non-negative");
    // 70 / 0.01 evaluates to 7000.000000000001, 0.3 / 0.1 to 2.9999999999999996
    const double ratio = T / dt;
    const double nearest = std::round(ratio);
    const double steps = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::floor(ratio);
    return static_cast<std::size_t>(steps) + 1;
}

std::vector<Vector> generate_desired_trajectory_steps(const Eigen::Vector4d& init, std::size_t steps, double dt,
                                                      const PendulumParams& params) {
    params.validate();
    if (!init.allFinite()) throw DomainError("initial state must be finite");
    LiftedPlantState s = LiftedPlantState::from_initial(init, dt);

    std::vector<Vector> out;
    out.reserve(steps + 1);
    out.emplace_back(s.y_prev);
    for (std::size_t k = 1; k <= steps; ++k) {
        out.emplace_back(s.y_curr);
        if (k == steps) break;
        const double thetadot = (s.y_curr(1) - s.y_prev(1)) / dt;
        const Eigen::Vector2d u = open_loop_input(s.y_prev(1), thetadot, params);
        const PendulumStep st = pendulum_step(s, u, dt, params);
        s.y_prev = s.y_curr;
        s.y_curr = st.y_next;
        if (!s.y_curr.allFinite() || s.y_curr.norm() > kDivergenceLimit) {
            throw DivergenceError("desired trajectory diverged at sample " + std::to_string(k + 1),
                                  static_cast<std::ptrdiff_t>(k + 1));
        }
    }
    return out;
}

std::vector<Vector> generate_desired_trajectory(const Eigen::Vector4d& init, double T, double dt,
                                                const PendulumParams& params) {
    return generate_desired_trajectory_steps(init, sample_count(T, dt) - 1, dt, params);
}

PendulumPlant::PendulumPlant(LiftedPlantState state, double dt, PendulumParams params)
    : state_(std::move(state)), dt_(dt), params_(params) {
    params_.validate();
    if (!(dt_ > 0.0)) throw DomainError("dt must be positive");
    if (!state_.y_prev.allFinite() || !state_.y_curr.allFinite()) throw DomainError("initial state must be finite");
}

void PendulumPlant::apply(const Vector& u) {
    if (u.size() != 2) throw DimensionError("pendulum input must have 2 components");
    const PendulumStep st = pendulum_step(state_, u, dt_, params_);
    state_.y_prev = state_.y_curr;
    state_.y_curr = st.y_next;
    ++k_;
}

Vector PendulumPlant::true_F() const { return pendulum_step(state_, Eigen::Vector2d::Zero(), dt_, params_).F_true; }

Matrix PendulumPlant::true_G() const { return pendulum_step(state_, Eigen::Vector2d::Zero(), dt_, params_).G_true; }

NoiseConfig NoiseConfig::off(Index n) {
    NoiseConfig c;
    c.amplitudes = Vector::Zero(n);
    c.base_freqs = Vector::Zero(n);
    c.fm_depth = Vector::Zero(n);
    c.fm_freqs = Vector::Zero(n);
    c.phases = Vector::Zero(n);
    return c;
}

void NoiseConfig::validate() const {
    const Index n = amplitudes.size();
    if (base_freqs.size() != n || fm_depth.size() != n || fm_freqs.size() != n || phases.size() != n) {
        throw DimensionError("noise config vectors must share one dimension");
    }
    if (!amplitudes.allFinite() || !base_freqs.allFinite() || !fm_depth.allFinite() || !fm_freqs.allFinite() ||
        !phases.allFinite()) {
        throw DomainError("noise config must be finite");
    }
    if ((amplitudes.array() < 0.0).any()) throw DomainError("noise amplitudes must be non-negative");
}

Vector noise_sample(double t, const NoiseConfig& cfg) {
    Vector eta(cfg.amplitudes.size());
    for (Index i = 0; i < eta.size(); ++i) {
        eta(i) = cfg.amplitudes(i) *
                 std::sin(cfg.base_freqs(i) * t + cfg.fm_depth(i) * std::sin(cfg.fm_freqs(i) * t) + cfg.phases(i));
    }
    return eta;
}

SyntheticUlmPlant::SyntheticUlmPlant(SyntheticSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
    const Index n = spec_.G.rows();
    if (n == 0 || spec_.G.cols() < n) throw DimensionError("synthetic plant: G must be n x m with m >= n");
    if (spec_.relative_degree < 1) throw DomainError("synthetic plant: relative degree must be >= 1");
    if (spec_.offset.size() == 0) spec_.offset = Vector::Zero(n);
    if (spec_.offset.size() != n) throw DimensionError("synthetic plant: offset dimension");
    switch (spec_.kind) {
        case SyntheticKind::Constant:
            break;
        case SyntheticKind::Ramp:
            if (spec_.slope.size() != n) throw DimensionError("synthetic plant: slope dimension");
            break;
        case SyntheticKind::Sinusoid:
            if (spec_.amplitude.size() != n) throw DimensionError("synthetic plant: amplitude dimension");
            break;
        case SyntheticKind::RandomWalk:
            if (!(spec_.bound > 0.0)) throw DomainError("synthetic plant: random walk needs a positive bound");
            walk_.push_back(spec_.offset);
            break;
    }
    if (spec_.y_init.size() == 0) spec_.y_init = Vector::Zero(n);
    if (spec_.y_init.size() != n) throw DimensionError("synthetic plant: initial output dimension");
    pending_.assign(static_cast<std::size_t>(spec_.relative_degree), spec_.y_init);
}

Vector SyntheticUlmPlant::F_at(std::int64_t j) const {
    if (j < 0) throw DomainError("synthetic plant: negative step index");
    const double k = static_cast<double>(j);
    switch (spec_.kind) {
        case SyntheticKind::Constant:
            return spec_.offset;
        case SyntheticKind::Ramp:
            return spec_.offset + k * spec_.slope;
        case SyntheticKind::Sinusoid:
            return spec_.offset + spec_.amplitude * std::sin(spec_.omega * k + spec_.phase);
        case SyntheticKind::RandomWalk:
            break;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    const Index n = spec_.offset.size();
    while (static_cast<std::int64_t>(walk_.size()) <= j) {
        Vector dir(n);
        double norm = 0.0;
        do {
            for (Index i = 0; i < n; ++i) dir(i) = normal(rng_);
            norm = dir.norm();
        } while (!(norm > 0.0));
        walk_.push_back(walk_.back() + (spec_.bound / norm) * dir);
    }
    return walk_[static_cast<std::size_t>(j)];
}

void SyntheticUlmPlant::apply(const Vector& u) {
    if (u.size() != spec_.G.cols()) throw DimensionError("synthetic plant: input dimension");
    if (!u.allFinite()) throw DomainError("synthetic plant: non-finite input");
    Vector y = F_at(k_) + spec_.G * u;
    pending_.erase(pending_.begin());
    pending_.push_back(std::move(y));
    ++k_;
}

std::unique_ptr<SyntheticUlmPlant> synthetic_ulm_plant(SyntheticSpec spec) {
    return std::make_unique<SyntheticUlmPlant>(std::move(spec));
}

}  // namespace ftsmfc
