#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "ftsmfc/types.hpp"

namespace ftsmfc {

// ---------------------------------------------------------------------------
// Abstract plant
// ---------------------------------------------------------------------------

// Discrete plant seen through its outputs. At step k the outputs y_k, ...,
// y_{k+nu-1} are already fixed; apply(u_k) determines y_{k+nu} and advances
// to step k+1.
class Plant {
public:
    virtual ~Plant() = default;

    virtual Index output_dim() const = 0;
    virtual Index input_dim() const = 0;
    virtual int relative_degree() const = 0;

    virtual std::int64_t step_index() const = 0;
    virtual Vector output() const = 0;
    virtual void apply(const Vector& u) = 0;

    // True pair (F, G) with y_{k+nu} = F + G u_k for the pending step (test oracle).
    virtual Vector true_F() const = 0;
    virtual Matrix true_G() const = 0;

    virtual std::unique_ptr<Plant> clone() const = 0;
};

// ---------------------------------------------------------------------------
// Inverted pendulum on a cart, forward-difference discretization (nu = 2)
// ---------------------------------------------------------------------------

struct PendulumParams {
    double M_cart = 1.5;     // kg
    double m_pend = 0.5;     // kg
    double l_half = 1.4;     // m, half-length of the pendulum
    double I_pend = 0.84;    // kg m^2
    double g = 9.8;          // m/s^2
    double c_x = 0.028;      // N
    double c_theta = 0.0032; // N m

    void validate() const;
};

// Outputs are (x, theta); the pair (y_k, y_{k+1}) fixes the next output.
struct LiftedPlantState {
    Eigen::Vector2d y_prev;
    Eigen::Vector2d y_curr;

    // y_1 = y_0 + dt qdot(0).
    static LiftedPlantState from_initial(const Eigen::Vector4d& q_qdot, double dt);
};

Eigen::Matrix2d mass_matrix(double theta, const PendulumParams& params);

// Coriolis/gravity/friction vector D(q, qdot).
Eigen::Vector2d bias_vector(double theta, double xdot, double thetadot, const PendulumParams& params);

struct PendulumStep {
    Eigen::Vector2d y_next;
    Eigen::Vector2d F_true;  // 2 y_{k+1} - y_k - dt^2 M^{-1} D
    Eigen::Matrix2d G_true;  // dt^2 M^{-1}
};

// y_{k+2} = F_k + G_k u_k. Throws SingularMatrixError on a singular mass matrix.
PendulumStep pendulum_step(const LiftedPlantState& state, const Eigen::Vector2d& u, double dt,
                           const PendulumParams& params);

// Model-based (force, torque) used only to generate reference trajectories.
Eigen::Vector2d open_loop_input(double theta, double thetadot, const PendulumParams& params);

// Number of samples on [0, T] with spacing dt: floor(T/dt) + 1.
std::size_t sample_count(double T, double dt);

inline constexpr double kDivergenceLimit = 1e6;

// Reference outputs y^d_0 .. y^d_{steps} from the open-loop input. Throws
// DivergenceError when ||y|| exceeds kDivergenceLimit.
std::vector<Vector> generate_desired_trajectory_steps(const Eigen::Vector4d& init, std::size_t steps, double dt,
                                                      const PendulumParams& params);

// Samples on [0, T]: floor(T/dt) + 1 of them.
std::vector<Vector> generate_desired_trajectory(const Eigen::Vector4d& init, double T, double dt,
                                                const PendulumParams& params);

class PendulumPlant final : public Plant {
public:
    PendulumPlant(LiftedPlantState state, double dt, PendulumParams params);

    Index output_dim() const override { return 2; }
    Index input_dim() const override { return 2; }
    int relative_degree() const override { return 2; }

    std::int64_t step_index() const override { return k_; }
    Vector output() const override { return state_.y_prev; }
    void apply(const Vector& u) override;

    Vector true_F() const override;
    Matrix true_G() const override;

    std::unique_ptr<Plant> clone() const override { return std::make_unique<PendulumPlant>(*this); }

    const LiftedPlantState& state() const noexcept { return state_; }

private:
    LiftedPlantState state_;
    double dt_;
    PendulumParams params_;
    std::int64_t k_ = 0;
};

// ---------------------------------------------------------------------------
// Measurement noise
// ---------------------------------------------------------------------------

// eta_i(t) = a_i sin(w_i t + d_i sin(f_i t) + phi_i): low amplitude, high
// frequency, sinusoidally modulated frequency.
struct NoiseConfig {
    Vector amplitudes = Eigen::Vector2d(0.001, 0.001);
    Vector base_freqs = Eigen::Vector2d(120.0, 150.0);
    Vector fm_depth = Eigen::Vector2d(5.0, 5.0);
    Vector fm_freqs = Eigen::Vector2d(0.5, 0.7);
    Vector phases = Eigen::Vector2d(0.0, 0.0);

    static NoiseConfig off(Index n);
    void validate() const;
};

Vector noise_sample(double t, const NoiseConfig& cfg);

// ---------------------------------------------------------------------------
// Synthetic ultra-local-model plants
// ---------------------------------------------------------------------------

enum class SyntheticKind { Constant, Ramp, Sinusoid, RandomWalk };

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::Constant;
    Vector offset;          // c (constant), F_0 (ramp / random walk), mean (sinusoid)
    Vector slope;           // d for F_k = F_0 + k d
    Vector amplitude;       // sinusoid amplitude per channel
    double omega = 0.1;     // rad per step
    double phase = 0.0;
    double bound = 0.0;     // random walk: ||F_{k+1} - F_k|| = bound
    std::uint64_t seed = 0;
    Matrix G;               // plant influence matrix
    int relative_degree = 1;
    Vector y_init;          // held for y_0 .. y_{nu-1}; zeros when empty
};

// y_{k+nu} = F_k + G u_k with F_k of the requested kind.
class SyntheticUlmPlant final : public Plant {
public:
    explicit SyntheticUlmPlant(SyntheticSpec spec);

    Index output_dim() const override { return spec_.G.rows(); }
    Index input_dim() const override { return spec_.G.cols(); }
    int relative_degree() const override { return spec_.relative_degree; }

    std::int64_t step_index() const override { return k_; }
    Vector output() const override { return pending_.front(); }
    void apply(const Vector& u) override;

    Vector true_F() const override { return F_at(k_); }
    Matrix true_G() const override { return spec_.G; }

    std::unique_ptr<Plant> clone() const override { return std::make_unique<SyntheticUlmPlant>(*this); }

    // F_j for any j; random-walk samples are generated on demand.
    Vector F_at(std::int64_t j) const;

private:
    SyntheticSpec spec_;
    std::int64_t k_ = 0;
    std::vector<Vector> pending_;  // y_k .. y_{k+nu-1}
    mutable std::vector<Vector> walk_;
    mutable std::mt19937_64 rng_;
};

std::unique_ptr<SyntheticUlmPlant> synthetic_ulm_plant(SyntheticSpec spec);

}  // namespace ftsmfc
