#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ftsmfc/errors.hpp"
#include "ftsmfc/plant_models.hpp"

using namespace ftsmfc;

namespace {

const Eigen::Vector4d kInit(0.45, -0.14, -0.3, 0.05);

// Continuous model M(q) q'' + D(q, q') = u, integrated with RK4.
Eigen::Vector4d rk4_rhs(const Eigen::Vector4d& z, const Eigen::Vector2d& u, const PendulumParams& p) {
    const double ml = p.m_pend * p.l_half;
    const double c = std::cos(z(1)), s = std::sin(z(1));
    const double a = p.M_cart + p.m_pend, b = -ml * c, d = p.I_pend + ml * p.l_half;
    const double D1 = ml * z(3) * z(3) * s + p.c_x * std::tanh(z(2));
    const double D2 = p.c_theta * std::tanh(z(3)) - ml * p.g * s;
    const double r1 = u(0) - D1, r2 = u(1) - D2;
    const double det = a * d - b * b;
    Eigen::Vector4d out;
    out << z(2), z(3), (d * r1 - b * r2) / det, (a * r2 - b * r1) / det;
    return out;
}

Eigen::Vector2d rk4_position(const Eigen::Vector4d& z0, double T, double h, const PendulumParams& p) {
    Eigen::Vector4d z = z0;
    const int n = static_cast<int>(std::lround(T / h));
    const Eigen::Vector2d u = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) {
        const auto k1 = rk4_rhs(z, u, p);
        const auto k2 = rk4_rhs(z + 0.5 * h * k1, u, p);
        const auto k3 = rk4_rhs(z + 0.5 * h * k2, u, p);
        const auto k4 = rk4_rhs(z + h * k3, u, p);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return z.head<2>();
}

Eigen::Vector2d discrete_position(const Eigen::Vector4d& z0, double T, double dt, const PendulumParams& p) {
    LiftedPlantState s = LiftedPlantState::from_initial(z0, dt);
    const int n = static_cast<int>(std::lround(T / dt));
    for (int k = 0; k < n - 1; ++k) {
        const auto st = pendulum_step(s, Eigen::Vector2d::Zero(), dt, p);
        s.y_prev = s.y_curr;
        s.y_curr = st.y_next;
    }
    return s.y_curr;
}

}  // namespace

TEST(PendulumParams, Validation) {
    PendulumParams p;
    EXPECT_NO_THROW(p.validate());
    p.I_pend = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = PendulumParams{};
    p.g = NAN;
    EXPECT_THROW(p.validate(), DomainError);
}

TEST(MassMatrix, Examples) {
    const PendulumParams p;
    const Eigen::Matrix2d M0 = mass_matrix(0.0, p);
    EXPECT_DOUBLE_EQ(M0(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(M0(0, 1), -0.7);
    EXPECT_DOUBLE_EQ(M0(1, 0), -0.7);
    EXPECT_DOUBLE_EQ(M0(1, 1), 1.82);
    const Eigen::Matrix2d Mh = mass_matrix(std::numbers::pi / 2.0, p);
    EXPECT_NEAR(Mh(0, 1), 0.0, 1e-16);
    EXPECT_DOUBLE_EQ(Mh(1, 1), 1.82);
}

TEST(MassMatrix, SymmetricPositiveDefiniteOnGrid) {
    const PendulumParams p;
    for (int i = 0; i < 10000; ++i) {
        const double th = -10.0 + 20.0 * i / 9999.0;
        const Eigen::Matrix2d M = mass_matrix(th, p);
        ASSERT_EQ(M(0, 1), M(1, 0));
        ASSERT_GT(M(0, 0), 0.0);
        // det >= (M+m)(I+ml^2) - (ml)^2 = 3.15
        ASSERT_GE(M.determinant(), 3.15 - 1e-12);
    }
}

TEST(BiasVector, Examples) {
    const PendulumParams p;
    const Eigen::Vector2d D = bias_vector(0.1, 0.0, 0.0, p);
    EXPECT_DOUBLE_EQ(D(0), 0.0);
    EXPECT_DOUBLE_EQ(D(1), -0.6848572381972412);
    const Eigen::Vector2d D2 = bias_vector(0.0, 1e9, -1e9, p);
    EXPECT_DOUBLE_EQ(D2(0), 0.028);
    EXPECT_DOUBLE_EQ(D2(1), -0.0032);
}

TEST(OpenLoopInput, Example) {
    const PendulumParams p;
    const Eigen::Vector2d u = open_loop_input(0.1, 0.0, p);
    EXPECT_DOUBLE_EQ(u(0), -4.901588521728485);
    EXPECT_DOUBLE_EQ(u(1), -0.6848572381972412);
    EXPECT_EQ(open_loop_input(0.0, 3.0, p), Eigen::Vector2d::Zero().eval());
}

TEST(PendulumStep, MatchesDirectSolve) {
    const PendulumParams p;
    const double dt = 0.01;
    const LiftedPlantState s = LiftedPlantState::from_initial(kInit, dt);
    EXPECT_NEAR(s.y_curr(0), 0.45 - 0.003, 1e-16);
    EXPECT_NEAR(s.y_curr(1), -0.14 + 0.0005, 1e-16);

    const Eigen::Vector2d u(1.0, -2.0);
    const auto st = pendulum_step(s, u, dt, p);
    // (y_{k+2} - 2 y_{k+1} + y_k) / dt^2 = M^{-1} (u - D)
    const Eigen::Matrix2d M = mass_matrix(s.y_prev(1), p);
    const Eigen::Vector2d qd = (s.y_curr - s.y_prev) / dt;
    const Eigen::Vector2d acc = M.fullPivLu().solve(u - bias_vector(s.y_prev(1), qd(0), qd(1), p));
    const Eigen::Vector2d y2 = 2.0 * s.y_curr - s.y_prev + dt * dt * acc;
    EXPECT_LE((st.y_next - y2).norm(), 1e-15);
    EXPECT_LE((st.G_true - dt * dt * M.inverse()).norm(), 1e-18);
    EXPECT_LE((st.F_true + st.G_true * u - st.y_next).norm(), 1e-15);
}

TEST(PendulumStep, FAndGDescribeEveryInput) {
    const PendulumParams p;
    const LiftedPlantState s = LiftedPlantState::from_initial(kInit, 0.01);
    const auto base = pendulum_step(s, Eigen::Vector2d::Zero(), 0.01, p);
    EXPECT_EQ(base.y_next, base.F_true);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector2d u(std::sin(i) * 40.0, std::cos(3 * i) * 10.0);
        const auto st = pendulum_step(s, u, 0.01, p);
        ASSERT_LE((st.y_next - (base.F_true + base.G_true * u)).norm(), 1e-14);
    }
}

TEST(PendulumStep, Errors) {
    const PendulumParams p;
    const LiftedPlantState s = LiftedPlantState::from_initial(kInit, 0.01);
    EXPECT_THROW(pendulum_step(s, Eigen::Vector2d(NAN, 0.0), 0.01, p), DomainError);
    EXPECT_THROW(pendulum_step(s, Eigen::Vector2d::Zero(), 0.0, p), DomainError);
    PendulumParams deg = p;
    // unphysical inertia drives det M below zero
    deg.I_pend = -0.9;
    EXPECT_THROW(pendulum_step(s, Eigen::Vector2d::Zero(), 0.01, deg), SingularMatrixError);
}

TEST(PendulumStep, ConsistentWithContinuousModel) {
    const PendulumParams p;
    const Eigen::Vector4d z0(0.0, 0.05, 0.1, 0.0);
    const double T = 0.5;
    const Eigen::Vector2d ref = rk4_position(z0, T, 1e-4, p);
    const double e1 = (discrete_position(z0, T, 0.01, p) - ref).norm();
    const double e2 = (discrete_position(z0, T, 0.005, p) - ref).norm();
    const double e4 = (discrete_position(z0, T, 0.0025, p) - ref).norm();
    EXPECT_LT(e1, 0.01);
    // first order: halving dt roughly halves the error
    EXPECT_NEAR(e1 / e2, 2.0, 0.3);
    EXPECT_NEAR(e2 / e4, 2.0, 0.3);
}

TEST(PendulumPlant, AdvancesLikeStep) {
    const PendulumParams p;
    const LiftedPlantState s = LiftedPlantState::from_initial(kInit, 0.01);
    PendulumPlant plant(s, 0.01, p);
    EXPECT_EQ(plant.output(), Vector(s.y_prev));
    const Eigen::Vector2d u(0.5, 0.1);
    const auto st = pendulum_step(s, u, 0.01, p);
    EXPECT_EQ(plant.true_F(), Vector(st.F_true));
    auto copy = plant.clone();
    plant.apply(u);
    EXPECT_EQ(plant.step_index(), 1);
    EXPECT_EQ(plant.output(), Vector(s.y_curr));
    EXPECT_EQ(plant.state().y_curr, st.y_next);
    EXPECT_EQ(copy->step_index(), 0);
    EXPECT_THROW(plant.apply(Vector::Zero(3)), DimensionError);
}

TEST(SampleCount, RoundsRepresentationError) {
    EXPECT_EQ(sample_count(70.0, 0.01), 7001u);
    EXPECT_EQ(sample_count(0.3, 0.1), 4u);
    EXPECT_EQ(sample_count(0.0, 0.01), 1u);
    EXPECT_EQ(sample_count(0.025, 0.01), 3u);
    EXPECT_THROW(sample_count(1.0, 0.0), DomainError);
    EXPECT_THROW(sample_count(-1.0, 0.1), DomainError);
}

TEST(DesiredTrajectory, StartsAtInitialState) {
    const auto yd = generate_desired_trajectory(kInit, 1.0, 0.01, PendulumParams{});
    ASSERT_EQ(yd.size(), 101u);
    EXPECT_EQ(yd[0], Vector(kInit.head<2>()));
    EXPECT_NEAR((yd[1] - Eigen::Vector2d(0.447, -0.1395)).norm(), 0.0, 1e-15);
}

TEST(DesiredTrajectory, EnvelopeRegression) {
    const auto yd = generate_desired_trajectory(kInit, 70.0, 0.01, PendulumParams{});
    ASSERT_EQ(yd.size(), 7001u);
    auto theta_max = [&](double T) {
        double m = 0.0;
        for (std::size_t k = 0; k < sample_count(T, 0.01); ++k) m = std::max(m, std::abs(yd[k](1)));
        return m;
    };
    EXPECT_NEAR(theta_max(5.0), 0.17689126027387939, 1e-9);
    EXPECT_NEAR(theta_max(50.0), 1.325753376446037, 1e-8);
    EXPECT_NEAR(theta_max(70.0), 44.92784083724763, 1e-6);
}

TEST(DesiredTrajectory, DivergenceIsReported) {
    // the explicit scheme gains energy each step; a coarse dt blows it up quickly
    try {
        generate_desired_trajectory_steps(Eigen::Vector4d(0.0, 0.5, 0.0, 0.0), 100000, 0.5, PendulumParams{});
        FAIL() << "expected divergence";
    } catch (const DivergenceError& e) {
        EXPECT_GT(e.step(), 1);
    }
}

TEST(Noise, BoundedByAmplitude) {
    const NoiseConfig nc;
    EXPECT_NO_THROW(nc.validate());
    EXPECT_EQ(noise_sample(0.0, nc), Vector(Vector::Zero(2)));
    for (int k = 0; k < 10000; ++k) {
        const Vector n = noise_sample(0.0007 * k, nc);
        ASSERT_LE(std::abs(n(0)), 0.001);
        ASSERT_LE(std::abs(n(1)), 0.001);
    }
    EXPECT_EQ(noise_sample(3.0, NoiseConfig::off(2)), Vector(Vector::Zero(2)));
    NoiseConfig bad;
    bad.amplitudes = Eigen::Vector2d(-1.0, 0.0);
    EXPECT_THROW(bad.validate(), DomainError);
    bad = NoiseConfig{};
    bad.phases = Vector::Zero(3);
    EXPECT_THROW(bad.validate(), DimensionError);
}

TEST(SyntheticPlant, ConstantAndRamp) {
    SyntheticSpec spec;
    spec.G = Matrix::Identity(2, 2);
    spec.offset = Eigen::Vector2d(1.0, 2.0);
    SyntheticUlmPlant c(spec);
    EXPECT_EQ(c.output(), Vector(Vector::Zero(2)));
    c.apply(Eigen::Vector2d(1.0, 1.0));
    EXPECT_EQ(c.output(), Vector(Eigen::Vector2d(2.0, 3.0)));
    EXPECT_EQ(c.F_at(100), Vector(Eigen::Vector2d(1.0, 2.0)));

    spec.kind = SyntheticKind::Ramp;
    spec.slope = Eigen::Vector2d(0.5, -1.0);
    spec.relative_degree = 2;
    spec.y_init = Eigen::Vector2d(7.0, 7.0);
    SyntheticUlmPlant r(spec);
    EXPECT_EQ(r.F_at(4), Vector(Eigen::Vector2d(3.0, -2.0)));
    r.apply(Vector::Zero(2));
    EXPECT_EQ(r.output(), Vector(Eigen::Vector2d(7.0, 7.0)));
    r.apply(Vector::Zero(2));
    EXPECT_EQ(r.output(), Vector(Eigen::Vector2d(1.0, 2.0)));
    r.apply(Vector::Zero(2));
    EXPECT_EQ(r.output(), Vector(Eigen::Vector2d(1.5, 1.0)));
    EXPECT_EQ(r.true_F(), r.F_at(3));
}

TEST(SyntheticPlant, RandomWalkStepsHaveExactBound) {
    SyntheticSpec spec;
    spec.kind = SyntheticKind::RandomWalk;
    spec.G = Matrix::Identity(2, 2);
    spec.bound = 0.01;
    spec.seed = 99;
    SyntheticUlmPlant w(spec);
    Vector prev = w.F_at(0);
    for (std::int64_t k = 1; k <= 100000; ++k) {
        const Vector F = w.F_at(k);
        ASSERT_NEAR((F - prev).norm(), 0.01, 1e-12) << k;
        prev = F;
    }
    // samples are fixed once drawn and reproducible from the seed
    SyntheticUlmPlant again(spec);
    EXPECT_EQ(again.F_at(500), w.F_at(500));
}

TEST(SyntheticPlant, Validation) {
    SyntheticSpec spec;
    spec.G = Matrix::Identity(3, 2);
    EXPECT_THROW(SyntheticUlmPlant{spec}, DimensionError);
    spec.G = Matrix::Identity(2, 2);
    spec.kind = SyntheticKind::RandomWalk;
    EXPECT_THROW(SyntheticUlmPlant{spec}, DomainError);
    spec.kind = SyntheticKind::Ramp;
    EXPECT_THROW(SyntheticUlmPlant{spec}, DimensionError);
    spec.kind = SyntheticKind::Constant;
    spec.relative_degree = 0;
    EXPECT_THROW(SyntheticUlmPlant{spec}, DomainError);
}
