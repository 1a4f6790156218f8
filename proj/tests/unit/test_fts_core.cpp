#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ftsmfc/errors.hpp"
#include "ftsmfc/fts_core.hpp"

using namespace ftsmfc;

namespace {

HolderGainParams obs() { return HolderGainParams(9.0 / 7.0, 1.5); }

// all-pairs reference for the Hölder bound
bool brute_force_holder(const std::vector<double>& v, double alpha, double eps) {
    const double h = 1.0 / (1.0 - alpha);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const double gap = static_cast<double>(j - i);
            if (std::abs(v[i] - v[j]) / std::pow(gap, h) > eps + eps * gap) return false;
        }
    }
    return true;
}

}  // namespace

TEST(HolderGainParams, RejectsExponentOutsideOpenInterval) {
    EXPECT_THROW(HolderGainParams(1.0, 1.0), DomainError);
    EXPECT_THROW(HolderGainParams(2.0, 1.0), DomainError);
    EXPECT_THROW(HolderGainParams(0.5, 1.0), DomainError);
    EXPECT_THROW(HolderGainParams(NAN, 1.0), DomainError);
    EXPECT_NO_THROW(HolderGainParams(1.5, 1.0));
}

TEST(HolderGainParams, RejectsNonPositiveScale) {
    EXPECT_THROW(HolderGainParams(1.5, 0.0), DomainError);
    EXPECT_THROW(HolderGainParams(1.5, -1.0), DomainError);
    EXPECT_THROW(HolderGainParams(1.5, INFINITY), DomainError);
}

TEST(HolderGainParams, WeightMustBeSymmetricPositiveDefinite) {
    Matrix asym(2, 2);
    asym << 1.0, 0.5, 0.0, 1.0;
    EXPECT_THROW(HolderGainParams(1.5, 1.0, asym), DomainError);
    Matrix indef(2, 2);
    indef << 1.0, 2.0, 2.0, 1.0;
    EXPECT_THROW(HolderGainParams(1.5, 1.0, indef), DomainError);
    EXPECT_THROW(HolderGainParams(1.5, 1.0, Matrix(2, 3)), DimensionError);
    EXPECT_THROW(HolderGainParams::with_scalar_weight(1.5, 1.0, 0.0), DomainError);
    EXPECT_NO_THROW(HolderGainParams(1.5, 1.0, Matrix::Identity(3, 3)));
}

TEST(HolderGainParams, PowerIsOneMinusInverseExponent) {
    EXPECT_DOUBLE_EQ(obs().power(), 2.0 / 9.0);
    EXPECT_DOUBLE_EQ(HolderGainParams(11.0 / 9.0, 0.35).power(), 2.0 / 11.0);
}

TEST(HolderGain, OriginGivesMinusOneInAnyDimension) {
    for (Index n = 1; n <= 5; ++n) EXPECT_EQ(holder_gain(Vector::Zero(n), obs()), -1.0);
    EXPECT_EQ(holder_gain(Vector::Zero(2), HolderGainParams(11.0 / 9.0, 0.35)), -1.0);
    EXPECT_EQ(holder_gain(Vector::Zero(2), HolderGainParams::with_scalar_weight(1.4, 2.0, 2.1)), -1.0);
}

TEST(HolderGain, UnitErrorObserverGains) {
    EXPECT_NEAR(holder_gain(Eigen::Vector2d(1.0, 0.0), obs()), -0.2, 1e-15);
}

TEST(HolderGain, ZeroWhenPowerEqualsScale) {
    const HolderGainParams p = obs();
    // (e^T e)^a = lambda  <=>  ||e|| = lambda^(1/(2a))
    const double norm = std::pow(1.5, 1.0 / (2.0 * p.power()));
    EXPECT_NEAR(holder_gain(Eigen::Vector2d(0.0, norm), p), 0.0, 1e-15);
}

TEST(HolderGain, MatrixWeightEntersThroughQuadraticForm) {
    Matrix W(2, 2);
    W << 2.0, 0.5, 0.5, 1.0;
    const HolderGainParams p(1.5, 0.7, W);
    const Eigen::Vector2d e(0.3, -1.1);
    const double q = e.dot(W * e);
    const double x = std::pow(q, 1.0 - 1.0 / 1.5);
    EXPECT_NEAR(holder_gain(e, p), (x - 0.7) / (x + 0.7), 1e-15);
}

TEST(HolderGain, RejectsNonFinite) {
    EXPECT_THROW(holder_gain(Eigen::Vector2d(NAN, 0.0), obs()), DomainError);
    EXPECT_THROW(holder_gain(Eigen::Vector2d(INFINITY, 0.0), obs()), DomainError);
}

TEST(HolderGain, NonDecreasingInNormAndBelowOne) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    const HolderGainParams p = obs();
    const Eigen::Vector3d dir = Eigen::Vector3d(1.0, -2.0, 0.5).normalized();
    double prev = -1.0;
    for (int i = 0; i < 2000; ++i) {
        const double s = std::pow(10.0, -8.0 + 16.0 * i / 1999.0);
        const double g = holder_gain(s * dir, p);
        EXPECT_GE(g, prev);
        EXPECT_LT(g, 1.0);
        prev = g;
    }
    // (x - lambda)/(x + lambda) rounds to 1 once lambda/x drops below half an ulp
    EXPECT_LE(holder_gain(Eigen::Vector2d(1e150, 1e150), p), 1.0);
}

TEST(GammaOfV, Examples) {
    const HolderGainParams p = obs();
    EXPECT_EQ(gamma_of_V(0.0, p), 0.0);
    EXPECT_NEAR(gamma_of_V(1.0, p), 0.96, 1e-15);
    const double Vstar = std::pow(1.5, 1.0 / p.power());
    EXPECT_NEAR(Vstar, 6.200270911419915, 1e-12);
    EXPECT_NEAR(gamma_of_V(Vstar, p), 1.5, 1.5e-12);
    EXPECT_THROW(gamma_of_V(-1e-300, p), DomainError);
}

TEST(GammaOfV, MatchesOneMinusGainSquaredTimesPower) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lv(-6.0, 6.0), ex(1.01, 1.99), sc(0.2, 5.0);
    for (int i = 0; i < 100000; ++i) {
        const HolderGainParams p(ex(rng), sc(rng));
        const double V = std::pow(10.0, lv(rng));
        const Eigen::Vector2d e(std::sqrt(V), 0.0);
        const double g = holder_gain(e, p);
        const double ref = (1.0 - g * g) * std::pow(V, p.power());
        const double got = gamma_of_V(V, p);
        ASSERT_LE(std::abs(got - ref), 1e-12 * std::max(1.0, got)) << "V=" << V;
    }
}

TEST(GammaOfV, IsClassKIncreasing) {
    const HolderGainParams p = obs();
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double g = gamma_of_V(1e-3 * i, p);
        EXPECT_GT(g, prev);
        prev = g;
    }
}

TEST(RobustnessRadius, Examples) {
    EXPECT_EQ(robustness_radius(0.0), 1.0);
    EXPECT_DOUBLE_EQ(robustness_radius_from_zeta(0.75), 1.5);
    EXPECT_EQ(robustness_radius(-1.0), 2.0);
    EXPECT_EQ(robustness_radius_from_zeta(0.0), 2.0);
    EXPECT_THROW(robustness_radius(1.0), DomainError);
    EXPECT_THROW(robustness_radius(-1.5), DomainError);
    EXPECT_THROW(robustness_radius_from_zeta(1.1), DomainError);
}

TEST(RobustnessRadius, AgreesWithQuotientForm) {
    for (int i = 0; i <= 6000; ++i) {
        const double zeta = std::pow(10.0, -6.0 + i / 1000.0);
        const double stable = robustness_radius_from_zeta(zeta);
        // quotient evaluated without cancellation: 1 - sqrt(1 - z) = -expm1(log1p(-z) / 2)
        const double quotient = zeta / -std::expm1(0.5 * std::log1p(-zeta));
        EXPECT_NEAR(stable, quotient, 1e-12 * quotient) << zeta;
        EXPECT_GE(stable, 1.0);
        EXPECT_LE(stable, 2.0);
    }
}

TEST(RobustnessRadius, EqualsOnePlusAbsGain) {
    for (double g = -1.0; g < 1.0; g += 0.01) EXPECT_NEAR(robustness_radius(g), 1.0 + std::abs(g), 1e-14);
}

TEST(FtsRecursion, Examples) {
    auto r = fts_recursion(0.0, 1.0, 0.5, 10);
    ASSERT_TRUE(r.settle_index);
    EXPECT_EQ(*r.settle_index, 0u);

    r = fts_recursion(1.0, 1.0, 0.5, 10);
    ASSERT_TRUE(r.settle_index);
    EXPECT_EQ(*r.settle_index, 1u);
    EXPECT_EQ(r.trace.values[1], 0.0);

    r = fts_recursion(1.0, 0.5, 0.5, 10);
    ASSERT_TRUE(r.settle_index);
    EXPECT_EQ(*r.settle_index, 3u);
    ASSERT_EQ(r.trace.values.size(), 4u);
    EXPECT_EQ(r.trace.values[0], 1.0);
    EXPECT_DOUBLE_EQ(r.trace.values[1], 0.5);
    EXPECT_NEAR(r.trace.values[2], 0.1464466094067262, 1e-15);
    EXPECT_EQ(r.trace.values[3], 0.0);
    EXPECT_TRUE(r.trace.is_well_formed());
}

TEST(FtsRecursion, NotReachedWithinBudget) {
    const auto r = fts_recursion(1e6, 1e-3, 0.5, 10);
    EXPECT_FALSE(r.settle_index);
    EXPECT_EQ(r.trace.values.size(), 11u);
}

TEST(FtsRecursion, RejectsBadArguments) {
    EXPECT_THROW(fts_recursion(-1.0, 1.0, 0.5, 10), DomainError);
    EXPECT_THROW(fts_recursion(1.0, 0.0, 0.5, 10), DomainError);
    EXPECT_THROW(fts_recursion(1.0, 1.0, 1.0, 10), DomainError);
    EXPECT_THROW(fts_recursion(1.0, 1.0, 0.0, 10), DomainError);
}

TEST(FtsRecursion, StepCountWithinConcavityBoundAndMonotoneInEta) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lv(-3.0, 3.0), le(-2.0, 0.5), ua(0.1, 0.9);
    for (int i = 0; i < 300; ++i) {
        const double V0 = std::pow(10.0, lv(rng)), eta = std::pow(10.0, le(rng)), alpha = ua(rng);
        const double bound = std::ceil(std::pow(V0, 1.0 - alpha) / ((1.0 - alpha) * eta));
        const auto r = fts_recursion(V0, eta, alpha, static_cast<std::size_t>(bound) + 1);
        ASSERT_TRUE(r.settle_index);
        EXPECT_LE(static_cast<double>(*r.settle_index), bound);
        for (std::size_t k = 1; k < r.trace.values.size(); ++k) {
            EXPECT_LE(r.trace.values[k], r.trace.values[k - 1]);
        }
        const auto faster = fts_recursion(V0, 2.0 * eta, alpha, static_cast<std::size_t>(bound) + 1);
        ASSERT_TRUE(faster.settle_index);
        EXPECT_LE(*faster.settle_index, *r.settle_index);
    }
}

TEST(LyapunovTrace, WellFormedness) {
    EXPECT_TRUE((LyapunovTrace{{3.0, 1.0, 0.0, 0.0}, 0.5, 1.0}.is_well_formed()));
    EXPECT_FALSE((LyapunovTrace{{3.0, 0.0, 1.0}, 0.5, 1.0}.is_well_formed()));
    EXPECT_FALSE((LyapunovTrace{{-1.0}, 0.5, 1.0}.is_well_formed()));
}

TEST(VerifyFtsCondition, Examples) {
    const GammaFn one = [](double) { return 1.0; };
    EXPECT_TRUE(verify_fts_condition(LyapunovTrace{{0.0, 0.0, 0.0}, 0.5, 1.0}, one, 1.0));
    EXPECT_FALSE(verify_fts_condition(LyapunovTrace{{1.0, 2.0}, 0.5, 1.0}, one, 1.0));
    EXPECT_THROW(verify_fts_condition(LyapunovTrace{{}, 0.5, 1.0}, one, 1.0), DomainError);

    const double eta = 0.3, alpha = 0.4;
    const auto r = fts_recursion(50.0, eta, alpha, 100000);
    const GammaFn g = [eta](double) { return eta; };
    EXPECT_TRUE(verify_fts_condition(r.trace, g, std::pow(eta, 1.0 / (1.0 - alpha))));
}

TEST(VerifyFtsCondition, GainFloorViolationDetected) {
    const double eta = 0.3, alpha = 0.4;
    const auto r = fts_recursion(50.0, eta, alpha, 100000);
    // claimed gamma smaller than the floor eps^(1-alpha) = eta
    const GammaFn g = [](double) { return 0.1; };
    EXPECT_FALSE(verify_fts_condition(r.trace, g, std::pow(eta, 1.0 / (1.0 - alpha))));
}

TEST(VerifyFtsCondition, SlowerThanClaimedDecrementDetected) {
    // V_{k+1} = V_k - 0.5 eta V_k^alpha does not meet gamma = eta
    const double eta = 0.3, alpha = 0.4;
    std::vector<double> v{10.0};
    for (int i = 0; i < 50; ++i) v.push_back(std::max(0.0, v.back() - 0.5 * eta * std::pow(v.back(), alpha)));
    const GammaFn g = [eta](double) { return eta; };
    EXPECT_FALSE(verify_fts_condition(LyapunovTrace{v, alpha, eta}, g, std::pow(eta, 1.0 / (1.0 - alpha))));
}

TEST(VerifyHolderContinuity, Examples) {
    EXPECT_TRUE(verify_holder_continuity(LyapunovTrace{{0.0, 0.0, 0.0, 0.0}, 0.5, 1.0}, 0.01));
    EXPECT_TRUE(verify_holder_continuity(fts_recursion(1.0, 1.0, 0.5, 10).trace, 1.0));
    EXPECT_FALSE(verify_holder_continuity(LyapunovTrace{{100.0, 0.0}, 0.5, 1.0}, 0.01));
}

TEST(VerifyHolderContinuity, AgreesWithAllPairsOracleOnRecursionTraces) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> lv(-3.0, 3.0), le(-1.5, 0.5), ua(0.1, 0.9), leps(-3.0, 2.0);
    int agree_true = 0, agree_false = 0;
    for (int i = 0; i < 400; ++i) {
        const double alpha = ua(rng), eta = std::pow(10.0, le(rng));
        const auto r = fts_recursion(std::pow(10.0, lv(rng)), eta, alpha, 400);
        const double eps = std::pow(10.0, leps(rng));
        const bool oracle = brute_force_holder(r.trace.values, alpha, eps);
        EXPECT_EQ(verify_holder_continuity(r.trace, eps), oracle);
        (oracle ? agree_true : agree_false)++;
    }
    EXPECT_GT(agree_true, 10);
    EXPECT_GT(agree_false, 10);
}

TEST(VerifyHolderContinuity, AgreesWithAllPairsOracleOnArbitraryTraces) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        std::vector<double> v(2 + i % 40);
        for (auto& x : v) x = u(rng);
        const double alpha = 0.1 + 0.8 * u(rng), eps = 0.05 + u(rng);
        EXPECT_EQ(verify_holder_continuity(LyapunovTrace{v, alpha, 1.0}, eps), brute_force_holder(v, alpha, eps));
    }
}

TEST(VerifyHolderContinuity, SingleStepJumpAboveTwiceEpsilonFails) {
    // gap-one ratio is min(V0, eta V0^alpha); with eps = eta^(1/(1-alpha)) the
    // bound 2 eps is exceeded once V0 > 2^(1/alpha) eps
    const double eta = 0.5, alpha = 0.5;
    const double eps = std::pow(eta, 1.0 / (1.0 - alpha));
    EXPECT_FALSE(verify_holder_continuity(fts_recursion(10.0, eta, alpha, 1000).trace, eps));
    EXPECT_TRUE(verify_holder_continuity(fts_recursion(0.9 * std::pow(2.0, 1.0 / alpha) * eps, eta, alpha, 1000).trace, eps));
}

TEST(HolderMonitor, MatchesBatchCheck) {
    const auto r = fts_recursion(3.0, 0.2, 0.3, 1000);
    const double eps = 0.3;
    HolderMonitor mon(0.3, eps);
    for (double v : r.trace.values) mon.push(v);
    EXPECT_TRUE(mon.shape_ok());
    EXPECT_EQ(mon.holds(), verify_holder_continuity(r.trace, eps));
    EXPECT_EQ(mon.count(), r.trace.values.size());
}
