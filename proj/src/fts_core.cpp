#include "ftsmfc/fts_core.hpp"

#include <algorithm>
#include <string>

#include "ftsmfc/errors.hpp"

namespace ftsmfc {

namespace {

void check_exponent_scale(double exponent, double scale) {
    if (!(exponent > 1.0 && exponent < 2.0)) {
        throw DomainError("Hölder exponent must lie in ]1,2[, got " + std::to_string(exponent));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("Hölder gain scale must be positive and finite, got " + std::to_string(scale));
    }
}

}  // namespace

HolderGainParams::HolderGainParams(double exponent, double scale) : exponent_(exponent), scale_(scale) {
    check_exponent_scale(exponent, scale);
}

HolderGainParams::HolderGainParams(double exponent, double scale, Matrix weight)
    : exponent_(exponent), scale_(scale) {
    check_exponent_scale(exponent, scale);
    if (weight.rows() != weight.cols() || weight.rows() == 0) {
        throw DimensionError("gain weight must be a non-empty square matrix");
    }
    if (!weight.allFinite() || !weight.isApprox(weight.transpose(), 1e-12)) {
        throw DomainError("gain weight must be symmetric");
    }
    Eigen::LLT<Matrix> llt(weight);
    if (llt.info() != Eigen::Success) {
        throw DomainError("gain weight must be positive definite");
    }
    weight_ = std::move(weight);
}

HolderGainParams HolderGainParams::with_scalar_weight(double exponent, double scale, double weight) {
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw DomainError("scalar gain weight must be positive, got " + std::to_string(weight));
    }
    HolderGainParams p(exponent, scale);
    p.scalar_weight_ = weight;
    return p;
}

double HolderGainParams::quadratic_form(const Vector& e) const {
    if (weight_) {
        if (weight_->rows() != e.size()) {
            throw DimensionError("gain weight is " + std::to_string(weight_->rows()) + "x" +
                                 std::to_string(weight_->cols()) + " but error has dimension " +
                                 std::to_string(e.size()));
        }
        return e.dot(*weight_ * e);
    }
    return scalar_weight_ * e.squaredNorm();
}

double holder_gain_from_quadratic(double q, const HolderGainParams& params) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
        throw DomainError("quadratic form must be finite and non-negative");
    }
    const double x = holder_power(q, params.power());
    const double lambda = params.scale();
    return (x - lambda) / (x + lambda);
}

double holder_gain(const Vector& e, const HolderGainParams& params) {
    if (!e.allFinite()) {
        throw DomainError("holder_gain: non-finite error component");
    }
    return holder_gain_from_quadratic(params.quadratic_form(e), params);
}

double gamma_of_V(double V, const HolderGainParams& params) {
    if (!(V >= 0.0)) {
        throw DomainError("gamma_of_V: V must be non-negative");
    }
    const double x = holder_power(V, params.power());
    const double lambda = params.scale();
    const double ratio = x / (x + lambda);
    return 4.0 * lambda * ratio * ratio;
}

double robustness_radius_from_zeta(double zeta) {
    if (!(zeta >= 0.0 && zeta <= 1.0)) {
        throw DomainError("robustness radius needs zeta in [0,1]");
    }
    return 1.0 + std::sqrt(1.0 - zeta);
}

double robustness_radius(double gain_value) {
    if (!(gain_value >= -1.0 && gain_value < 1.0)) {
        throw DomainError("robustness radius needs a gain value in [-1,1)");
    }
    return robustness_radius_from_zeta(1.0 - gain_value * gain_value);
}

bool LyapunovTrace::is_well_formed() const {
    bool hit_zero = false;
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) return false;
        if (hit_zero && v != 0.0) return false;
        if (v == 0.0) hit_zero = true;
    }
    return true;
}

FtsRecursionResult fts_recursion(double V0, double eta, double alpha, std::size_t max_steps) {
    if (!(V0 >= 0.0) || !std::isfinite(V0)) throw DomainError("fts_recursion: V0 must be finite and >= 0");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("fts_recursion: eta must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fts_recursion: alpha must lie in ]0,1[");

    FtsRecursionResult out;
    out.trace.alpha = alpha;
    out.trace.eta = eta;
    out.settle_index =
        fts_recursion_visit(V0, eta, alpha, max_steps, [&](double v) { out.trace.values.push_back(v); });
    return out;
}

FtsConditionMonitor::FtsConditionMonitor(GammaFn gamma, double alpha, double epsilon)
    : gamma_(std::move(gamma)),
      alpha_(alpha),
      epsilon_(epsilon),
      gain_floor_(std::pow(epsilon, 1.0 - alpha)) {
    if (!(epsilon > 0.0)) throw DomainError("FTS condition needs epsilon > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("FTS condition needs alpha in ]0,1[");
}

void FtsConditionMonitor::push(double V) {
    ++count_;
    if (prev_) {
        const double Vk = *prev_;
        const double g = gamma_(Vk);
        const double bound = std::max(0.0, Vk - g * holder_power(Vk, alpha_));
        const double margin = bound - V;
        worst_decrement_margin_ = std::min(worst_decrement_margin_, margin);
        if (margin < -kDecrementRelTol * std::max(1.0, Vk)) decrement_ok_ = false;
    }
    if (V >= epsilon_ && gamma_(V) < gain_floor_ * (1.0 - kDecrementRelTol)) gain_ok_ = false;
    prev_ = V;
}

HolderMonitor::HolderMonitor(double alpha, double epsilon) : exponent_(1.0 / (1.0 - alpha)), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("Hölder check needs epsilon > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("Hölder check needs alpha in ]0,1[");
}

void HolderMonitor::push(double V) {
    const std::size_t k = count_++;
    if (k == 0) {
        first_ = prev_ = V;
        return;
    }
    const double decrement = prev_ - V;
    const double tol = kDecrementRelTol * std::max(1.0, first_);
    if (decrement < -tol || decrement > prev_decrement_ + tol) shape_ok_ = false;
    prev_decrement_ = decrement;
    prev_ = V;

    const double gap = static_cast<double>(k);
    const double ratio = (first_ - V) / std::pow(gap, exponent_);
    const double bound = epsilon_ + holder_slack(epsilon_, gap);
    const double margin = bound - ratio;
    worst_margin_ = std::min(worst_margin_, margin);
    if (margin < -kDecrementRelTol * bound) bound_ok_ = false;
}

bool verify_fts_condition(const LyapunovTrace& trace, const GammaFn& gamma, double epsilon) {
    if (trace.values.empty()) throw DomainError("verify_fts_condition: empty trace");
    FtsConditionMonitor monitor(gamma, trace.alpha, epsilon);
    for (double v : trace.values) monitor.push(v);
    return monitor.holds();
}

bool verify_holder_continuity(const LyapunovTrace& trace, double epsilon) {
    HolderMonitor monitor(trace.alpha, epsilon);
    for (double v : trace.values) monitor.push(v);
    if (monitor.shape_ok()) return monitor.bound_ok();

    // General sequences: every pair.
    const double h = 1.0 / (1.0 - trace.alpha);
    const auto& v = trace.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const double gap = static_cast<double>(j - i);
            const double bound = epsilon + holder_slack(epsilon, gap);
            if (std::abs(v[i] - v[j]) / std::pow(gap, h) > bound * (1.0 + kDecrementRelTol)) return false;
        }
    }
    return true;
}

}  // namespace ftsmfc
