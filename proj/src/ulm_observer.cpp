#include "ftsmfc/ulm_observer.hpp"

#include <string>

#include "ftsmfc/errors.hpp"

namespace ftsmfc {

namespace {

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw DomainError(std::string(what) + ": non-finite component");
}

void require_size(const Vector& v, Index n, const char* what) {
    if (v.size() != n) {
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(n) + ", got " +
                             std::to_string(v.size()));
    }
}

Vector correction(const Vector& e, const HolderGainParams& params) { return holder_gain(e, params) * e; }

}  // namespace

Vector compute_F(const Vector& y_future, const Matrix& G, const Vector& u) {
    if (G.rows() != y_future.size() || G.cols() != u.size()) {
        throw DimensionError("compute_F: G is " + std::to_string(G.rows()) + "x" + std::to_string(G.cols()) +
                             ", y has " + std::to_string(y_future.size()) + ", u has " +
                             std::to_string(u.size()));
    }
    return y_future - G * u;
}

FirstOrderObserverState first_order_update(const FirstOrderObserverState& state, const Vector& F_k) {
    require_size(F_k, state.F_hat.size(), "first_order_update");
    require_finite(F_k, "first_order_update");
    FirstOrderObserverState next = state;
    const Vector e = state.F_hat - F_k;
    next.F_hat = correction(e, state.params) + F_k;
    next.last_F = F_k;
    ++next.samples;
    return next;
}

SecondOrderObserverState second_order_update(const SecondOrderObserverState& state, const Vector& F_k) {
    require_size(F_k, state.F_hat.size(), "second_order_update");
    require_finite(F_k, "second_order_update");
    SecondOrderObserverState next = state;
    const Vector e = state.F_hat - F_k;

    if (state.F_prev) {
        const Vector dF_prev = F_k - *state.F_prev;
        next.e_delta_prev = state.dF_hat - dF_prev;
        next.dF_hat = correction(next.e_delta_prev, state.params_delta) + dF_prev;
    } else {
        next.e_delta_prev.setZero();
        next.dF_hat.setZero();
    }
    next.F_hat = correction(e, state.params_F) + F_k + next.dF_hat;
    next.F_prev2 = state.F_prev;
    next.F_prev = F_k;
    ++next.samples;
    return next;
}

double neighborhood_measure(const Vector& e, const HolderGainParams& params) {
    return robustness_radius(holder_gain(e, params)) * e.norm();
}

bool in_neighborhood_F(const Vector& e, double bound, const HolderGainParams& params) {
    if (!(bound > 0.0)) throw DomainError("in_neighborhood_F: bound must be positive");
    return neighborhood_measure(e, params) <= bound;
}

UlmObserver::UlmObserver(ObserverOrder order, Vector F_hat0, HolderGainParams params_F,
                         HolderGainParams params_delta)
    : order_(order) {
    require_finite(F_hat0, "UlmObserver");
    if (order == ObserverOrder::First) {
        first_.emplace(std::move(F_hat0), std::move(params_F));
    } else {
        second_.emplace(std::move(F_hat0), std::move(params_F), std::move(params_delta));
    }
}

const Vector& UlmObserver::estimate() const { return first_ ? first_->F_hat : second_->F_hat; }

Vector UlmObserver::update(const Vector& F_k) {
    Vector e = estimate() - F_k;
    if (first_) {
        *first_ = first_order_update(*first_, F_k);
    } else {
        *second_ = second_order_update(*second_, F_k);
    }
    return e;
}

Vector UlmObserver::delta_error() const {
    return second_ ? second_->e_delta_prev : Vector::Zero(first_->F_hat.size());
}

}  // namespace ftsmfc
