#pragma once

#include <cstdint>
#include <optional>

#include "ftsmfc/fts_core.hpp"
#include "ftsmfc/types.hpp"

namespace ftsmfc {

// Ultra-local model y_{k+nu} = F_k + G_k u_k. F_k lumps every unknown effect.
struct UlmSample {
    Vector F;
    std::int64_t step_index = 0;
};

// F_k = y_{k+nu} - G_k u_k.
Vector compute_F(const Vector& y_future, const Matrix& G, const Vector& u);

// First-order observer:  F_hat_{k+1} = D(e_k) e_k + F_k,  e_k = F_hat_k - F_k.
struct FirstOrderObserverState {
    Vector F_hat;                 // estimate for the next sample index
    std::optional<Vector> last_F; // most recent reconstructed sample
    HolderGainParams params;
    std::int64_t samples = 0;

    FirstOrderObserverState(Vector F_hat0, HolderGainParams p)
        : F_hat(std::move(F_hat0)), params(std::move(p)) {}
};

FirstOrderObserverState first_order_update(const FirstOrderObserverState& state, const Vector& F_k);

// Second-order observer:
//   F_hat_{k+1}  = D(e_k) e_k + F_k + dF_hat_k
//   dF_hat_k     = D(eD_{k-1}) eD_{k-1} + dF_{k-1},   eD_{k-1} = dF_hat_{k-1} - dF_{k-1}
// with dF_{k-1} = F_k - F_{k-1}. Until two samples have been seen it runs the
// first-order law (dF_hat_0 = 0, eD_{-1} = 0).
struct SecondOrderObserverState {
    Vector F_hat;
    Vector dF_hat;                  // difference estimate used for the latest F_hat
    std::optional<Vector> F_prev;   // F_{k-1}
    std::optional<Vector> F_prev2;  // F_{k-2}
    Vector e_delta_prev;            // eD_{k-1}
    HolderGainParams params_F;
    HolderGainParams params_delta;
    std::int64_t samples = 0;

    SecondOrderObserverState(Vector F_hat0, HolderGainParams pF, HolderGainParams pD)
        : F_hat(std::move(F_hat0)),
          dF_hat(Vector::Zero(F_hat.size())),
          e_delta_prev(Vector::Zero(F_hat.size())),
          params_F(std::move(pF)),
          params_delta(std::move(pD)) {}
};

SecondOrderObserverState second_order_update(const SecondOrderObserverState& state, const Vector& F_k);

// Membership in {e : rho(e) ||e|| <= B}, rho from the observer gain at e.
bool in_neighborhood_F(const Vector& e, double bound, const HolderGainParams& params);

// Left-hand side rho(e) ||e|| of the membership test.
double neighborhood_measure(const Vector& e, const HolderGainParams& params);

// Either observer behind one interface, as the simulation harness uses it.
enum class ObserverOrder { First, Second };

class UlmObserver {
public:
    UlmObserver(ObserverOrder order, Vector F_hat0, HolderGainParams params_F, HolderGainParams params_delta);

    ObserverOrder order() const noexcept { return order_; }

    // Estimate held for the next unseen sample.
    const Vector& estimate() const;

    // Feeds sample F_k; returns the a-priori error e_k = F_hat_k - F_k.
    Vector update(const Vector& F_k);

    // eD_{k-1} after the last update (zero for the first-order observer).
    Vector delta_error() const;

private:
    ObserverOrder order_;
    std::optional<FirstOrderObserverState> first_;
    std::optional<SecondOrderObserverState> second_;
};

}  // namespace ftsmfc
