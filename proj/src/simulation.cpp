#include "ftsmfc/simulation.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "ftsmfc/csv_log.hpp"
#include "ftsmfc/errors.hpp"
#include "ftsmfc/output_filter.hpp"
#include "ftsmfc/tracking_control.hpp"
#include "ftsmfc/ulm_observer.hpp"

namespace ftsmfc {

namespace {

Vector nan_vector(Index n) { return Vector::Constant(n, std::numeric_limits<double>::quiet_NaN()); }

}  // namespace

std::vector<Vector> desired_trajectory(const SimConfig& config) {
    const std::size_t K = sample_count(config.T, config.dt) - 1;
    const auto nu = static_cast<std::size_t>(config.relative_degree());
    const Index n = config.output_dim();
    switch (config.desired.source) {
        case DesiredSource::Generated:
            return generate_desired_trajectory_steps(config.desired.initial_state, K + nu, config.dt,
                                                     config.plant.pendulum);
        case DesiredSource::Constant:
            return std::vector<Vector>(K + nu + 1, config.desired.value);
        case DesiredSource::File:
            break;
    }
    std::vector<Vector> yd = read_trajectory_csv(config.desired.path, n);
    if (yd.size() < K + 1) {
        throw ConfigError("desired trajectory file " + config.desired.path.string() + " has " +
                          std::to_string(yd.size()) + " samples, the horizon needs " + std::to_string(K + 1));
    }
    // lookahead past the end of the file holds its last sample
    const Vector last = yd.back();
    if (yd.size() < K + nu + 1) yd.resize(K + nu + 1, last);
    return yd;
}

std::unique_ptr<Plant> make_plant(const SimConfig& config) {
    if (config.plant.kind == PlantKind::Pendulum) {
        return std::make_unique<PendulumPlant>(LiftedPlantState::from_initial(config.plant.initial_state, config.dt),
                                               config.dt, config.plant.pendulum);
    }
    return synthetic_ulm_plant(config.plant.synthetic);
}

SimOutcome simulate(const SimConfig& config, Plant& plant, const std::vector<Vector>& desired) {
    const Index n = plant.output_dim();
    const Index m = plant.input_dim();
    const int nu = plant.relative_degree();
    const std::size_t K = sample_count(config.T, config.dt) - 1;

    if (config.controller.G.rows() != n || config.controller.G.cols() != m) {
        throw ConfigError("controller.G does not match the plant dimensions");
    }
    if (desired.size() < K + static_cast<std::size_t>(nu) + 1) {
        throw ConfigError("desired trajectory shorter than horizon plus lookahead");
    }

    const ControlGains gains(config.control_params(), config.controller.G, nu);
    UlmObserver observer(config.observer.order, config.observer.F_hat0, config.observer_params(),
                         config.observer_delta_params());
    std::optional<HolderGainParams> filter_params;
    if (config.filter.enabled) filter_params = config.filter_params();
    std::optional<OutputFilterState> filter;

    SimOutcome out;
    out.log.output_dim = n;
    out.log.input_dim = m;
    out.log.relative_degree = nu;
    out.log.dt = config.dt;
    out.log.records.reserve(K + 1);
    std::vector<Vector> inputs;
    inputs.reserve(K);

    std::size_t j = 0;
    try {
        for (; j <= K; ++j) {
            SimRecord rec;
            rec.t = static_cast<double>(j) * config.dt;
            rec.y = plant.output();
            if (!rec.y.allFinite() || rec.y.norm() > config.divergence_limit) {
                throw DivergenceError("output left the divergence bound at step " + std::to_string(j),
                                      static_cast<std::ptrdiff_t>(j));
            }
            rec.y_meas = config.noise.enabled ? Vector(rec.y + noise_sample(rec.t, config.noise.waveform)) : rec.y;

            if (filter_params) {
                if (!filter) {
                    Vector y_hat0 = config.filter.initial_estimate.size() >= n ? Vector(config.filter.initial_estimate.head(n))
                                                                               : rec.y_meas;
                    filter.emplace(std::move(y_hat0), rec.y_meas, *filter_params);
                } else {
                    filter = filter_update(*filter, rec.y_meas);
                }
                rec.y_hat = filter->y_hat;
            } else {
                rec.y_hat = rec.y_meas;
            }

            rec.y_d = desired[j];
            rec.e_y = rec.y - rec.y_d;

            if (j >= static_cast<std::size_t>(nu)) {
                rec.F = compute_F(rec.y_hat, gains.G, inputs[j - static_cast<std::size_t>(nu)]);
                rec.F_hat = observer.estimate();
                rec.e_F = observer.update(rec.F);
            } else {
                rec.F = nan_vector(n);
                rec.F_hat = nan_vector(n);
                rec.e_F = nan_vector(n);
            }

            if (j < K) {
                const Vector& yd_ahead = desired[j + static_cast<std::size_t>(nu)];
                const Vector e_obs = rec.y_hat - rec.y_d;
                rec.u = config.controller.law == ControlLaw::Fts
                            ? control_law_fts(yd_ahead, observer.estimate(), e_obs, gains)
                            : control_law_basic(yd_ahead, observer.estimate(), gains);
                if (!rec.u.allFinite()) {
                    throw DivergenceError("non-finite input at step " + std::to_string(j),
                                          static_cast<std::ptrdiff_t>(j));
                }
                inputs.push_back(rec.u);
                out.log.records.push_back(std::move(rec));
                plant.apply(inputs.back());
            } else {
                rec.u = nan_vector(m);
                out.log.records.push_back(std::move(rec));
            }
        }
    } catch (const SingularMatrixError& e) {
        out.error = std::make_exception_ptr(
            SingularMatrixError(e.what(), e.step() >= 0 ? e.step() : static_cast<std::ptrdiff_t>(j)));
    } catch (const DivergenceError& e) {
        out.error = std::make_exception_ptr(
            DivergenceError(e.what(), e.step() >= 0 ? e.step() : static_cast<std::ptrdiff_t>(j)));
    } catch (const DomainError& e) {
        // non-finite signals reaching a gain evaluation
        out.error = std::make_exception_ptr(DivergenceError(
            std::string("step ") + std::to_string(j) + ": " + e.what(), static_cast<std::ptrdiff_t>(j)));
    }
    return out;
}

SimOutcome simulate(const SimConfig& config) {
    config.validate();
    const std::vector<Vector> yd = desired_trajectory(config);
    const auto plant = make_plant(config);
    return simulate(config, *plant, yd);
}

SimLog run_closed_loop(const SimConfig& config) {
    SimOutcome out = simulate(config);
    if (out.error) std::rethrow_exception(out.error);
    return std::move(out.log);
}

}  // namespace ftsmfc
