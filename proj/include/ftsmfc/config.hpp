#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ftsmfc/fts_core.hpp"
#include "ftsmfc/plant_models.hpp"
#include "ftsmfc/types.hpp"
#include "ftsmfc/ulm_observer.hpp"

namespace ftsmfc {

enum class PlantKind { Pendulum, Synthetic };
enum class ControlLaw { Basic, Fts };
enum class DesiredSource { Generated, File, Constant };

struct PlantConfig {
    PlantKind kind = PlantKind::Pendulum;
    PendulumParams pendulum;
    Eigen::Vector4d initial_state{0.45, -0.14, -0.3, 0.05};  // x, theta, xdot, thetadot
    SyntheticSpec synthetic;
};

struct DesiredConfig {
    DesiredSource source = DesiredSource::Generated;
    Eigen::Vector4d initial_state{0.45, -0.14, -0.3, 0.05};
    std::filesystem::path path;
    Vector value;  // constant reference
};

struct ControllerConfig {
    ControlLaw law = ControlLaw::Fts;
    double s = 11.0 / 9.0;
    double mu = 0.35;
    Matrix G;
};

struct ObserverConfig {
    ObserverOrder order = ObserverOrder::First;
    double lambda = 1.5;
    double r = 9.0 / 7.0;
    double lambda_delta = 1.5;
    double r_delta = 9.0 / 7.0;
    Vector F_hat0;  // zeros when empty
};

struct FilterConfig {
    bool enabled = true;
    Matrix L;        // 1x1 means scalar times identity
    double beta = 2.0;
    double p = 7.0 / 5.0;
    Vector initial_estimate;  // first n entries seed y_hat_0; measured output when empty
};

struct NoiseSettings {
    bool enabled = true;
    NoiseConfig waveform;
};

struct MetricsConfig {
    double settle_time = 20.0;
    Vector band;  // per output channel
};

struct SimConfig {
    double dt = 0.01;
    double T = 70.0;
    PlantConfig plant;
    DesiredConfig desired;
    ControllerConfig controller;
    ObserverConfig observer;
    FilterConfig filter;
    NoiseSettings noise;
    MetricsConfig metrics;
    double divergence_limit = kDivergenceLimit;
    std::filesystem::path output;

    Index output_dim() const;
    int relative_degree() const;

    HolderGainParams observer_params() const;
    HolderGainParams observer_delta_params() const;
    HolderGainParams control_params() const;
    HolderGainParams filter_params() const;

    // Throws ConfigError on any violated invariant.
    void validate() const;
};

// Pendulum reference experiment with its design gains.
SimConfig reference_config();

using Override = std::pair<std::string, std::string>;

// YAML document; see docs/architecture.md for the grammar. Overrides are
// applied before parsing as dotted.key=value pairs, values parsed as YAML.
// Relative file paths resolve against base_dir.
SimConfig parse_config(const std::string& text, const std::vector<Override>& overrides = {},
                       const std::filesystem::path& base_dir = {});

SimConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});

}  // namespace ftsmfc
