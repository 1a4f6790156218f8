#include "ftsmfc/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "ftsmfc/errors.hpp"
#include "ftsmfc/tracking_control.hpp"

namespace ftsmfc {

namespace {

Matrix design_gain_matrix() {
    Matrix G(2, 2);
    G << 0.559, 0.196, 0.196, 0.657;
    return 0.01 * G;
}

void check_keys(const YAML::Node& node, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!node.IsMap()) throw ConfigError(where.empty() ? "config root must be a map" : where + " must be a map");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!ok.count(key)) throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
}

// Accepts plain numbers and fractions written as "a/b".
double real(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) throw ConfigError(where + ": expected a number");
    const auto text = node.as<std::string>();
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        }
        std::size_t u1 = 0, u2 = 0;
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        const double num = std::stod(a, &u1), den = std::stod(b, &u2);
        if (u1 != a.size() || u2 != b.size() || den == 0.0) throw std::invalid_argument(text);
        return num / den;
    } catch (const std::exception&) {
        throw ConfigError(where + ": cannot parse '" + text + "' as a number");
    }
}

bool boolean(const YAML::Node& node, const std::string& where) {
    try {
        return node.as<bool>();
    } catch (const YAML::Exception&) {
        throw ConfigError(where + ": expected true or false");
    }
}

std::string word(const YAML::Node& node, const std::string& where) {
    if (!node.IsScalar()) throw ConfigError(where + ": expected a string");
    return node.as<std::string>();
}

Vector vec(const YAML::Node& node, const std::string& where) {
    if (!node.IsSequence()) throw ConfigError(where + ": expected a list of numbers");
    Vector v(static_cast<Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) v(static_cast<Index>(i)) = real(node[i], where);
    return v;
}

Eigen::Vector4d state4(const YAML::Node& node, const std::string& where) {
    const Vector v = vec(node, where);
    if (v.size() != 4) throw ConfigError(where + ": expected [x, theta, xdot, thetadot]");
    return v;
}

// A scalar gives a 1x1 matrix.
Matrix mat(const YAML::Node& node, const std::string& where) {
    if (node.IsScalar()) return Matrix::Constant(1, 1, real(node, where));
    if (!node.IsSequence() || node.size() == 0) throw ConfigError(where + ": expected a list of rows");
    const std::size_t rows = node.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!node[i].IsSequence()) throw ConfigError(where + ": rows must be lists");
        if (i == 0) cols = node[i].size();
        if (node[i].size() != cols || cols == 0) throw ConfigError(where + ": ragged matrix");
    }
    Matrix M(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) M(static_cast<Index>(i), static_cast<Index>(j)) = real(node[i][j], where);
    }
    return M;
}

void set_dotted(YAML::Node node, const std::vector<std::string>& parts, std::size_t i, const YAML::Node& value) {
    const std::string& part = parts[i];
    const bool index = !part.empty() && std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); });
    if (index && node.IsSequence()) {
        const std::size_t idx = std::stoul(part);
        if (idx >= node.size()) throw ConfigError("override index out of range: " + part);
        if (i + 1 == parts.size()) {
            node[idx] = value;
        } else {
            set_dotted(node[idx], parts, i + 1, value);
        }
        return;
    }
    if (!node.IsMap() && !node.IsNull()) throw ConfigError("override path crosses a non-map at '" + part + "'");
    if (i + 1 == parts.size()) {
        node[part] = value;
        return;
    }
    YAML::Node child = node[part];
    if (!child.IsDefined() || child.IsNull()) child = YAML::Node(YAML::NodeType::Map);
    set_dotted(child, parts, i + 1, value);
}

void apply_override(YAML::Node& root, const Override& ov) {
    std::vector<std::string> parts;
    std::stringstream ss(ov.first);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) throw ConfigError("malformed override key '" + ov.first + "'");
        parts.push_back(part);
    }
    if (parts.empty()) throw ConfigError("empty override key");
    YAML::Node value;
    try {
        value = YAML::Load(ov.second);
    } catch (const YAML::Exception& e) {
        throw ConfigError("override " + ov.first + ": " + e.what());
    }
    set_dotted(root, parts, 0, value);
}

SyntheticKind synthetic_kind(const std::string& s) {
    if (s == "constant") return SyntheticKind::Constant;
    if (s == "ramp") return SyntheticKind::Ramp;
    if (s == "sinusoid") return SyntheticKind::Sinusoid;
    if (s == "random_walk") return SyntheticKind::RandomWalk;
    throw ConfigError("plant.synthetic.F: expected constant, ramp, sinusoid or random_walk, got '" + s + "'");
}

void parse_plant(const YAML::Node& n, SimConfig& c, bool& synthetic_G) {
    check_keys(n, "plant", {"kind", "pendulum", "initial_state", "synthetic"});
    if (n["kind"]) {
        const auto k = word(n["kind"], "plant.kind");
        if (k == "pendulum") {
            c.plant.kind = PlantKind::Pendulum;
        } else if (k == "synthetic") {
            c.plant.kind = PlantKind::Synthetic;
        } else {
            throw ConfigError("plant.kind: expected pendulum or synthetic, got '" + k + "'");
        }
    }
    if (const auto p = n["pendulum"]) {
        check_keys(p, "plant.pendulum", {"M_cart", "m_pend", "l_half", "I_pend", "g", "c_x", "c_theta"});
        auto& pp = c.plant.pendulum;
        if (p["M_cart"]) pp.M_cart = real(p["M_cart"], "plant.pendulum.M_cart");
        if (p["m_pend"]) pp.m_pend = real(p["m_pend"], "plant.pendulum.m_pend");
        if (p["l_half"]) pp.l_half = real(p["l_half"], "plant.pendulum.l_half");
        if (p["I_pend"]) pp.I_pend = real(p["I_pend"], "plant.pendulum.I_pend");
        if (p["g"]) pp.g = real(p["g"], "plant.pendulum.g");
        if (p["c_x"]) pp.c_x = real(p["c_x"], "plant.pendulum.c_x");
        if (p["c_theta"]) pp.c_theta = real(p["c_theta"], "plant.pendulum.c_theta");
    }
    if (n["initial_state"]) c.plant.initial_state = state4(n["initial_state"], "plant.initial_state");
    if (const auto s = n["synthetic"]) {
        check_keys(s, "plant.synthetic",
                   {"F", "offset", "slope", "amplitude", "omega", "phase", "bound", "seed", "G", "relative_degree",
                    "y_init"});
        auto& sp = c.plant.synthetic;
        if (s["F"]) sp.kind = synthetic_kind(word(s["F"], "plant.synthetic.F"));
        if (s["offset"]) sp.offset = vec(s["offset"], "plant.synthetic.offset");
        if (s["slope"]) sp.slope = vec(s["slope"], "plant.synthetic.slope");
        if (s["amplitude"]) sp.amplitude = vec(s["amplitude"], "plant.synthetic.amplitude");
        if (s["omega"]) sp.omega = real(s["omega"], "plant.synthetic.omega");
        if (s["phase"]) sp.phase = real(s["phase"], "plant.synthetic.phase");
        if (s["bound"]) sp.bound = real(s["bound"], "plant.synthetic.bound");
        if (s["seed"]) {
            try {
                sp.seed = s["seed"].as<std::uint64_t>();
            } catch (const YAML::Exception&) {
                throw ConfigError("plant.synthetic.seed: expected a non-negative integer");
            }
        }
        if (s["G"]) {
            sp.G = mat(s["G"], "plant.synthetic.G");
            synthetic_G = true;
        }
        if (s["relative_degree"]) {
            try {
                sp.relative_degree = s["relative_degree"].as<int>();
            } catch (const YAML::Exception&) {
                throw ConfigError("plant.synthetic.relative_degree: expected an integer");
            }
        }
        if (s["y_init"]) sp.y_init = vec(s["y_init"], "plant.synthetic.y_init");
    }
}

void parse_noise(const YAML::Node& n, SimConfig& c) {
    check_keys(n, "noise", {"enabled", "amplitudes", "base_freqs", "fm_depth", "fm_freqs", "phases"});
    auto& w = c.noise.waveform;
    if (n["enabled"]) c.noise.enabled = boolean(n["enabled"], "noise.enabled");
    if (n["amplitudes"]) w.amplitudes = vec(n["amplitudes"], "noise.amplitudes");
    if (n["base_freqs"]) w.base_freqs = vec(n["base_freqs"], "noise.base_freqs");
    if (n["fm_depth"]) w.fm_depth = vec(n["fm_depth"], "noise.fm_depth");
    if (n["fm_freqs"]) w.fm_freqs = vec(n["fm_freqs"], "noise.fm_freqs");
    if (n["phases"]) w.phases = vec(n["phases"], "noise.phases");
}

SimConfig from_yaml(const YAML::Node& root, const std::filesystem::path& base_dir) {
    SimConfig c = reference_config();
    if (root.IsNull()) return c;
    check_keys(root, "",
               {"dt", "T", "plant", "desired", "controller", "observer", "filter", "noise", "metrics",
                "divergence_limit", "output"});
    if (root["dt"]) c.dt = real(root["dt"], "dt");
    if (root["T"]) c.T = real(root["T"], "T");
    if (root["divergence_limit"]) c.divergence_limit = real(root["divergence_limit"], "divergence_limit");
    if (root["output"]) c.output = base_dir / word(root["output"], "output");

    bool synthetic_G = false;
    if (root["plant"]) parse_plant(root["plant"], c, synthetic_G);

    if (const auto d = root["desired"]) {
        check_keys(d, "desired", {"source", "initial_state", "path", "value"});
        if (d["source"]) {
            const auto s = word(d["source"], "desired.source");
            if (s == "generated") {
                c.desired.source = DesiredSource::Generated;
            } else if (s == "file") {
                c.desired.source = DesiredSource::File;
            } else if (s == "constant") {
                c.desired.source = DesiredSource::Constant;
            } else {
                throw ConfigError("desired.source: expected generated, file or constant, got '" + s + "'");
            }
        }
        if (d["initial_state"]) c.desired.initial_state = state4(d["initial_state"], "desired.initial_state");
        if (d["path"]) c.desired.path = base_dir / word(d["path"], "desired.path");
        if (d["value"]) c.desired.value = vec(d["value"], "desired.value");
    }

    bool controller_G = false;
    if (const auto n = root["controller"]) {
        check_keys(n, "controller", {"law", "s", "mu", "G"});
        if (n["law"]) {
            const auto s = word(n["law"], "controller.law");
            if (s == "basic") {
                c.controller.law = ControlLaw::Basic;
            } else if (s == "fts") {
                c.controller.law = ControlLaw::Fts;
            } else {
                throw ConfigError("controller.law: expected basic or fts, got '" + s + "'");
            }
        }
        if (n["s"]) c.controller.s = real(n["s"], "controller.s");
        if (n["mu"]) c.controller.mu = real(n["mu"], "controller.mu");
        if (n["G"]) {
            c.controller.G = mat(n["G"], "controller.G");
            controller_G = true;
        }
    }
    if (!controller_G && c.plant.kind == PlantKind::Synthetic && synthetic_G) c.controller.G = c.plant.synthetic.G;

    if (const auto n = root["observer"]) {
        check_keys(n, "observer", {"order", "lambda", "r", "lambda_delta", "r_delta", "F_hat0"});
        if (n["order"]) {
            const auto s = word(n["order"], "observer.order");
            if (s == "first") {
                c.observer.order = ObserverOrder::First;
            } else if (s == "second") {
                c.observer.order = ObserverOrder::Second;
            } else {
                throw ConfigError("observer.order: expected first or second, got '" + s + "'");
            }
        }
        if (n["lambda"]) c.observer.lambda = real(n["lambda"], "observer.lambda");
        if (n["r"]) c.observer.r = real(n["r"], "observer.r");
        // the difference loop follows the main loop unless set on its own
        c.observer.lambda_delta = n["lambda_delta"] ? real(n["lambda_delta"], "observer.lambda_delta") : c.observer.lambda;
        c.observer.r_delta = n["r_delta"] ? real(n["r_delta"], "observer.r_delta") : c.observer.r;
        if (n["F_hat0"]) c.observer.F_hat0 = vec(n["F_hat0"], "observer.F_hat0");
    }

    if (const auto n = root["filter"]) {
        check_keys(n, "filter", {"enabled", "L", "beta", "p", "initial_estimate"});
        if (n["enabled"]) c.filter.enabled = boolean(n["enabled"], "filter.enabled");
        if (n["L"]) c.filter.L = mat(n["L"], "filter.L");
        if (n["beta"]) c.filter.beta = real(n["beta"], "filter.beta");
        if (n["p"]) c.filter.p = real(n["p"], "filter.p");
        if (n["initial_estimate"]) c.filter.initial_estimate = vec(n["initial_estimate"], "filter.initial_estimate");
    }

    if (root["noise"]) parse_noise(root["noise"], c);

    if (const auto n = root["metrics"]) {
        check_keys(n, "metrics", {"settle_time", "band"});
        if (n["settle_time"]) c.metrics.settle_time = real(n["settle_time"], "metrics.settle_time");
        if (n["band"]) c.metrics.band = vec(n["band"], "metrics.band");
    }

    // defaults sized by the plant
    const Index n = c.output_dim();
    if (c.plant.kind == PlantKind::Synthetic) {
        if (!root["filter"] || !root["filter"]["initial_estimate"]) c.filter.initial_estimate = Vector();
        if (!root["noise"] || !root["noise"]["enabled"]) c.noise.enabled = false;
        if (!root["metrics"] || !root["metrics"]["band"]) c.metrics.band = Vector::Constant(n, 0.5);
        if (!root["desired"] || !root["desired"]["source"]) c.desired.source = DesiredSource::Constant;
    }
    if (c.observer.F_hat0.size() == 0) c.observer.F_hat0 = Vector::Zero(n);
    if (c.desired.source == DesiredSource::Constant && c.desired.value.size() == 0) c.desired.value = Vector::Zero(n);
    c.validate();
    return c;
}

HolderGainParams make_params(double exponent, double scale, const char* what) {
    try {
        return HolderGainParams(exponent, scale);
    } catch (const std::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

Index SimConfig::output_dim() const {
    return plant.kind == PlantKind::Pendulum ? 2 : plant.synthetic.G.rows();
}

int SimConfig::relative_degree() const {
    return plant.kind == PlantKind::Pendulum ? 2 : plant.synthetic.relative_degree;
}

HolderGainParams SimConfig::observer_params() const { return make_params(observer.r, observer.lambda, "observer"); }

HolderGainParams SimConfig::observer_delta_params() const {
    return make_params(observer.r_delta, observer.lambda_delta, "observer delta");
}

HolderGainParams SimConfig::control_params() const { return make_params(controller.s, controller.mu, "controller"); }

HolderGainParams SimConfig::filter_params() const {
    try {
        if (filter.L.rows() == 1 && filter.L.cols() == 1) {
            return HolderGainParams::with_scalar_weight(filter.p, filter.beta, filter.L(0, 0));
        }
        return HolderGainParams(filter.p, filter.beta, filter.L);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("filter: ") + e.what());
    }
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be non-negative");
    if (!(divergence_limit > 0.0)) throw ConfigError("divergence_limit must be positive");

    Index m = 2;
    if (plant.kind == PlantKind::Pendulum) {
        try {
            plant.pendulum.validate();
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        if (!plant.initial_state.allFinite()) throw ConfigError("plant.initial_state must be finite");
    } else {
        try {
            SyntheticUlmPlant probe(plant.synthetic);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("plant.synthetic: ") + e.what());
        }
        m = plant.synthetic.G.cols();
    }
    const Index n = output_dim();

    (void)observer_params();
    (void)observer_delta_params();
    (void)control_params();
    if (filter.enabled) {
        const HolderGainParams fp = filter_params();
        if (fp.weight() && fp.weight()->rows() != n) throw ConfigError("filter.L must be scalar or n x n");
    }

    if (controller.G.rows() != n || controller.G.cols() != m) {
        throw ConfigError("controller.G must be " + std::to_string(n) + " x " + std::to_string(m));
    }
    try {
        ControlGains gains(control_params(), controller.G, relative_degree());
        solve_input(controller.G, Vector::Zero(n));
    } catch (const SingularMatrixError&) {
        throw ConfigError("controller.G must have full row rank");
    } catch (const std::exception& e) {
        throw ConfigError(std::string("controller: ") + e.what());
    }

    if (observer.F_hat0.size() != n) throw ConfigError("observer.F_hat0 must have " + std::to_string(n) + " entries");
    if (filter.initial_estimate.size() != 0 && filter.initial_estimate.size() < n) {
        throw ConfigError("filter.initial_estimate must have at least " + std::to_string(n) + " entries");
    }
    if (noise.enabled) {
        try {
            noise.waveform.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("noise: ") + e.what());
        }
        if (noise.waveform.amplitudes.size() != n) throw ConfigError("noise vectors must match the output dimension");
    }
    switch (desired.source) {
        case DesiredSource::Generated:
            if (plant.kind != PlantKind::Pendulum) throw ConfigError("desired.source generated needs the pendulum plant");
            if (!desired.initial_state.allFinite()) throw ConfigError("desired.initial_state must be finite");
            break;
        case DesiredSource::File:
            if (desired.path.empty()) throw ConfigError("desired.path is required for source file");
            break;
        case DesiredSource::Constant:
            if (desired.value.size() != n) throw ConfigError("desired.value must have " + std::to_string(n) + " entries");
            break;
    }
    if (!(metrics.settle_time >= 0.0)) throw ConfigError("metrics.settle_time must be non-negative");
    if (metrics.band.size() != n || (metrics.band.array() <= 0.0).any()) {
        throw ConfigError("metrics.band must hold one positive bound per output");
    }
}

SimConfig reference_config() {
    SimConfig c;
    c.controller.G = design_gain_matrix();
    c.filter.L = Matrix::Constant(1, 1, 2.1);
    c.filter.initial_estimate = Eigen::Vector4d(0.0, 0.102, 0.0, 0.0);
    c.observer.F_hat0 = Vector::Zero(2);
    c.metrics.band = Eigen::Vector2d(0.5, 0.05);
    return c;
}

SimConfig parse_config(const std::string& text, const std::vector<Override>& overrides,
                       const std::filesystem::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!overrides.empty() && !root.IsDefined()) root = YAML::Node(YAML::NodeType::Map);
    if (!overrides.empty() && root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    for (const auto& ov : overrides) apply_override(root, ov);
    try {
        return from_yaml(root, base_dir);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
}

SimConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides, path.parent_path());
}

}  // namespace ftsmfc
