#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ftsmfc/config.hpp"
#include "ftsmfc/csv_log.hpp"
#include "ftsmfc/errors.hpp"
#include "ftsmfc/metrics.hpp"
#include "ftsmfc/simulation.hpp"
#include "ftsmfc/verify_suite.hpp"

namespace fs = std::filesystem;
using namespace ftsmfc;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kVerify = 3 };

std::vector<Override> parse_overrides(const std::vector<std::string>& sets) {
    std::vector<Override> out;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
        out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

fs::path metrics_path_for(const fs::path& csv) {
    fs::path p = csv;
    p.replace_extension(".metrics");
    return p;
}

struct RunSummary {
    int code = kOk;
    std::string status = "ok";
    std::string message;
    std::optional<Metrics> metrics;
};

// Writes the CSV (partial on numerical failure) and the metrics file.
RunSummary run_and_write(const SimConfig& cfg, const fs::path& out_csv, const fs::path& out_metrics) {
    RunSummary s;
    SimOutcome outcome = simulate(cfg);
    write_log_csv(outcome.log, out_csv);

    KeyValues extra;
    if (outcome.error) {
        s.code = kNumerical;
        try {
            std::rethrow_exception(outcome.error);
        } catch (const SingularMatrixError& e) {
            s.status = "singular";
            s.message = e.what();
            extra.emplace_back("failure_step", std::to_string(e.step()));
        } catch (const NumericalError& e) {
            s.status = "diverged";
            s.message = e.what();
            extra.emplace_back("failure_step", std::to_string(e.step()));
        }
    }
    extra.insert(extra.begin(), {"status", s.status});
    try {
        s.metrics = compute_metrics(outcome.log, cfg.metrics.settle_time, cfg.metrics.band);
        write_metrics(*s.metrics, out_metrics, extra);
    } catch (const DomainError& e) {
        std::ofstream f(out_metrics);
        for (const auto& [k, v] : extra) f << k << '=' << v << '\n';
        f << "records=" << outcome.log.records.size() << '\n';
        f << "metrics_error=" << e.what() << '\n';
    }
    return s;
}

int cmd_simulate(const std::string& config, const std::string& out, const std::string& metrics,
                 const std::vector<std::string>& sets) {
    const SimConfig cfg = load_config(config, parse_overrides(sets));
    const fs::path csv = out.empty() ? (cfg.output.empty() ? fs::path("run.csv") : cfg.output) : fs::path(out);
    const fs::path mpath = metrics.empty() ? metrics_path_for(csv) : fs::path(metrics);
    const RunSummary s = run_and_write(cfg, csv, mpath);
    if (s.code != kOk) {
        std::cerr << "numerical failure: " << s.message << " (partial log written to " << csv.string() << ")\n";
        return s.code;
    }
    std::cout << "wrote " << csv.string() << " and " << mpath.string() << '\n';
    if (s.metrics) write_metrics(*s.metrics, std::cout);
    return kOk;
}

int cmd_generate(const std::string& config, const std::string& out, const std::vector<std::string>& sets) {
    const SimConfig cfg = load_config(config, parse_overrides(sets));
    if (cfg.plant.kind != PlantKind::Pendulum) throw ConfigError("generate-trajectory needs the pendulum plant");
    const auto yd = generate_desired_trajectory(cfg.desired.initial_state, cfg.T, cfg.dt, cfg.plant.pendulum);
    write_trajectory_csv(yd, cfg.dt, fs::path(out));
    std::cout << "wrote " << yd.size() << " samples to " << out << '\n';
    return kOk;
}

int cmd_verify(const std::string& suite) {
    std::vector<std::string> selected;
    if (suite == "all") {
        selected = suite_selectors();
    } else {
        selected.push_back(suite);
    }
    bool ok = true;
    for (const auto& s : selected) {
        const SuiteReport rep = run_suite(s);
        print_report(rep, std::cout);
        std::cout.flush();
        ok = ok && rep.passed();
    }
    return ok ? kOk : kVerify;
}

int cmd_sweep(const std::string& config, const std::string& param, const std::vector<std::string>& values,
              const std::string& out, unsigned threads, const std::vector<std::string>& sets) {
    const auto base = parse_overrides(sets);
    // every configuration is parsed up front so a bad value fails before any run
    std::vector<SimConfig> cfgs;
    for (const auto& v : values) {
        auto ov = base;
        ov.emplace_back(param, v);
        cfgs.push_back(load_config(config, ov));
    }
    const fs::path dir(out);
    fs::create_directories(dir);

    std::vector<RunSummary> results(cfgs.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto worker = [&] {
        for (std::size_t i = next++; i < cfgs.size(); i = next++) {
            try {
                const std::string stem = "run_" + std::to_string(i);
                results[i] = run_and_write(cfgs[i], dir / (stem + ".csv"), dir / (stem + ".metrics"));
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfgs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);

    std::ofstream summary(dir / "summary.csv");
    summary << "run," << param << ",status,ex_max,etheta_max,eF1_max,eF2_max\n" << std::setprecision(17);
    int code = kOk;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        summary << i << ',' << values[i] << ',' << r.status;
        for (std::size_t c = 0; c < 4; ++c) {
            summary << ',';
            if (r.metrics && c < r.metrics->channels.size()) {
                summary << r.metrics->channels[c].max_abs;
            } else {
                summary << "nan";
            }
        }
        summary << '\n';
        if (r.code != kOk) code = kNumerical;
        std::cout << "run_" << i << ' ' << param << '=' << values[i] << ' ' << r.status << '\n';
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-time-stable model-free control simulator"};
    app.require_subcommand(1);

    std::string config, out, metrics, suite, param;
    std::vector<std::string> sets, values;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    auto* sim = app.add_subcommand("simulate", "Run the closed loop and write the CSV log and metrics");
    sim->add_option("--config", config, "Config file (YAML)")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out, "CSV output path (default: config output, else run.csv)");
    sim->add_option("--metrics", metrics, "Metrics output path (default: <out>.metrics)");
    sim->add_option("--set", sets, "Override a config entry, dotted.key=value");

    auto* gen = app.add_subcommand("generate-trajectory", "Write the open-loop desired trajectory");
    gen->add_option("--config", config, "Config file (YAML)")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", out, "CSV output path")->required();
    gen->add_option("--set", sets, "Override a config entry, dotted.key=value");

    auto* ver = app.add_subcommand("verify", "Run a property suite");
    ver->add_option("--suite", suite, "Suite name or 'all'")
        ->required()
        ->check(CLI::IsMember([] {
            auto s = suite_selectors();
            s.push_back("all");
            return s;
        }()));

    auto* sw = app.add_subcommand("sweep", "Run one simulation per value of a config entry");
    sw->add_option("--config", config, "Config file (YAML)")->required()->check(CLI::ExistingFile);
    sw->add_option("--param", param, "Dotted config key to vary")->required();
    sw->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
    sw->add_option("--out", out, "Output directory")->required();
    sw->add_option("--threads", threads, "Concurrent runs")->check(CLI::PositiveNumber);
    sw->add_option("--set", sets, "Override a config entry, dotted.key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*sim) return cmd_simulate(config, out, metrics, sets);
        if (*gen) return cmd_generate(config, out, sets);
        if (*ver) return cmd_verify(suite);
        if (*sw) return cmd_sweep(config, param, values, out, threads, sets);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    return kOk;
}
