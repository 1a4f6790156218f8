// Acceptance report: one PASS/FAIL line per criterion, diagnostics indented below.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ftsmfc/config.hpp"
#include "ftsmfc/csv_log.hpp"
#include "ftsmfc/errors.hpp"
#include "ftsmfc/metrics.hpp"
#include "ftsmfc/simulation.hpp"
#include "ftsmfc/verify_suite.hpp"

using namespace ftsmfc;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> details;

    void add(const PropertyResult& r) {
        passed = passed && r.passed;
        std::ostringstream s;
        print_property(r, s);
        std::string line = s.str();
        while (!line.empty() && line.back() == '\n') line.pop_back();
        details.push_back(line);
    }
    void note(std::string s) { details.push_back(std::move(s)); }
};

Outcome reference_experiment() {
    Outcome o;
    const SimConfig cfg = reference_config();
    const auto t0 = std::chrono::steady_clock::now();
    const SimOutcome run = simulate(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.note("runtime " + std::to_string(secs) + " s (limit 5 s), " + std::to_string(run.log.records.size()) +
           " records");
    if (secs >= 5.0) o.passed = false;
    if (!run.ok()) {
        o.passed = false;
        try {
            std::rethrow_exception(run.error);
        } catch (const NumericalError& e) {
            o.note(std::string("run aborted at step ") + std::to_string(e.step()) + ": " + e.what());
        }
    }
    try {
        const Metrics m = compute_metrics(run.log, cfg.metrics.settle_time, cfg.metrics.band);
        const double ex = m.channel("ex").max_abs, eth = m.channel("etheta").max_abs;
        o.note("max|e_x| = " + std::to_string(ex) + " (< 0.5), max|e_theta| = " + std::to_string(eth) + " (< 0.05)");
        if (!(ex < 0.5 && eth < 0.05)) o.passed = false;
    } catch (const DomainError& e) {
        o.passed = false;
        o.note(std::string("no steady-state window: ") + e.what());
    }
    return o;
}

Outcome constant_rejection() {
    Outcome o;
    o.add(check_constant_rejection(ObserverOrder::First, ControlLaw::Fts, 20, 500, 1e-9, 21));
    o.add(check_constant_rejection(ObserverOrder::Second, ControlLaw::Fts, 20, 500, 1e-9, 22));
    return o;
}

Outcome ramp_rejection() {
    Outcome o;
    o.add(check_ramp_rejection(20, 1000, 1e-9, 31));
    return o;
}

Outcome observer_neighborhood() {
    Outcome o;
    o.add(check_observer_neighborhood({0.01, 0.1, 1.0}, 100, 10000, 41));
    return o;
}

Outcome tracking_neighborhood() {
    Outcome o;
    o.add(check_tracking_neighborhood({0.01, 0.1, 1.0}, 100, 10000, 51));
    return o;
}

Outcome lyapunov_suite() {
    Outcome o;
    RecursionOptions opt;
    opt.samples = 10000;
    opt.seed = 61;
    for (const auto& r : check_lyapunov_recursion(opt)) o.add(r);
    return o;
}

Outcome identities() {
    Outcome o;
    o.add(check_gamma_identity(1000000, 71));
    o.add(check_rho(1000000, 72));
    o.add(check_gain_shape(100000, 73));
    o.add(check_closed_loop_identity(ControlLaw::Basic, 10000, 74));
    o.add(check_closed_loop_identity(ControlLaw::Fts, 10000, 75));
    return o;
}

Outcome determinism() {
    Outcome o;
    const SimConfig cfg = reference_config();
    auto render = [&] {
        std::ostringstream s;
        write_log_csv(simulate(cfg).log, s);
        return s.str();
    };
    const std::string a = render(), b = render();
    o.passed = !a.empty() && a == b;
    o.note(std::to_string(a.size()) + " bytes per render, identical: " + (a == b ? "yes" : "no"));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 pendulum reference experiment: steady-state bounds and runtime", reference_experiment},
        {"2 constant-disturbance exact rejection within 500 steps", constant_rejection},
        {"3 ramp rejection by the second-order observer within 1000 steps", ramp_rejection},
        {"4 observer ultimate bound under bounded-increment disturbances", observer_neighborhood},
        {"5 tracking neighborhood under bounded estimation error", tracking_neighborhood},
        {"6 Lyapunov recursion property suite", lyapunov_suite},
        {"7 algebraic and closed-loop identities", identities},
        {"8 deterministic reference CSV", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.note(std::string("exception: ") + e.what());
        }
        std::cout << (o.passed ? "PASS " : "FAIL ") << name << '\n';
        for (const auto& d : o.details) std::cout << "    " << d << '\n';
        std::cout.flush();
        if (!o.passed) ++failures;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << '/' << criteria.size()
              << " criteria passed\n";
    return failures;
}
