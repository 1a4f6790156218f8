#pragma once

#include <exception>
#include <memory>
#include <vector>

#include "ftsmfc/config.hpp"
#include "ftsmfc/plant_models.hpp"
#include "ftsmfc/types.hpp"

namespace ftsmfc {

// One control tick j (t = j dt). Entries not defined at a tick hold NaN:
// F, F_hat, e_F before j = nu, u on the terminal tick.
struct SimRecord {
    double t = 0.0;
    Vector y;       // true output y_j
    Vector y_meas;  // y_j + noise
    Vector y_hat;   // filtered output
    Vector y_d;     // desired output
    Vector e_y;     // y_j - y^d_j
    Vector F;       // newest reconstructed sample F_{j-nu}
    Vector F_hat;   // estimate that was held for index j-nu
    Vector e_F;     // F_hat - F
    Vector u;       // input applied after this tick
};

struct SimLog {
    Index output_dim = 2;
    Index input_dim = 2;
    int relative_degree = 2;
    double dt = 0.01;
    std::vector<SimRecord> records;
};

struct SimOutcome {
    SimLog log;
    std::exception_ptr error;  // NumericalError subclass when the run aborted

    bool ok() const noexcept { return !error; }
};

// y^d_0 .. y^d_{K+nu}, K = floor(T/dt): the controller looks nu samples ahead.
std::vector<Vector> desired_trajectory(const SimConfig& config);

std::unique_ptr<Plant> make_plant(const SimConfig& config);

// Runs the loop on an explicit plant and reference. A numerical failure ends
// the run; the outcome keeps every record logged before it.
SimOutcome simulate(const SimConfig& config, Plant& plant, const std::vector<Vector>& desired);

SimOutcome simulate(const SimConfig& config);

// Throws the numerical error of an aborted run instead of returning it.
SimLog run_closed_loop(const SimConfig& config);

}  // namespace ftsmfc
