#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ftsmfc/simulation.hpp"
#include "ftsmfc/types.hpp"

namespace ftsmfc {

struct ChannelMetrics {
    std::string name;
    double max_abs = 0.0;  // over t > settle_time
    double rms = 0.0;
    std::size_t samples = 0;
    // Tracking channels only: first time after which |e| stays within band
    // for the rest of the log; NaN when it never does or no band applies.
    double band = 0.0;
    double band_entry_time = 0.0;
};

struct Metrics {
    double settle_time = 0.0;
    std::size_t records = 0;
    std::vector<ChannelMetrics> channels;  // tracking channels first, then estimation

    const ChannelMetrics& channel(const std::string& name) const;
};

// Throws DomainError when no record has t > settle_time. band holds one bound
// per output channel (empty: no band entry times).
Metrics compute_metrics(const SimLog& log, double settle_time, const Vector& band = Vector());

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat key=value lines; extra entries are written first.
void write_metrics(const Metrics& m, std::ostream& out, const KeyValues& extra = {});
void write_metrics(const Metrics& m, const std::filesystem::path& path, const KeyValues& extra = {});

}  // namespace ftsmfc
