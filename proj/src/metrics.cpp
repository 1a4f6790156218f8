#include "ftsmfc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "ftsmfc/errors.hpp"

namespace ftsmfc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> tracking_names(Index n) {
    if (n == 2) return {"ex", "etheta"};
    std::vector<std::string> v;
    for (Index i = 1; i <= n; ++i) v.push_back("e" + std::to_string(i));
    return v;
}

ChannelMetrics summarize(const SimLog& log, double settle_time, const std::string& name, bool tracking, Index i,
                         double band) {
    ChannelMetrics c;
    c.name = name;
    c.band = band;
    double sq = 0.0;
    for (const auto& r : log.records) {
        if (!(r.t > settle_time)) continue;
        const double v = tracking ? r.e_y(i) : r.e_F(i);
        if (std::isnan(v)) continue;
        c.max_abs = std::max(c.max_abs, std::abs(v));
        sq += v * v;
        ++c.samples;
    }
    if (c.samples == 0) {
        c.max_abs = kNaN;
        c.rms = kNaN;
    } else {
        c.rms = std::sqrt(sq / static_cast<double>(c.samples));
    }
    c.band_entry_time = kNaN;
    if (tracking && band > 0.0 && !log.records.empty()) {
        // walk back to the last excursion outside the band
        std::size_t k = log.records.size();
        while (k > 0 && std::abs(log.records[k - 1].e_y(i)) <= band) --k;
        if (k < log.records.size()) c.band_entry_time = log.records[k].t;
    }
    return c;
}

}  // namespace

const ChannelMetrics& Metrics::channel(const std::string& name) const {
    for (const auto& c : channels) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no metrics channel '" + name + "'");
}

Metrics compute_metrics(const SimLog& log, double settle_time, const Vector& band) {
    const Index n = log.output_dim;
    if (band.size() != 0 && band.size() != n) throw DimensionError("band must hold one bound per output");
    bool any = false;
    for (const auto& r : log.records) any = any || r.t > settle_time;
    if (!any) throw DomainError("no samples after the settle time");

    Metrics m;
    m.settle_time = settle_time;
    m.records = log.records.size();
    const auto names = tracking_names(n);
    for (Index i = 0; i < n; ++i) {
        m.channels.push_back(
            summarize(log, settle_time, names[static_cast<std::size_t>(i)], true, i, band.size() ? band(i) : 0.0));
    }
    for (Index i = 0; i < n; ++i) {
        m.channels.push_back(summarize(log, settle_time, "eF" + std::to_string(i + 1), false, i, 0.0));
    }
    return m;
}

void write_metrics(const Metrics& m, std::ostream& out, const KeyValues& extra) {
    for (const auto& [k, v] : extra) out << k << '=' << v << '\n';
    out << std::setprecision(17);
    out << "records=" << m.records << '\n';
    out << "settle_time=" << m.settle_time << '\n';
    for (const auto& c : m.channels) {
        out << c.name << ".max_abs=" << c.max_abs << '\n';
        out << c.name << ".rms=" << c.rms << '\n';
        out << c.name << ".samples=" << c.samples << '\n';
        if (c.band > 0.0) {
            out << c.name << ".band=" << c.band << '\n';
            out << c.name << ".band_entry_time=" << c.band_entry_time << '\n';
        }
    }
}

void write_metrics(const Metrics& m, const std::filesystem::path& path, const KeyValues& extra) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_metrics(m, f, extra);
}

}  // namespace ftsmfc
