#include "ftsmfc/csv_log.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "ftsmfc/errors.hpp"

namespace ftsmfc {

namespace {

constexpr int kDigits = 17;

void put(std::ostream& out, double v) {
    out << ',';
    if (std::isnan(v)) {
        out << "nan";
    } else {
        out << v;
    }
}

void put_vec(std::ostream& out, const Vector& v) {
    for (Index i = 0; i < v.size(); ++i) put(out, v(i));
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return f;
}

}  // namespace

std::string log_csv_header(const SimLog& log) {
    if (log.output_dim == 2 && log.input_dim == 2) {
        return "t,x,theta,x_meas,theta_meas,x_hat,theta_hat,x_d,theta_d,ex,etheta,F1,F2,Fhat1,Fhat2,eF1,eF2,u1,u2";
    }
    std::string h = "t";
    const auto n = static_cast<int>(log.output_dim);
    const char* suffix[] = {"", "_meas", "_hat", "_d"};
    for (const char* s : suffix) {
        for (int i = 1; i <= n; ++i) h += ",y" + std::to_string(i) + s;
    }
    for (int i = 1; i <= n; ++i) h += ",e" + std::to_string(i);
    for (const char* s : {"F", "Fhat", "eF"}) {
        for (int i = 1; i <= n; ++i) h += "," + std::string(s) + std::to_string(i);
    }
    for (int i = 1; i <= static_cast<int>(log.input_dim); ++i) h += ",u" + std::to_string(i);
    return h;
}

void write_log_csv(const SimLog& log, std::ostream& out) {
    out << log_csv_header(log) << '\n';
    out << std::setprecision(kDigits);
    for (const auto& r : log.records) {
        out << r.t;
        put_vec(out, r.y);
        put_vec(out, r.y_meas);
        put_vec(out, r.y_hat);
        put_vec(out, r.y_d);
        put_vec(out, r.e_y);
        put_vec(out, r.F);
        put_vec(out, r.F_hat);
        put_vec(out, r.e_F);
        put_vec(out, r.u);
        out << '\n';
    }
}

void write_log_csv(const SimLog& log, const std::filesystem::path& path) {
    auto f = open_out(path);
    write_log_csv(log, f);
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

void write_trajectory_csv(const std::vector<Vector>& samples, double dt, std::ostream& out) {
    const Index n = samples.empty() ? 2 : samples.front().size();
    if (n == 2) {
        out << "t,x_d,theta_d\n";
    } else {
        out << 't';
        for (Index i = 1; i <= n; ++i) out << ",yd" << i;
        out << '\n';
    }
    out << std::setprecision(kDigits);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        out << static_cast<double>(k) * dt;
        put_vec(out, samples[k]);
        out << '\n';
    }
}

void write_trajectory_csv(const std::vector<Vector>& samples, double dt, const std::filesystem::path& path) {
    auto f = open_out(path);
    write_trajectory_csv(samples, dt, f);
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<Vector> read_trajectory_csv(const std::filesystem::path& path, Index n) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trajectory file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("trajectory file " + path.string() + " is empty");
    std::vector<Vector> out;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                cells.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (static_cast<Index>(cells.size()) < n + 1) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected t and " +
                              std::to_string(n) + " outputs");
        }
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = cells[static_cast<std::size_t>(i) + 1];
        if (!v.allFinite()) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": non-finite sample");
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace ftsmfc
