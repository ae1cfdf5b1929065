#include "stalz/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "stalz/errors.hpp"

namespace stalz {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& field, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw config_error(field + ": cannot parse '" + value + "' as a number");
    }
}

long long parse_int(const std::string& field, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long out = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw config_error(field + ": cannot parse '" + value + "' as an integer");
    }
}

std::vector<double> parse_tau_grid(const std::string& value) {
    const std::string v = trim(value);
    if (v.rfind("logspace(", 0) == 0 && v.back() == ')') {
        const std::string args = v.substr(9, v.size() - 10);
        std::vector<std::string> parts;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(trim(item));
        if (parts.size() != 3)
            throw config_error("tau_grid: logspace takes (lo, hi, n)");
        const double lo = parse_double("tau_grid", parts[0]);
        const double hi = parse_double("tau_grid", parts[1]);
        const long long n = parse_int("tau_grid", parts[2]);
        if (n < 1 || n > 1000000) throw config_error("tau_grid: point count out of range");
        return logspace(lo, hi, static_cast<int>(n));
    }
    std::vector<double> grid;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string token = trim(item);
        if (token.empty()) throw config_error("tau_grid: empty entry in list");
        grid.push_back(parse_double("tau_grid", token));
    }
    if (grid.empty()) throw config_error("tau_grid: empty list");
    return grid;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

std::vector<double> logspace(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo)) throw config_error("tau_grid: need 0 < lo < hi");
    if (n < 1) throw config_error("tau_grid: need at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> RunConfig::default_tau_grid() { return logspace(0.01, 10.0, 60); }

double RunConfig::delta_rad_per_ms() const { return kTwoPi * delta_khz; }

LZParams RunConfig::lz(double tau) const { return LZParams(delta_rad_per_ms(), theta0, tau); }

void RunConfig::validate() const {
    if (!(delta_khz > 0.0)) throw config_error("delta_khz: must be positive");
    if (!(theta0 > 0.0) || !(theta0 < 1.5707963267948966))
        throw config_error("theta0: must lie in (0, pi/2)");
    if (!(gamma_per_ms >= 0.0)) throw config_error("gamma_per_ms: must be >= 0");
    if (tau_grid.empty()) throw config_error("tau_grid: must not be empty");
    double prev = 0.0;
    for (double tau : tau_grid) {
        if (!(tau > 0.0)) throw config_error("tau_grid: entries must be positive");
        if (!(tau > prev)) throw config_error("tau_grid: entries must be strictly increasing");
        prev = tau;
    }
    if (steps < 100) throw config_error("steps: must be >= 100");
    if (ensemble_size < 0) throw config_error("ensemble_size: must be >= 0");
    if (ensemble_size > 0 && ensemble_size < 100)
        throw config_error("ensemble_size: must be 0 or >= 100");
    if (threads < 1) throw config_error("threads: must be >= 1");
    if (output_path.empty()) throw config_error("output_path: must not be empty");
}

RunConfig parse_config(std::istream& in) {
    RunConfig config;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
        if (!seen.insert(key).second)
            throw config_error(key + ": duplicate key (line " + std::to_string(lineno) + ")");
        if (key == "delta_khz") {
            config.delta_khz = parse_double(key, value);
        } else if (key == "theta0") {
            config.theta0 = parse_double(key, value);
        } else if (key == "gamma_per_ms") {
            config.gamma_per_ms = parse_double(key, value);
        } else if (key == "tau_grid") {
            config.tau_grid = parse_tau_grid(value);
        } else if (key == "steps") {
            config.steps = static_cast<int>(parse_int(key, value));
        } else if (key == "ensemble_size") {
            config.ensemble_size = static_cast<int>(parse_int(key, value));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "threads") {
            config.threads = static_cast<int>(parse_int(key, value));
        } else if (key == "output_path") {
            if (value.empty()) throw config_error("output_path: must not be empty");
            config.output_path = value;
        } else {
            throw config_error("unknown config key '" + key + "' (line " +
                               std::to_string(lineno) + ")");
        }
    }
    config.validate();
    return config;
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out << "delta_khz = " << format_double(config.delta_khz) << "\n";
    out << "theta0 = " << format_double(config.theta0) << "\n";
    out << "gamma_per_ms = " << format_double(config.gamma_per_ms) << "\n";
    out << "tau_grid = ";
    for (std::size_t i = 0; i < config.tau_grid.size(); ++i) {
        if (i) out << ",";
        out << format_double(config.tau_grid[i]);
    }
    out << "\n";
    out << "steps = " << config.steps << "\n";
    out << "ensemble_size = " << config.ensemble_size << "\n";
    out << "seed = " << config.seed << "\n";
    out << "threads = " << config.threads << "\n";
    out << "output_path = " << config.output_path << "\n";
    return out.str();
}

std::string config_hash(const RunConfig& config) {
    // Only fields that influence the computed numbers participate; threads and
    // output_path are execution details.
    std::ostringstream canon;
    canon << format_double(config.delta_khz) << '|' << format_double(config.theta0) << '|'
          << format_double(config.gamma_per_ms) << '|';
    for (double tau : config.tau_grid) canon << format_double(tau) << ',';
    canon << '|' << config.steps << '|' << config.ensemble_size << '|' << config.seed;
    const std::string text = canon.str();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

} // namespace stalz
