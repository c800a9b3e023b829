#include "prop/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "prop/errors.hpp"

namespace prop {

const char* method_name(Method m) {
    switch (m) {
    case Method::Ito: return "ito";
    case Method::Cheb: return "cheb";
    case Method::Split: return "split";
    case Method::Rk4: return "rk4";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "ito") return Method::Ito;
    if (s == "cheb") return Method::Cheb;
    if (s == "split") return Method::Split;
    if (s == "rk4") return Method::Rk4;
    throw ConfigError("unknown method '" + s + "'");
}

std::string ExperimentConfig::system_name() const {
    switch (system) {
    case SystemKind::TwoLevel: return "twolevel";
    case SystemKind::Oscillator: return "oscillator";
    case SystemKind::Wpi: return "wpi";
    }
    return "?";
}

double ExperimentConfig::default_T() const {
    switch (system) {
    case SystemKind::TwoLevel: return 9000.0;
    case SystemKind::Oscillator: return 100.0;
    case SystemKind::Wpi: return wpi_delay + wpi_tau_pulse;
    }
    return 0.0;
}

int ExperimentConfig::default_n_t() const {
    return system == SystemKind::TwoLevel ? 8 : 10;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& text, bool for_compare) {
    ExperimentConfig cfg;
    std::string section;
    bool have_system = false, have_method = false, have_dt = false;

    std::stringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "experiment" && section != "twolevel" && section != "oscillator" &&
                section != "wpi" && section != "cheb" && section != "output")
                throw ConfigError("unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' before any [section]");

        if (section == "experiment") {
            if (key == "system") {
                if (val == "twolevel") cfg.system = SystemKind::TwoLevel;
                else if (val == "oscillator") cfg.system = SystemKind::Oscillator;
                else if (val == "wpi") cfg.system = SystemKind::Wpi;
                else throw ConfigError("unknown system '" + val + "'");
                have_system = true;
            } else if (key == "method") {
                cfg.method = parse_method(val);
                have_method = true;
            } else if (key == "methods") {
                std::stringstream ss(val);
                std::string item;
                while (std::getline(ss, item, ','))
                    cfg.methods.push_back(parse_method(trim(item)));
                have_method = !cfg.methods.empty();
            } else if (key == "T") {
                cfg.T = to_double(key, val);
            } else if (key == "dt") {
                cfg.dt_list = {to_double(key, val)};
                have_dt = true;
            } else if (key == "dt_list") {
                cfg.dt_list = to_list(key, val);
                have_dt = true;
            } else if (key == "epsilon") {
                cfg.epsilon = to_double(key, val);
            } else if (key == "n_t") {
                cfg.n_t = to_int(key, val);
            } else if (key == "record_interval") {
                cfg.record_interval = to_double(key, val);
            } else {
                throw ConfigError("unknown key '" + key + "' in [experiment]");
            }
        } else if (section == "twolevel") {
            if (key == "mu") cfg.tl_mu = to_double(key, val);
            else throw ConfigError("unknown key '" + key + "' in [twolevel]");
        } else if (section == "oscillator") {
            if (key == "omega0") cfg.osc_omega0 = to_double(key, val);
            else if (key == "e0") cfg.osc_e0 = to_double(key, val);
            else if (key == "grid_points") cfg.osc_grid_points = to_int(key, val);
            else if (key == "r_max") cfg.osc_r_max = to_double(key, val);
            else throw ConfigError("unknown key '" + key + "' in [oscillator]");
        } else if (section == "wpi") {
            if (key == "phi") cfg.wpi_phi_list = {to_double(key, val)};
            else if (key == "phi_list") cfg.wpi_phi_list = to_list(key, val);
            else if (key == "area") cfg.wpi_area_list = {to_double(key, val)};
            else if (key == "area_list") cfg.wpi_area_list = to_list(key, val);
            else if (key == "carrier") cfg.wpi_carrier = to_double(key, val);
            else if (key == "phase_zero") cfg.wpi_phase_zero = to_double(key, val);
            else if (key == "tau_pulse") cfg.wpi_tau_pulse = to_double(key, val);
            else if (key == "delay") cfg.wpi_delay = to_double(key, val);
            else if (key == "reference_dt") cfg.wpi_reference_dt = to_double(key, val);
            else if (key == "reference_epsilon") cfg.wpi_reference_epsilon = to_double(key, val);
            else throw ConfigError("unknown key '" + key + "' in [wpi]");
        } else if (section == "cheb") {
            if (key == "freeze") {
                if (val == "left") cfg.cheb_freeze = Freeze::Left;
                else if (val == "mid") cfg.cheb_freeze = Freeze::Mid;
                else throw ConfigError("freeze must be left or mid");
            } else {
                throw ConfigError("unknown key '" + key + "' in [cheb]");
            }
        } else if (section == "output") {
            if (key == "prefix") cfg.prefix = val;
            else throw ConfigError("unknown key '" + key + "' in [output]");
        }
    }

    if (!have_system) throw ConfigError("missing system");
    if (!have_method) throw ConfigError("missing method(s)");
    if (!have_dt) throw ConfigError("missing dt or dt_list");
    if (for_compare && cfg.methods.size() < 2)
        throw ConfigError("compare needs a methods list with >= 2 entries");

    if (cfg.T < 0.0) cfg.T = cfg.default_T();
    if (cfg.n_t == 0) cfg.n_t = cfg.default_n_t();
    if (cfg.wpi_area_list.empty()) cfg.wpi_area_list = {M_PI / 2.0};

    auto check_method = [&](Method m) {
        if (m == Method::Split && cfg.system == SystemKind::TwoLevel)
            throw ConfigError("split requires a grid system");
    };
    check_method(cfg.method);
    for (Method m : cfg.methods) check_method(m);
    return cfg;
}

ExperimentConfig load_config(const std::string& path, bool for_compare) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), for_compare);
}

} // namespace prop
