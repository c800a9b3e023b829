#pragma once

// Flat key=value experiment configuration with [section] headers.
// Values are atomic units throughout. Unknown sections or keys are hard
// errors so manifests stay trustworthy.

#include <string>
#include <vector>

#include "prop/steppers.hpp"

namespace prop {

enum class SystemKind { TwoLevel, Oscillator, Wpi };

struct ExperimentConfig {
    // [experiment]
    SystemKind system = SystemKind::TwoLevel;
    Method method = Method::Ito;
    std::vector<Method> methods; // compare only
    double T = -1.0;             // <0: system default
    std::vector<double> dt_list; // at least one entry
    double epsilon = 1e-9;
    int n_t = 0;                 // 0: system default (8 levels, 10 grid)
    double record_interval = -1.0; // <0: auto (T/1000, at least one step)

    // [twolevel]
    double tl_mu = 1.0;

    // [oscillator]
    double osc_omega0 = 1.0;
    double osc_e0 = 0.0; // 0: depletion condition
    int osc_grid_points = 128;
    double osc_r_max = 10.0;

    // [wpi]
    std::vector<double> wpi_phi_list = {0.0};
    std::vector<double> wpi_area_list; // empty: {pi/2}
    double wpi_carrier = 6.8;
    double wpi_phase_zero = 0.044;
    double wpi_tau_pulse = 0.3;
    double wpi_delay = 2.0 * M_PI;
    double wpi_reference_dt = 0.005;
    double wpi_reference_epsilon = 1e-11;

    // [cheb]
    Freeze cheb_freeze = Freeze::Left;

    // [output]
    std::string prefix = "run";

    std::string system_name() const;
    double default_T() const;
    int default_n_t() const;
};

const char* method_name(Method m);
Method parse_method(const std::string& s);

// Parses the text of a config file. Throws ConfigError on unknown keys,
// malformed values, or incompatible method/system combinations.
ExperimentConfig parse_config(const std::string& text, bool for_compare = false);
ExperimentConfig load_config(const std::string& path, bool for_compare = false);

} // namespace prop
