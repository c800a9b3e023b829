#pragma once

#include <cmath>
#include <vector>

namespace prop {

// sin^2-envelope pulse. The carrier phase is referenced to the pulse start,
// field(t) = e0 * sin^2(pi (t-t0)/t_env) * cos(w0 (t-t0) + phase)
// inside [t0, t0 + t_env] and zero outside. A delayed copy with an extra
// phase is then an exact interferometric replica of the original pulse.
struct Pulse {
    double e0 = 0.0;      // field amplitude (a.u.)
    double t_start = 0.0; // envelope start (a.u.)
    double t_env = 0.0;   // envelope duration (a.u.)
    double omega0 = 0.0;  // carrier frequency (a.u.)
    double phase = 0.0;   // carrier phase (rad)

    double envelope(double t) const {
        if (t < t_start || t > t_start + t_env) return 0.0;
        const double s = std::sin(M_PI * (t - t_start) / t_env);
        return s * s;
    }

    double field(double t) const {
        if (t < t_start || t > t_start + t_env) return 0.0;
        const double arg = omega0 * (t - t_start) + phase;
        return e0 * envelope(t) * std::cos(arg);
    }
};

inline double total_field(const std::vector<Pulse>& pulses, double t) {
    double f = 0.0;
    for (const auto& p : pulses) f += p.field(t);
    return f;
}

// max |field| over the pulse list (envelope peaks bound the carrier)
inline double max_field(const std::vector<Pulse>& pulses) {
    double m = 0.0;
    for (const auto& p : pulses) m += std::abs(p.e0);
    return m;
}

} // namespace prop
