// Time-domain oracle for the closed forms in gyro_core.
//
// The drive ODE is integrated with fixed-step classic RK4; the detect axis
// is the cumulative trapezoid of 2 W x(t). Steady-state amplitude and phase
// come from synchronous demodulation over an integer number of cycles.
#pragma once

#include "gyrosim/gyro_core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gyrosim::ode {

inline constexpr int kDefaultMeasureCycles = 20;
inline constexpr int kMinSettleCycles = 50;
inline constexpr int kMaxSettleCycles = 20000;
inline constexpr int kMinStepsPerCycle = 20;

struct IntegratorConfig {
    double dt = 1e-5;                  ///< requested step [s]
    std::optional<int> settle_cycles;  ///< discarded drive periods; default_settle_cycles() if unset
    int measure_cycles = kDefaultMeasureCycles;
    double initial_displacement = 0.0; ///< [m]
    double initial_velocity = 0.0;     ///< [m/s]

    void validate() const;
};

/// Uniformly sampled state history. `drive_freq` and `measure_cycles`
/// describe the final demodulation window (last measure_cycles periods).
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    double drive_freq = 0.0;
    int measure_cycles = kDefaultMeasureCycles;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> z; ///< empty until integrate_detect

    std::size_t size() const noexcept { return x.size(); }
    double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
};

enum class Channel { Drive, Velocity, Detect };

/// Transient length long enough for e^(-xi w_n t) to fall by e^-10,
/// counted in drive periods and clamped to [50, 20000].
int default_settle_cycles(const core::GyroParams &params);

/// Integrates m x'' + c x' + k x = F sin(w_c t) over settle + measure cycles.
///
/// The step is shrunk to the nearest value that divides the drive period
/// (never larger than config.dt), so every cycle holds the same whole number
/// of samples. Throws ValidationError("dt") for fewer than 20 steps per period.
Trajectory integrate_drive(const core::GyroParams &params, const IntegratorConfig &config);

/// Returns a copy of `traj` with z = 2 W int(x) dt, zero mean over the
/// final measure window.
Trajectory integrate_detect(const Trajectory &traj, core::RateInput rate);

/// Projects samples onto sin/cos(freq t) over the last `window_cycles`
/// periods. The result is amplitude * sin(freq t + phase).
core::Phasor demodulate(std::span<const double> samples, double t0, double dt, double freq,
                        int window_cycles);

core::Phasor extract_steady_state(const Trajectory &traj, double drive_freq, int window_cycles,
                                  Channel channel = Channel::Drive);

} // namespace gyrosim::ode
