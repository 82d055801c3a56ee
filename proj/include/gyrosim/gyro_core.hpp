// Lumped-parameter physics of the comb-drive linear vibratory gyroscope.
//
// Drive axis x: m x'' + c x' + k x = F sin(w_c t), driven push-pull by two
// comb banks. Detect axis z: kinematic Coriolis coupling z = 2 W int(x) dt.
// All functions are pure; radians internally, SI units throughout.
#pragma once

#include <numbers>
#include <optional>

namespace gyrosim::core {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kVacuumPermittivity = 8.85e-12; // F/m

// =============================================================================
// Domain types
// =============================================================================

/// Physical constants of the device.
struct GyroParams {
    double mass = 1e-8;                 ///< proof mass [kg]
    double stiffness = 1e-8 * (kTwoPi * 500.0) * (kTwoPi * 500.0); ///< k [N/m], f_n = 500 Hz
    double damping = 1e-6;              ///< total damping c [N s/m]
    int comb_count = 20;                ///< moving combs n
    double overlap_width = 20e-6;       ///< comb overlap w [m]
    double gap = 3e-6;                  ///< comb gap d [m]
    double rel_permittivity = 1.0;      ///< eps_r
    double vacuum_permittivity = kVacuumPermittivity; ///< eps_0 [F/m]
    double bias_voltage = 10.0;         ///< DC excursion V_0 [V]
    double drive_voltage = 5.0;         ///< AC amplitude V_a [V]
    double drive_freq = kTwoPi * 500.0; ///< w_c [rad/s]

    /// Throws ValidationError naming the first field that breaks an invariant.
    void validate() const;
};

struct DerivedParams {
    double natural_freq = 0.0;           ///< w_n [rad/s]
    double damping_ratio = 0.0;          ///< xi
    std::optional<double> quality_factor; ///< Q, absent when xi == 0
    double force_amplitude = 0.0;        ///< F [N]
};

/// Temperature-dependent gas damping: c(T) = c_0 + g * mu_0 (T/T_0)^n.
///
/// `geometry_factor` g [m] turns a viscosity into a damping coefficient;
/// g = 1 gives the bare sum c_0 + mu(T).
struct DampingModel {
    double base_damping = 1e-7;      ///< c_0 [N s/m]
    double ref_viscosity = 1.8e-5;   ///< mu_0 [Pa s] (air, ~300 K)
    double ref_temperature = 300.0;  ///< T_0 [K]
    double viscosity_exponent = 0.7; ///< n_visc
    double geometry_factor = 1e-2;   ///< g [m]

    void validate() const;
};

/// Steady-state sinusoid amplitude * sin(freq * t + phase).
struct Phasor {
    double amplitude = 0.0; ///< >= 0 [m]
    double phase = 0.0;     ///< [rad], in [0, 2pi)
    double freq = 1.0;      ///< [rad/s]
};

/// Input angular rate about the y axis [rad/s].
struct RateInput {
    double rate = 0.0;
};

enum class Polarity { Plus, Minus };

// =============================================================================
// Helpers
// =============================================================================

/// Maps any finite angle into [0, 2pi).
double normalize_phase(double radians);

double rad_to_deg(double radians);

// =============================================================================
// Modal parameters
// =============================================================================

double natural_frequency(double mass, double stiffness);

double damping_ratio(double damping, double mass, double stiffness);

/// Q = 1/(2 xi). Throws UndampedError for xi == 0.
double quality_factor(double damping_ratio);

DerivedParams derive(const GyroParams &params);

// =============================================================================
// Electrostatic drive
// =============================================================================

/// Net push-pull force amplitude F = 2(2n-1) eps_r eps_0 w V_0 V_a / d.
double drive_force_amplitude(const GyroParams &params);

/// One comb bank at V = V_0 +/- V_a sin(w_c t):
/// F_l = (2n-1) eps_r eps_0 w V^2 / (2d).
double instantaneous_comb_force(const GyroParams &params, double time, Polarity polarity);

/// Difference of the two banks. The V_0^2 and V_a^2 sin^2 terms cancel, so
/// this is evaluated in its reduced form F sin(w_c t).
double net_drive_force(const GyroParams &params, double time);

// =============================================================================
// Frequency response
// =============================================================================

/// Vacuum (c ignored) drive response. Throws ResonanceError at w_c == w_n.
Phasor drive_response_undamped(const GyroParams &params);

/// Damped drive response; phase is -Phi with Phi from phase_lag.
Phasor drive_response_damped(const GyroParams &params);

/// Phi = atan2(w_n w_c / Q, w_n^2 - w_c^2), in (0, pi); pi/2 at resonance.
double phase_lag(double natural_freq, double drive_freq, double quality_factor);

// =============================================================================
// Coriolis coupling
// =============================================================================

double coriolis_acceleration(RateInput rate, double velocity);

/// z = 2 W int(x) dt with a zero-mean antiderivative.
Phasor detect_phasor_from_drive(const Phasor &drive, RateInput rate);

Phasor detect_response_undamped(const GyroParams &params, RateInput rate);

Phasor detect_response_damped(const GyroParams &params, RateInput rate);

// =============================================================================
// Gas damping vs temperature
// =============================================================================

double viscosity_at_temperature(const DampingModel &model, double temperature);

double total_damping(const DampingModel &model, double temperature);

double damping_ratio_at_temperature(const DampingModel &model, double mass, double stiffness,
                                    double temperature);

} // namespace gyrosim::core
