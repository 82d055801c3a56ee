// Damping and temperature sweeps over the closed-form responses.
#pragma once

#include "gyrosim/gyro_core.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace gyrosim::sweep {

enum class Variable { DampingC, Temperature };
enum class Scale { Linear, Logarithmic };

Variable parse_variable(std::string_view name);
Scale parse_scale(std::string_view name);

struct SweepSpec {
    Variable variable = Variable::DampingC;
    double min = 0.0;
    double max = 0.0;
    int points = 2;
    Scale scale = Scale::Linear;
    core::GyroParams base_params;
    core::DampingModel damping_model;
    core::RateInput rate{1.0};

    void validate() const;
};

struct SweepRow {
    double value = 0.0;       ///< damping [N s/m] or temperature [K]
    double xi = 0.0;
    std::optional<double> q;  ///< absent when xi == 0
    double phase_deg = 0.0;   ///< drive phase lag
    double drive_amp_m = 0.0;
    double detect_amp_m = 0.0;
};

/// Abscissas in ascending order; endpoints are exactly min and max.
std::vector<double> grid(double min, double max, int points, Scale scale);

/// One row of closed-form results for `params` (damping taken as is).
SweepRow evaluate_point(const core::GyroParams &params, core::RateInput rate, double value);

std::vector<SweepRow> run_damping_sweep(const SweepSpec &spec);
std::vector<SweepRow> run_temperature_sweep(const SweepSpec &spec);
/// Dispatches on spec.variable.
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

inline constexpr std::string_view kCsvHeader = "value,xi,q,phase_deg,drive_amp_m,detect_amp_m";

void write_csv(const std::vector<SweepRow> &rows, std::ostream &out);
/// Throws IoError naming `destination` on failure.
void write_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &destination);

// =============================================================================
// Phase-span calibration
// =============================================================================

struct DampingRange {
    double c_min = 0.0;
    double c_max = 0.0;
};

/// Damping c at which the drive phase lag equals `phase_deg`, found by
/// bisection. Requires drive_freq < natural_freq (the lag then rises from 0
/// towards 90 deg as c grows).
double damping_for_phase(const core::GyroParams &params, double phase_deg);

/// The c interval whose phase lag spans [phase_lo_deg, phase_hi_deg].
DampingRange calibrate_phase_span(const core::GyroParams &params, double phase_lo_deg,
                                  double phase_hi_deg);

} // namespace gyrosim::sweep
