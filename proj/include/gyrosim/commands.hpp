// Subcommand bodies for the gyrosim executable. Each writes its primary
// output to `out`; errors propagate as exceptions (see errors.hpp).
#pragma once

#include "gyrosim/config.hpp"
#include "gyrosim/sweep_runner.hpp"

#include <ostream>

namespace gyrosim::cli {

/// `name = value` lines: omega_n, f_n, xi, Q, F.
void cmd_derive(const Config &config, std::ostream &out);

struct RespondOptions {
    double freq_min_hz = 0.0;
    double freq_max_hz = 0.0;
    int points = 2;
};

inline constexpr const char *kRespondHeader = "freq_hz,drive_amp_m,phase_deg,detect_amp_m";

/// Closed-form drive/detect response over a linear frequency grid.
void cmd_respond(const Config &config, const RespondOptions &options, std::ostream &out);

inline constexpr const char *kSimulateHeader = "t_s,x_m,v_mps,z_m";

struct SimulationSummary {
    core::Phasor drive;
    core::Phasor detect;
    std::size_t samples = 0;
};

/// Writes the RK4 trajectory as CSV to `out` and the demodulated
/// steady state as the last line of `summary`.
SimulationSummary cmd_simulate(const Config &config, std::ostream &out, std::ostream &summary);

struct SweepOptions {
    sweep::Variable variable = sweep::Variable::DampingC;
    double min = 0.0;
    double max = 0.0;
    int points = 2;
    sweep::Scale scale = sweep::Scale::Linear;
};

void cmd_sweep(const Config &config, const SweepOptions &options, std::ostream &out);

} // namespace gyrosim::cli
