#include "gyrosim/commands.hpp"

#include "gyrosim/errors.hpp"
#include "gyrosim/format.hpp"

#include <cmath>

namespace gyrosim::cli {

namespace {

double lag_deg(const core::Phasor &drive) {
    return core::rad_to_deg(core::normalize_phase(-drive.phase));
}

} // namespace

void cmd_derive(const Config &config, std::ostream &out) {
    const core::DerivedParams d = core::derive(config.gyro);
    out << "omega_n = " << format_sci(d.natural_freq) << '\n';
    out << "f_n = " << format_sci(d.natural_freq / core::kTwoPi) << '\n';
    out << "xi = " << format_sci(d.damping_ratio) << '\n';
    out << "Q = " << (d.quality_factor ? format_sci(*d.quality_factor) : "undamped") << '\n';
    out << "F = " << format_sci(d.force_amplitude) << '\n';
}

void cmd_respond(const Config &config, const RespondOptions &options, std::ostream &out) {
    if (!std::isfinite(options.freq_min_hz) || !(options.freq_min_hz > 0.0)) {
        throw ValidationError("freq_min_hz", "must be > 0");
    }
    if (!std::isfinite(options.freq_max_hz) || !(options.freq_min_hz < options.freq_max_hz)) {
        throw ValidationError("freq_max_hz", "must be > freq_min_hz");
    }
    if (options.points < 2) {
        throw ValidationError("points", "must be >= 2");
    }

    const core::DerivedParams derived = core::derive(config.gyro);
    out << kRespondHeader << '\n';
    for (double f : sweep::grid(options.freq_min_hz, options.freq_max_hz, options.points,
                                sweep::Scale::Linear)) {
        core::GyroParams p = config.gyro;
        p.drive_freq = core::kTwoPi * f;
        out << format_sci_full(f) << ',';
        try {
            const core::Phasor drive = core::drive_response_damped(p);
            const double phase =
                derived.quality_factor
                    ? core::rad_to_deg(core::phase_lag(derived.natural_freq, p.drive_freq,
                                                       *derived.quality_factor))
                    : lag_deg(drive);
            out << format_sci_full(drive.amplitude) << ',' << format_sci_full(phase) << ','
                << format_sci_full(core::detect_phasor_from_drive(drive, config.rate).amplitude)
                << '\n';
        } catch (const ResonanceError &) {
            out << "error,error,error\n";
        }
    }
}

SimulationSummary cmd_simulate(const Config &config, std::ostream &out, std::ostream &summary) {
    const ode::Trajectory traj =
        ode::integrate_detect(ode::integrate_drive(config.gyro, config.integrator), config.rate);

    out << kSimulateHeader << '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_sci_full(traj.time(i)) << ',' << format_sci_full(traj.x[i]) << ','
            << format_sci_full(traj.v[i]) << ',' << format_sci_full(traj.z[i]) << '\n';
    }

    SimulationSummary result;
    result.samples = traj.size();
    result.drive = ode::extract_steady_state(traj, traj.drive_freq, traj.measure_cycles);
    result.detect =
        ode::extract_steady_state(traj, traj.drive_freq, traj.measure_cycles, ode::Channel::Detect);
    summary << "steady_state drive_amp_m = " << format_sci(result.drive.amplitude)
            << ", phase_deg = " << format_sci(lag_deg(result.drive))
            << ", detect_amp_m = " << format_sci(result.detect.amplitude) << '\n';
    return result;
}

void cmd_sweep(const Config &config, const SweepOptions &options, std::ostream &out) {
    sweep::SweepSpec spec;
    spec.variable = options.variable;
    spec.min = options.min;
    spec.max = options.max;
    spec.points = options.points;
    spec.scale = options.scale;
    spec.base_params = config.gyro;
    spec.damping_model = config.damping_model;
    spec.rate = config.rate;
    sweep::write_csv(sweep::run_sweep(spec), out);
}

} // namespace gyrosim::cli
