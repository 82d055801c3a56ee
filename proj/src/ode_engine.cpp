#include "gyrosim/ode_engine.hpp"

#include "gyrosim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gyrosim::ode {

using core::kTwoPi;

namespace {

// Sample count spanning `cycles` periods at step dt.
std::size_t window_samples(double freq, double dt, int cycles) {
    return static_cast<std::size_t>(std::llround(cycles * (kTwoPi / freq) / dt));
}

// Trapezoid mean of the last n+1 samples.
double tail_mean(std::span<const double> s, std::size_t n) {
    const std::size_t first = s.size() - 1 - n;
    double sum = 0.5 * (s[first] + s.back());
    for (std::size_t i = first + 1; i + 1 < s.size(); ++i) {
        sum += s[i];
    }
    return sum / static_cast<double>(n);
}

} // namespace

void IntegratorConfig::validate() const {
    if (!std::isfinite(dt) || !(dt > 0.0)) {
        throw ValidationError("dt", "must be > 0");
    }
    if (settle_cycles && *settle_cycles < 0) {
        throw ValidationError("settle_cycles", "must be >= 0");
    }
    if (measure_cycles < 1) {
        throw ValidationError("measure_cycles", "must be >= 1");
    }
    if (!std::isfinite(initial_displacement)) {
        throw ValidationError("initial_displacement", "must be finite");
    }
    if (!std::isfinite(initial_velocity)) {
        throw ValidationError("initial_velocity", "must be finite");
    }
}

int default_settle_cycles(const core::GyroParams &params) {
    const double xi = core::damping_ratio(params.damping, params.mass, params.stiffness);
    if (xi == 0.0) {
        return kMaxSettleCycles;
    }
    const double wn = core::natural_frequency(params.mass, params.stiffness);
    const double cycles = std::ceil(10.0 * (params.drive_freq / wn) / (kTwoPi * xi));
    return static_cast<int>(
        std::clamp(cycles, double(kMinSettleCycles), double(kMaxSettleCycles)));
}

Trajectory integrate_drive(const core::GyroParams &params, const IntegratorConfig &config) {
    params.validate();
    config.validate();

    const double period = kTwoPi / params.drive_freq;
    if (!(config.dt < period / kMinStepsPerCycle)) {
        throw ValidationError("dt", "must be < drive period / 20 (" +
                                        std::to_string(period / kMinStepsPerCycle) + " s)");
    }
    // Tolerate dt = period / N computed in floating point.
    const auto steps_per_cycle =
        static_cast<std::size_t>(std::ceil(period / config.dt * (1.0 - 1e-12)));
    const double h = period / static_cast<double>(steps_per_cycle);
    const int settle = config.settle_cycles.value_or(default_settle_cycles(params));
    const std::size_t steps =
        steps_per_cycle * static_cast<std::size_t>(settle + config.measure_cycles);

    const double m = params.mass;
    const double c = params.damping;
    const double k = params.stiffness;
    const double force = core::drive_force_amplitude(params);
    const double wc = params.drive_freq;
    auto accel = [&](double t, double x, double v) {
        return (force * std::sin(wc * t) - c * v - k * x) / m;
    };

    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = h;
    traj.drive_freq = wc;
    traj.measure_cycles = config.measure_cycles;
    traj.x.resize(steps + 1);
    traj.v.resize(steps + 1);

    double x = config.initial_displacement;
    double v = config.initial_velocity;
    traj.x[0] = x;
    traj.v[0] = v;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = traj.time(i);
        const double k1x = v;
        const double k1v = accel(t, x, v);
        const double k2x = v + 0.5 * h * k1v;
        const double k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x, k2x);
        const double k3x = v + 0.5 * h * k2v;
        const double k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x, k3x);
        const double k4x = v + h * k3v;
        const double k4v = accel(t + h, x + h * k3x, k4x);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        traj.x[i + 1] = x;
        traj.v[i + 1] = v;
    }
    return traj;
}

Trajectory integrate_detect(const Trajectory &traj, core::RateInput rate) {
    if (traj.size() < 2) {
        throw DomainError("integrate_detect: trajectory needs at least 2 samples");
    }
    Trajectory out = traj;
    out.z.assign(traj.size(), 0.0);
    const double gain = 2.0 * rate.rate;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        out.z[i] = out.z[i - 1] + 0.5 * traj.dt * gain * (traj.x[i - 1] + traj.x[i]);
    }

    std::size_t n = traj.size() - 1;
    if (traj.drive_freq > 0.0) {
        n = std::min(n, window_samples(traj.drive_freq, traj.dt, traj.measure_cycles));
    }
    if (n > 0) {
        const double mean = tail_mean(out.z, n);
        for (double &zi : out.z) {
            zi -= mean;
        }
    }
    return out;
}

core::Phasor demodulate(std::span<const double> samples, double t0, double dt, double freq,
                        int window_cycles) {
    if (!(freq > 0.0) || !(dt > 0.0) || window_cycles < 1) {
        throw DomainError("demodulate: freq, dt and window_cycles must be positive");
    }
    const std::size_t n = window_samples(freq, dt, window_cycles);
    if (n < 2 || n + 1 > samples.size()) {
        throw DomainError("demodulate: window of " + std::to_string(window_cycles) +
                          " cycles exceeds the trajectory");
    }

    const std::size_t first = samples.size() - 1 - n;
    double in_phase = 0.0;
    double quadrature = 0.0;
    for (std::size_t i = first; i < samples.size(); ++i) {
        const double w = (i == first || i + 1 == samples.size()) ? 0.5 : 1.0;
        const double arg = freq * (t0 + static_cast<double>(i) * dt);
        in_phase += w * samples[i] * std::sin(arg);
        quadrature += w * samples[i] * std::cos(arg);
    }
    in_phase /= static_cast<double>(n);
    quadrature /= static_cast<double>(n);

    // A sin(wt + p) -> I = A cos(p) / 2, Q = A sin(p) / 2
    return core::Phasor{2.0 * std::hypot(in_phase, quadrature),
                        core::normalize_phase(std::atan2(quadrature, in_phase)), freq};
}

core::Phasor extract_steady_state(const Trajectory &traj, double drive_freq, int window_cycles,
                                  Channel channel) {
    const std::vector<double> *signal = &traj.x;
    if (channel == Channel::Velocity) {
        signal = &traj.v;
    } else if (channel == Channel::Detect) {
        if (traj.z.empty()) {
            throw DomainError("extract_steady_state: detect channel not integrated");
        }
        signal = &traj.z;
    }
    return demodulate(*signal, traj.t0, traj.dt, drive_freq, window_cycles);
}

} // namespace gyrosim::ode
