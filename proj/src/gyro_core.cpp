#include "gyrosim/gyro_core.hpp"

#include "gyrosim/errors.hpp"

#include <cmath>

namespace gyrosim::core {

namespace {

void require(bool ok, const char *field, const char *what) {
    if (!ok) {
        throw ValidationError(field, what);
    }
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

// (2n-1) eps_r eps_0 w / d, shared by both force expressions.
double comb_coefficient(const GyroParams &p) {
    return (2.0 * p.comb_count - 1.0) * p.rel_permittivity * p.vacuum_permittivity *
           p.overlap_width / p.gap;
}

// w_n^2 - w_c^2 factored so that it is exactly zero when w_c == w_n.
double detuning(double natural_freq, double drive_freq) {
    return (natural_freq - drive_freq) * (natural_freq + drive_freq);
}

} // namespace

void GyroParams::validate() const {
    require(finite_positive(mass), "mass", "must be > 0");
    require(finite_positive(stiffness), "stiffness", "must be > 0");
    require(finite_non_negative(damping), "damping", "must be >= 0");
    require(comb_count >= 1, "comb_count", "must be >= 1");
    require(finite_positive(overlap_width), "overlap_width", "must be > 0");
    require(finite_positive(gap), "gap", "must be > 0");
    require(std::isfinite(rel_permittivity) && rel_permittivity >= 1.0, "rel_permittivity",
            "must be >= 1");
    require(finite_positive(vacuum_permittivity), "vacuum_permittivity", "must be > 0");
    require(finite_non_negative(bias_voltage), "bias_voltage", "must be >= 0");
    require(finite_non_negative(drive_voltage), "drive_voltage", "must be >= 0");
    require(finite_positive(drive_freq), "drive_freq", "must be > 0");
}

void DampingModel::validate() const {
    require(finite_non_negative(base_damping), "base_damping", "must be >= 0");
    require(finite_non_negative(ref_viscosity), "ref_viscosity", "must be >= 0");
    require(finite_positive(ref_temperature), "ref_temperature", "must be > 0");
    require(std::isfinite(viscosity_exponent), "viscosity_exponent", "must be finite");
    require(finite_positive(geometry_factor), "geometry_factor", "must be > 0");
}

double normalize_phase(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative angle can round back up to exactly 2pi.
    return r >= kTwoPi ? 0.0 : r;
}

double rad_to_deg(double radians) { return radians * (180.0 / std::numbers::pi); }

double natural_frequency(double mass, double stiffness) {
    if (!(mass > 0.0) || !(stiffness > 0.0)) {
        throw DomainError("natural_frequency: mass and stiffness must be > 0");
    }
    return std::sqrt(stiffness / mass);
}

double damping_ratio(double damping, double mass, double stiffness) {
    if (!(mass > 0.0) || !(stiffness > 0.0)) {
        throw DomainError("damping_ratio: mass and stiffness must be > 0");
    }
    if (!(damping >= 0.0)) {
        throw DomainError("damping_ratio: damping must be >= 0");
    }
    return damping / (2.0 * std::sqrt(mass * stiffness));
}

double quality_factor(double damping_ratio) {
    if (damping_ratio == 0.0) {
        throw UndampedError();
    }
    if (!(damping_ratio > 0.0)) {
        throw DomainError("quality_factor: damping ratio must be >= 0");
    }
    return 1.0 / (2.0 * damping_ratio);
}

DerivedParams derive(const GyroParams &params) {
    params.validate();
    DerivedParams d;
    d.natural_freq = natural_frequency(params.mass, params.stiffness);
    d.damping_ratio = damping_ratio(params.damping, params.mass, params.stiffness);
    if (d.damping_ratio > 0.0) {
        d.quality_factor = quality_factor(d.damping_ratio);
    }
    d.force_amplitude = drive_force_amplitude(params);
    return d;
}

double drive_force_amplitude(const GyroParams &params) {
    params.validate();
    return 2.0 * comb_coefficient(params) * params.bias_voltage * params.drive_voltage;
}

double instantaneous_comb_force(const GyroParams &params, double time, Polarity polarity) {
    params.validate();
    const double swing = params.drive_voltage * std::sin(params.drive_freq * time);
    const double v = polarity == Polarity::Plus ? params.bias_voltage + swing
                                                : params.bias_voltage - swing;
    return comb_coefficient(params) * v * v / 2.0;
}

double net_drive_force(const GyroParams &params, double time) {
    return drive_force_amplitude(params) * std::sin(params.drive_freq * time);
}

Phasor drive_response_undamped(const GyroParams &params) {
    params.validate();
    const double wn = natural_frequency(params.mass, params.stiffness);
    const double wc = params.drive_freq;
    const double denom = params.mass * -detuning(wn, wc); // m (w_c^2 - w_n^2)
    if (denom == 0.0) {
        throw ResonanceError();
    }
    const double x = drive_force_amplitude(params) / denom;
    // Below resonance the response is in phase; above it the sign flips.
    return Phasor{std::abs(x), wc < wn ? 0.0 : std::numbers::pi, wc};
}

Phasor drive_response_damped(const GyroParams &params) {
    params.validate();
    const double xi = damping_ratio(params.damping, params.mass, params.stiffness);
    if (xi == 0.0) {
        return drive_response_undamped(params);
    }
    const double wn = natural_frequency(params.mass, params.stiffness);
    const double wc = params.drive_freq;
    const double denom = std::hypot(detuning(wn, wc), 2.0 * xi * wn * wc);
    const double amplitude = drive_force_amplitude(params) / (params.mass * denom);
    const double lag = phase_lag(wn, wc, quality_factor(xi));
    return Phasor{amplitude, normalize_phase(-lag), wc};
}

double phase_lag(double natural_freq, double drive_freq, double quality_factor) {
    if (!(natural_freq > 0.0) || !(drive_freq > 0.0) || !(quality_factor > 0.0)) {
        throw DomainError("phase_lag: all inputs must be > 0");
    }
    return std::atan2(natural_freq * drive_freq / quality_factor,
                      detuning(natural_freq, drive_freq));
}

double coriolis_acceleration(RateInput rate, double velocity) { return 2.0 * rate.rate * velocity; }

Phasor detect_phasor_from_drive(const Phasor &drive, RateInput rate) {
    if (!(drive.freq > 0.0)) {
        throw DomainError("detect_phasor_from_drive: drive frequency must be > 0");
    }
    const double amplitude = 2.0 * std::abs(rate.rate) * drive.amplitude / drive.freq;
    // int sin(wt + p) dt = sin(wt + p - pi/2) / w; a negative rate adds pi.
    double phase = drive.phase - std::numbers::pi / 2.0;
    if (rate.rate < 0.0) {
        phase += std::numbers::pi;
    }
    return Phasor{amplitude, normalize_phase(phase), drive.freq};
}

Phasor detect_response_undamped(const GyroParams &params, RateInput rate) {
    return detect_phasor_from_drive(drive_response_undamped(params), rate);
}

Phasor detect_response_damped(const GyroParams &params, RateInput rate) {
    return detect_phasor_from_drive(drive_response_damped(params), rate);
}

double viscosity_at_temperature(const DampingModel &model, double temperature) {
    if (!(temperature > 0.0)) {
        throw DomainError("viscosity_at_temperature: temperature must be > 0 K");
    }
    model.validate();
    return model.ref_viscosity *
           std::pow(temperature / model.ref_temperature, model.viscosity_exponent);
}

double total_damping(const DampingModel &model, double temperature) {
    return model.base_damping +
           model.geometry_factor * viscosity_at_temperature(model, temperature);
}

double damping_ratio_at_temperature(const DampingModel &model, double mass, double stiffness,
                                    double temperature) {
    return damping_ratio(total_damping(model, temperature), mass, stiffness);
}

} // namespace gyrosim::core
