#include "gyrosim/sweep_runner.hpp"

#include "gyrosim/errors.hpp"
#include "gyrosim/format.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace gyrosim::sweep {

namespace {

double lag_deg(const core::GyroParams &p) {
    const double xi = core::damping_ratio(p.damping, p.mass, p.stiffness);
    const double wn = core::natural_frequency(p.mass, p.stiffness);
    return core::rad_to_deg(core::phase_lag(wn, p.drive_freq, core::quality_factor(xi)));
}

std::vector<SweepRow> run_over(const SweepSpec &spec, auto &&damping_at) {
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.points));
    for (double value : grid(spec.min, spec.max, spec.points, spec.scale)) {
        core::GyroParams p = spec.base_params;
        p.damping = damping_at(value);
        rows.push_back(evaluate_point(p, spec.rate, value));
    }
    return rows;
}

} // namespace

Variable parse_variable(std::string_view name) {
    if (name == "damping" || name == "damping_c") {
        return Variable::DampingC;
    }
    if (name == "temperature") {
        return Variable::Temperature;
    }
    throw ValidationError("variable", "expected damping or temperature, got '" +
                                          std::string(name) + "'");
}

Scale parse_scale(std::string_view name) {
    if (name == "linear") {
        return Scale::Linear;
    }
    if (name == "log" || name == "logarithmic") {
        return Scale::Logarithmic;
    }
    throw ValidationError("scale", "expected linear or log, got '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw ValidationError("min", "sweep requires finite min < max");
    }
    if (points < 2) {
        throw ValidationError("points", "must be >= 2");
    }
    if (scale == Scale::Logarithmic && !(min > 0.0)) {
        throw ValidationError("min", "logarithmic sweeps require min > 0");
    }
    base_params.validate();
    if (variable == Variable::Temperature) {
        if (!(min > 0.0)) {
            throw ValidationError("min", "temperature sweeps require min > 0 K");
        }
        damping_model.validate();
    } else if (!(min >= 0.0)) {
        throw ValidationError("min", "damping must be >= 0");
    }
    if (!std::isfinite(rate.rate)) {
        throw ValidationError("rate", "must be finite");
    }
}

std::vector<double> grid(double min, double max, int points, Scale scale) {
    std::vector<double> values(static_cast<std::size_t>(points));
    const double last = points - 1;
    for (int i = 0; i < points; ++i) {
        const double f = i / last;
        values[static_cast<std::size_t>(i)] =
            scale == Scale::Linear
                ? min + (max - min) * f
                : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
    }
    values.front() = min;
    values.back() = max;
    return values;
}

SweepRow evaluate_point(const core::GyroParams &params, core::RateInput rate, double value) {
    const core::Phasor drive = core::drive_response_damped(params);
    SweepRow row;
    row.value = value;
    row.xi = core::damping_ratio(params.damping, params.mass, params.stiffness);
    if (row.xi > 0.0) {
        row.q = core::quality_factor(row.xi);
        row.phase_deg = lag_deg(params);
    } else {
        row.phase_deg = core::rad_to_deg(core::normalize_phase(-drive.phase));
    }
    row.drive_amp_m = drive.amplitude;
    row.detect_amp_m = core::detect_phasor_from_drive(drive, rate).amplitude;
    return row;
}

std::vector<SweepRow> run_damping_sweep(const SweepSpec &spec) {
    if (spec.variable != Variable::DampingC) {
        throw ValidationError("variable", "run_damping_sweep needs variable = damping");
    }
    spec.validate();
    return run_over(spec, [](double c) { return c; });
}

std::vector<SweepRow> run_temperature_sweep(const SweepSpec &spec) {
    if (spec.variable != Variable::Temperature) {
        throw ValidationError("variable", "run_temperature_sweep needs variable = temperature");
    }
    spec.validate();
    return run_over(spec, [&](double t) { return core::total_damping(spec.damping_model, t); });
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    return spec.variable == Variable::DampingC ? run_damping_sweep(spec)
                                               : run_temperature_sweep(spec);
}

void write_csv(const std::vector<SweepRow> &rows, std::ostream &out) {
    if (rows.empty()) {
        throw DomainError("write_csv: no rows");
    }
    out << kCsvHeader << '\n';
    for (const SweepRow &r : rows) {
        out << format_sci_full(r.value) << ',' << format_sci_full(r.xi) << ','
            << (r.q ? format_sci_full(*r.q) : std::string()) << ','
            << format_sci_full(r.phase_deg) << ',' << format_sci_full(r.drive_amp_m) << ','
            << format_sci_full(r.detect_amp_m) << '\n';
    }
}

void write_csv(const std::vector<SweepRow> &rows, const std::filesystem::path &destination) {
    std::ofstream out(destination);
    if (!out) {
        throw IoError("cannot open '" + destination.string() + "' for writing");
    }
    write_csv(rows, out);
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + destination.string() + "'");
    }
}

double damping_for_phase(const core::GyroParams &params, double phase_deg) {
    params.validate();
    const double wn = core::natural_frequency(params.mass, params.stiffness);
    if (!(params.drive_freq < wn)) {
        throw DomainError("damping_for_phase: drive_freq must be below the natural frequency");
    }
    if (!(phase_deg > 0.0 && phase_deg < 90.0)) {
        throw DomainError("damping_for_phase: target phase must lie in (0, 90) degrees");
    }

    core::GyroParams p = params;
    auto phase_at = [&](double c) {
        p.damping = c;
        return lag_deg(p);
    };

    const double critical = 2.0 * std::sqrt(params.mass * params.stiffness);
    double lo = 0.0;
    double hi = 1e-6 * critical;
    while (phase_at(hi) < phase_deg) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (phase_at(mid) < phase_deg ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DampingRange calibrate_phase_span(const core::GyroParams &params, double phase_lo_deg,
                                  double phase_hi_deg) {
    if (!(phase_lo_deg < phase_hi_deg)) {
        throw DomainError("calibrate_phase_span: need phase_lo < phase_hi");
    }
    return DampingRange{damping_for_phase(params, phase_lo_deg),
                        damping_for_phase(params, phase_hi_deg)};
}

} // namespace gyrosim::sweep
