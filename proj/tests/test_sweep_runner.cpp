#include "gyrosim/errors.hpp"
#include "gyrosim/sweep_runner.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace gyrosim;
using namespace gyrosim::sweep;
using doctest::Approx;

namespace {

SweepSpec damping_spec(double c_min, double c_max, int points) {
    SweepSpec spec;
    spec.variable = Variable::DampingC;
    spec.min = c_min;
    spec.max = c_max;
    spec.points = points;
    spec.base_params.drive_freq = core::kTwoPi * 400.0;
    spec.rate = core::RateInput{0.5};
    return spec;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse(const std::string &s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(res.ec == std::errc{});
    REQUIRE(res.ptr == s.data() + s.size());
    return v;
}

std::vector<SweepRow> read_csv(std::istream &in) {
    std::string line;
    std::getline(in, line);
    REQUIRE(line == kCsvHeader);
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        const auto f = split(line);
        REQUIRE(f.size() == 6);
        SweepRow r;
        r.value = parse(f[0]);
        r.xi = parse(f[1]);
        if (!f[2].empty()) {
            r.q = parse(f[2]);
        }
        r.phase_deg = parse(f[3]);
        r.drive_amp_m = parse(f[4]);
        r.detect_amp_m = parse(f[5]);
        rows.push_back(r);
    }
    return rows;
}

} // namespace

TEST_CASE("grid endpoints and ordering") {
    const auto lin = grid(1.0, 2.0, 5, Scale::Linear);
    CHECK(lin == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
    const auto lg = grid(1e-8, 1e-4, 5, Scale::Logarithmic);
    CHECK(lg.front() == 1e-8);
    CHECK(lg.back() == 1e-4);
    CHECK(lg[2] == Approx(1e-6).epsilon(1e-12));
    for (std::size_t i = 1; i < lg.size(); ++i) {
        CHECK(lg[i] > lg[i - 1]);
    }
}

TEST_CASE("SweepSpec validation") {
    auto spec = damping_spec(1e-7, 1e-7, 2);
    CHECK_THROWS_AS(run_damping_sweep(spec), ValidationError);
    spec = damping_spec(1e-7, 2e-7, 1);
    CHECK_THROWS_AS(run_damping_sweep(spec), ValidationError);
    spec = damping_spec(0.0, 2e-7, 3);
    spec.scale = Scale::Logarithmic;
    CHECK_THROWS_AS(run_damping_sweep(spec), ValidationError);
    spec = damping_spec(-1e-7, 2e-7, 3);
    CHECK_THROWS_AS(run_damping_sweep(spec), ValidationError);

    SweepSpec temp = damping_spec(0.0, 400.0, 3);
    temp.variable = Variable::Temperature;
    CHECK_THROWS_AS(run_temperature_sweep(temp), ValidationError);
    CHECK_THROWS_AS(run_damping_sweep(temp), ValidationError);
    CHECK_THROWS_AS(run_temperature_sweep(damping_spec(1e-7, 2e-7, 3)), ValidationError);

    CHECK(parse_variable("damping") == Variable::DampingC);
    CHECK(parse_variable("damping_c") == Variable::DampingC);
    CHECK(parse_variable("temperature") == Variable::Temperature);
    CHECK_THROWS_AS(parse_variable("pressure"), ValidationError);
    CHECK(parse_scale("log") == Scale::Logarithmic);
    CHECK_THROWS_AS(parse_scale("cubic"), ValidationError);
}

TEST_CASE("minimal damping sweep") {
    const double c_max = 2e-7;
    const auto rows = run_damping_sweep(damping_spec(c_max - 1e-12, c_max, 2));
    REQUIRE(rows.size() == 2);
    for (const auto &r : rows) {
        CHECK(std::isfinite(r.drive_amp_m));
        CHECK(std::isfinite(r.phase_deg));
    }
    CHECK(rows[1].drive_amp_m < rows[0].drive_amp_m);
    CHECK(rows[1].value > rows[0].value);
}

TEST_CASE("damping sweep at resonance has 90 degree phase") {
    SweepSpec spec = damping_spec(1e-8, 1e-5, 50);
    spec.base_params.drive_freq = core::kTwoPi * 500.0;
    spec.scale = Scale::Logarithmic;
    for (const auto &r : run_damping_sweep(spec)) {
        CHECK(r.phase_deg == 90.0);
    }
}

TEST_CASE("damping sweep columns") {
    for (double f : {250.0, 400.0, 600.0, 1000.0}) {
        SweepSpec spec = damping_spec(1e-8, 5e-6, 100);
        spec.base_params.drive_freq = core::kTwoPi * f;
        const auto rows = run_damping_sweep(spec);
        const double ratio = 2.0 * 0.5 / spec.base_params.drive_freq;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto &r = rows[i];
            CHECK(r.phase_deg > 0.0);
            CHECK(r.phase_deg < 180.0);
            REQUIRE(r.q.has_value());
            CHECK(*r.q * 2.0 * r.xi == Approx(1.0).epsilon(1e-12));
            CHECK(oracle::rel_gap(r.detect_amp_m / r.drive_amp_m, ratio) < 1e-12);
            if (i > 0) {
                CHECK(r.drive_amp_m < rows[i - 1].drive_amp_m);
                CHECK(r.detect_amp_m < rows[i - 1].detect_amp_m);
                if (f < 500.0) {
                    CHECK(r.phase_deg > rows[i - 1].phase_deg);
                } else {
                    CHECK(r.phase_deg < rows[i - 1].phase_deg);
                }
            }
        }
    }
}

TEST_CASE("temperature sweep") {
    SweepSpec spec = damping_spec(250.0, 400.0, 31);
    spec.variable = Variable::Temperature;
    spec.base_params.mass = 1e-8;
    spec.base_params.stiffness = 9.8696044e-2;
    spec.damping_model = core::DampingModel{1e-7, 1.8e-5, 300.0, 0.7, 1e-2};

    const auto rows = run_temperature_sweep(spec);
    REQUIRE(rows.size() == 31);
    CHECK(rows[16].value == Approx(330.0).epsilon(1e-14));
    CHECK(rows[16].xi == Approx(4.653988921303031e-3).epsilon(1e-12));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].xi > rows[i - 1].xi);
    }

    // point-by-point equal to the damping route
    for (const auto &r : rows) {
        core::GyroParams p = spec.base_params;
        p.damping = core::total_damping(spec.damping_model, r.value);
        const SweepRow d = evaluate_point(p, spec.rate, r.value);
        CHECK(r.xi == d.xi);
        CHECK(r.phase_deg == d.phase_deg);
        CHECK(r.drive_amp_m == d.drive_amp_m);
        CHECK(r.detect_amp_m == d.detect_amp_m);
    }

    spec.damping_model.ref_viscosity = 0.0;
    const auto flat = run_temperature_sweep(spec);
    core::GyroParams fixed = spec.base_params;
    fixed.damping = spec.damping_model.base_damping;
    const SweepRow ref = evaluate_point(fixed, spec.rate, 0.0);
    for (const auto &r : flat) {
        CHECK(r.xi == ref.xi);
        CHECK(r.drive_amp_m == ref.drive_amp_m);
    }
}

TEST_CASE("zero damping row has no Q") {
    const auto rows = run_damping_sweep(damping_spec(0.0, 1e-7, 3));
    CHECK_FALSE(rows[0].q.has_value());
    CHECK(rows[0].phase_deg == 0.0);
    CHECK(rows[1].q.has_value());
}

TEST_CASE("write_csv") {
    std::ostringstream one;
    write_csv(run_damping_sweep(damping_spec(1e-7, 2e-7, 2)), one);
    std::istringstream lines(one.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        CHECK(split(line).size() == 6);
        ++count;
    }
    CHECK(count == 3);

    std::vector<SweepRow> single(1);
    single[0].value = 1e-7;
    single[0].xi = 0.0;
    std::ostringstream s;
    write_csv(single, s);
    const std::string text = s.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find(",,") != std::string::npos);

    CHECK_THROWS_AS(write_csv(std::vector<SweepRow>{}, s), DomainError);
    CHECK_THROWS_AS(write_csv(single, std::filesystem::path("/nonexistent-dir/x.csv")), IoError);
}

TEST_CASE("csv round-trips bit-identically") {
    std::mt19937_64 rng(17);
    std::vector<SweepRow> rows;
    for (int i = 0; i < 200; ++i) {
        SweepRow r;
        r.value = oracle::log_uniform(rng, 1e-12, 1e3);
        r.xi = oracle::log_uniform(rng, 1e-9, 10.0);
        if (i % 7) {
            r.q = 1.0 / (2.0 * r.xi);
        }
        r.phase_deg = oracle::log_uniform(rng, 1e-6, 179.0);
        r.drive_amp_m = oracle::log_uniform(rng, 1e-15, 1e-3);
        r.detect_amp_m = oracle::log_uniform(rng, 1e-18, 1e-6);
        rows.push_back(r);
    }

    const auto path = std::filesystem::temp_directory_path() / "gyrosim_roundtrip.csv";
    write_csv(rows, path);
    std::ifstream in(path);
    const auto back = read_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].value == rows[i].value);
        CHECK(back[i].xi == rows[i].xi);
        CHECK(back[i].q == rows[i].q);
        CHECK(back[i].phase_deg == rows[i].phase_deg);
        CHECK(back[i].drive_amp_m == rows[i].drive_amp_m);
        CHECK(back[i].detect_amp_m == rows[i].detect_amp_m);
    }
    std::filesystem::remove(path);
}

TEST_CASE("phase span calibration") {
    core::GyroParams p;
    p.drive_freq = core::kTwoPi * 400.0;
    const DampingRange range = calibrate_phase_span(p, 0.17, 0.47);
    CHECK(range.c_min < range.c_max);

    // closed-form inversion tan(Phi) = c w_c / (m (w_n^2 - w_c^2))
    const double wn2 = p.stiffness / p.mass;
    auto c_for = [&](double deg) {
        return p.mass * (wn2 - p.drive_freq * p.drive_freq) * std::tan(deg * std::numbers::pi / 180.0) /
               p.drive_freq;
    };
    CHECK(range.c_min == Approx(c_for(0.17)).epsilon(1e-9));
    CHECK(range.c_max == Approx(c_for(0.47)).epsilon(1e-9));

    core::GyroParams at_res;
    CHECK_THROWS_AS(damping_for_phase(at_res, 0.3), DomainError);
    CHECK_THROWS_AS(damping_for_phase(p, 95.0), DomainError);
    CHECK_THROWS_AS(calibrate_phase_span(p, 0.47, 0.17), DomainError);
}
