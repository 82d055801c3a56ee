// Finds the damping interval over which the drive phase lag of an
// off-resonance device spans a target range, and records it as JSON.
//
//   calibrate_phase_span --config configs/phase_span_offresonance.json \
//       --phase-lo 0.17 --phase-hi 0.47 --out data/phase_span_calibration.json

#include "gyrosim/config.hpp"
#include "gyrosim/errors.hpp"
#include "gyrosim/sweep_runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

int main(int argc, char **argv) {
    using namespace gyrosim;

    CLI::App app{"Calibrate the damping range for a phase-lag span"};
    std::string config_path;
    std::string out_path;
    double phase_lo = 0.17;
    double phase_hi = 0.47;
    app.add_option("--config", config_path)->required();
    app.add_option("--phase-lo", phase_lo, "Lower phase lag [deg]");
    app.add_option("--phase-hi", phase_hi, "Upper phase lag [deg]");
    app.add_option("--out", out_path, "Output JSON (default: standard output)");
    CLI11_PARSE(app, argc, argv);

    try {
        const cli::Config config = cli::load_config(config_path);
        const sweep::DampingRange range =
            sweep::calibrate_phase_span(config.gyro, phase_lo, phase_hi);
        const double critical = 2.0 * std::sqrt(config.gyro.mass * config.gyro.stiffness);

        nlohmann::ordered_json doc;
        doc["config"] = config_path;
        doc["drive_freq"] = config.gyro.drive_freq;
        doc["natural_freq"] = core::natural_frequency(config.gyro.mass, config.gyro.stiffness);
        doc["phase_lo_deg"] = phase_lo;
        doc["phase_hi_deg"] = phase_hi;
        doc["c_min"] = range.c_min;
        doc["c_max"] = range.c_max;
        doc["xi_min"] = range.c_min / critical;
        doc["xi_max"] = range.c_max / critical;

        const std::string text = doc.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!(out << text)) {
                std::cerr << "calibrate_phase_span: cannot write '" << out_path << "'\n";
                return 1;
            }
        }
    } catch (const ValidationError &e) {
        std::cerr << "calibrate_phase_span: invalid " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "calibrate_phase_span: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
