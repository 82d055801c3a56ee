// JSON device configuration for the command-line front end.
//
// {
//   "gyro":          { GyroParams fields },
//   "damping_model": { DampingModel fields },
//   "rate":          input rate [rad/s],
//   "integrator":    { IntegratorConfig fields }
// }
//
// Every section and every field is optional and falls back to the struct
// defaults. Unknown keys are rejected.
#pragma once

#include "gyrosim/gyro_core.hpp"
#include "gyrosim/ode_engine.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gyrosim::cli {

struct Config {
    core::GyroParams gyro;
    core::DampingModel damping_model;
    core::RateInput rate{1.0};
    ode::IntegratorConfig integrator;
};

/// Parses a JSON document, applies `key=value` overrides (keys are
/// `section.field` or `rate`), and validates every section.
/// Throws ValidationError naming the offending key.
Config parse_config(std::string_view json_text, const std::vector<std::string> &overrides = {});

/// Throws IoError when the file cannot be read.
Config load_config(const std::filesystem::path &path,
                   const std::vector<std::string> &overrides = {});

} // namespace gyrosim::cli
