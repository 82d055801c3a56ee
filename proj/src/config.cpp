#include "gyrosim/config.hpp"

#include "gyrosim/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace gyrosim::cli {

using nlohmann::json;

namespace {

using Setter = std::function<void(Config &, const json &, const std::string &)>;

double as_number(const json &v, const std::string &key) {
    if (!v.is_number()) {
        throw ValidationError(key, "expected a number");
    }
    return v.get<double>();
}

int as_integer(const json &v, const std::string &key) {
    if (!v.is_number_integer()) {
        throw ValidationError(key, "expected an integer");
    }
    return v.get<int>();
}

template <typename Section>
Setter number(Section Config::*section, double Section::*field) {
    return [=](Config &c, const json &v, const std::string &key) {
        c.*section.*field = as_number(v, key);
    };
}

const std::map<std::string, std::map<std::string, Setter>> &schema() {
    using core::DampingModel;
    using core::GyroParams;
    using ode::IntegratorConfig;
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"gyro",
         {
             {"mass", number(&Config::gyro, &GyroParams::mass)},
             {"stiffness", number(&Config::gyro, &GyroParams::stiffness)},
             {"damping", number(&Config::gyro, &GyroParams::damping)},
             {"comb_count",
              [](Config &c, const json &v, const std::string &key) {
                  c.gyro.comb_count = as_integer(v, key);
              }},
             {"overlap_width", number(&Config::gyro, &GyroParams::overlap_width)},
             {"gap", number(&Config::gyro, &GyroParams::gap)},
             {"rel_permittivity", number(&Config::gyro, &GyroParams::rel_permittivity)},
             {"vacuum_permittivity", number(&Config::gyro, &GyroParams::vacuum_permittivity)},
             {"bias_voltage", number(&Config::gyro, &GyroParams::bias_voltage)},
             {"drive_voltage", number(&Config::gyro, &GyroParams::drive_voltage)},
             {"drive_freq", number(&Config::gyro, &GyroParams::drive_freq)},
         }},
        {"damping_model",
         {
             {"base_damping", number(&Config::damping_model, &DampingModel::base_damping)},
             {"ref_viscosity", number(&Config::damping_model, &DampingModel::ref_viscosity)},
             {"ref_temperature", number(&Config::damping_model, &DampingModel::ref_temperature)},
             {"viscosity_exponent",
              number(&Config::damping_model, &DampingModel::viscosity_exponent)},
             {"geometry_factor", number(&Config::damping_model, &DampingModel::geometry_factor)},
         }},
        {"integrator",
         {
             {"dt", number(&Config::integrator, &IntegratorConfig::dt)},
             {"settle_cycles",
              [](Config &c, const json &v, const std::string &key) {
                  if (v.is_null()) {
                      c.integrator.settle_cycles.reset();
                  } else {
                      c.integrator.settle_cycles = as_integer(v, key);
                  }
              }},
             {"measure_cycles",
              [](Config &c, const json &v, const std::string &key) {
                  c.integrator.measure_cycles = as_integer(v, key);
              }},
             {"initial_displacement",
              number(&Config::integrator, &IntegratorConfig::initial_displacement)},
             {"initial_velocity", number(&Config::integrator, &IntegratorConfig::initial_velocity)},
         }},
    };
    return table;
}

void apply_override(json &doc, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ValidationError(assignment, "override must look like section.field=value");
    }
    const std::string key = assignment.substr(0, eq);
    json value;
    try {
        value = json::parse(assignment.substr(eq + 1));
    } catch (const json::parse_error &) {
        throw ValidationError(key, "override value is not a number");
    }

    const auto dot = key.find('.');
    if (dot == std::string::npos) {
        doc[key] = value;
        return;
    }
    const std::string section = key.substr(0, dot);
    if (!doc.contains(section)) {
        doc[section] = json::object();
    } else if (!doc[section].is_object()) {
        throw ValidationError(section, "expected an object");
    }
    doc[section][key.substr(dot + 1)] = value;
}

} // namespace

Config parse_config(std::string_view json_text, const std::vector<std::string> &overrides) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ValidationError("config", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("config", "top level must be an object");
    }
    for (const std::string &o : overrides) {
        apply_override(doc, o);
    }

    Config config;
    for (const auto &[name, value] : doc.items()) {
        if (name == "rate") {
            config.rate.rate = as_number(value, name);
            continue;
        }
        const auto section = schema().find(name);
        if (section == schema().end()) {
            throw ValidationError(name, "unknown key");
        }
        if (!value.is_object()) {
            throw ValidationError(name, "expected an object");
        }
        for (const auto &[field, field_value] : value.items()) {
            const std::string key = name + "." + field;
            const auto setter = section->second.find(field);
            if (setter == section->second.end()) {
                throw ValidationError(key, "unknown key");
            }
            setter->second(config, field_value, key);
        }
    }

    auto prefixed = [](const char *section, auto &&validate) {
        try {
            validate();
        } catch (const ValidationError &e) {
            throw ValidationError(std::string(section) + "." + e.field(),
                                  std::string(e.what()).substr(e.field().size() + 2));
        }
    };
    prefixed("gyro", [&] { config.gyro.validate(); });
    prefixed("damping_model", [&] { config.damping_model.validate(); });
    prefixed("integrator", [&] { config.integrator.validate(); });
    if (!std::isfinite(config.rate.rate)) {
        throw ValidationError("rate", "must be finite");
    }
    return config;
}

Config load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

} // namespace gyrosim::cli
