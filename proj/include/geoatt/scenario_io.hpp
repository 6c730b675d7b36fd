#ifndef GEOATT_SCENARIO_IO_HPP
#define GEOATT_SCENARIO_IO_HPP

#include <filesystem>
#include <string>

#include "geoatt/simulator.hpp"

namespace geoatt {

/// Reads a YAML scenario file. Angles in the file are degrees; every key is
/// validated and unknown keys are rejected. Errors are ConfigError messages
/// naming the key and line.
ScenarioConfig load_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const std::string& text);

/// Emits a scenario document that parses back to an identical config.
std::string format_scenario(const ScenarioConfig& cfg);
void write_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

} // namespace geoatt

#endif // GEOATT_SCENARIO_IO_HPP
