#pragma once

/// @file run_config.hpp
/// Serializable run description. The file format is JSON; every key is
/// required and unknown keys are rejected. `default_config_json()` prints a
/// complete file with the default values.

#include <filesystem>
#include <string>

#include "ppm/moga.hpp"

namespace ppm {

struct RunConfig {
  EvaluationContext context{};
  MogaConfig moga{};
  std::filesystem::path output_dir = "ppm_out";
};

/// Throws Error(Config) with the JSON path of the offending key in field().
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& file);

/// Pretty-printed JSON of `cfg`; parse_run_config inverts it.
std::string to_json(const RunConfig& cfg);
std::string default_config_json();

}  // namespace ppm
