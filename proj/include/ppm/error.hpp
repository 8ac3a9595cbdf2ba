#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppm {

enum class ErrorCode {
  OutOfBounds,
  DegenerateSection,
  Unreachable,
  ModeViolation,
  NoConvergence,
  DegenerateBeam,
  SingularKinetostatics,
  SingularStiffness,
  HomeUnreachable,
  Config,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. `field` names the offending design variable for
/// OutOfBounds and the config path for Config; `leg` is the 0-based leg index
/// for per-leg failures, or -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string field = {}, int leg = -1)
      : std::runtime_error(std::move(message)), code_(code), field_(std::move(field)), leg_(leg) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }
  int leg() const noexcept { return leg_; }

 private:
  ErrorCode code_;
  std::string field_;
  int leg_;
};

}  // namespace ppm
