#include "ppm/core_model.hpp"

#include <string>

namespace ppm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::DegenerateSection: return "DegenerateSection";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::ModeViolation: return "ModeViolation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateBeam: return "DegenerateBeam";
    case ErrorCode::SingularKinetostatics: return "SingularKinetostatics";
    case ErrorCode::SingularStiffness: return "SingularStiffness";
    case ErrorCode::HomeUnreachable: return "HomeUnreachable";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

std::string_view to_string(Architecture arch) noexcept {
  switch (arch) {
    case Architecture::PRR: return "3-PRR";
    case Architecture::RPR: return "3-RPR";
    case Architecture::RRR: return "3-RRR";
  }
  return "?";
}

std::optional<Architecture> architecture_from_code(int c) noexcept {
  if (c < 1 || c > 3) return std::nullopt;
  return static_cast<Architecture>(c);
}

double get(const DesignVector& d, Variable v) noexcept {
  switch (v) {
    case Variable::R: return d.base_radius;
    case Variable::r: return d.platform_radius;
    case Variable::L_b: return d.link_length;
    case Variable::r_j: return d.leg_section_radius;
    case Variable::r_p: return d.platform_section_radius;
  }
  return 0.0;
}

void set(DesignVector& d, Variable v, double value) noexcept {
  switch (v) {
    case Variable::R: d.base_radius = value; break;
    case Variable::r: d.platform_radius = value; break;
    case Variable::L_b: d.link_length = value; break;
    case Variable::r_j: d.leg_section_radius = value; break;
    case Variable::r_p: d.platform_section_radius = value; break;
  }
}

void Bounds::check() const {
  if (architecture_lower < 1 || architecture_upper > 3 || architecture_lower > architecture_upper)
    throw Error(ErrorCode::Config, "architecture bounds must satisfy 1 <= lower <= upper <= 3", "bounds.d");
  for (int i = 0; i < kContinuousVariables; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] < 0.0 || lower[i] > upper[i]) {
      const std::string name(kVariableNames[i]);
      throw Error(ErrorCode::Config, "invalid bounds for " + name, "bounds." + name);
    }
  }
}

void Material::check() const {
  if (!(density > 0.0)) throw Error(ErrorCode::Config, "density must be positive", "material.density");
  if (!(young_modulus > 0.0)) throw Error(ErrorCode::Config, "E must be positive", "material.E");
  if (!(shear_modulus > 0.0)) throw Error(ErrorCode::Config, "G must be positive", "material.G");
}

void ActuatorStiffness::check() const {
  if (!(prismatic > 0.0))
    throw Error(ErrorCode::Config, "prismatic actuator stiffness must be positive", "actuator.k_prismatic");
  if (!(revolute > 0.0))
    throw Error(ErrorCode::Config, "revolute actuator stiffness must be positive", "actuator.k_revolute");
}

ValidatedDesign validate(const DesignVector& design, const Bounds& bounds) {
  const int c = code(design.architecture);
  if (c < bounds.architecture_lower || c > bounds.architecture_upper)
    throw Error(ErrorCode::OutOfBounds, "architecture outside bounds", "d");
  for (int i = 0; i < kContinuousVariables; ++i) {
    const double x = get(design, static_cast<Variable>(i));
    if (!std::isfinite(x) || x < bounds.lower[i] || x > bounds.upper[i]) {
      const std::string name(kVariableNames[i]);
      throw Error(ErrorCode::OutOfBounds, name + " outside bounds", name);
    }
  }
  for (Variable v : {Variable::R, Variable::r, Variable::L_b}) {
    if (get(design, v) <= 0.0) {
      const std::string name(kVariableNames[static_cast<int>(v)]);
      throw Error(ErrorCode::OutOfBounds, name + " must be positive", name);
    }
  }
  if (design.leg_section_radius <= 0.0)
    throw Error(ErrorCode::DegenerateSection, "zero leg cross-section", "r_j");
  if (design.platform_section_radius <= 0.0)
    throw Error(ErrorCode::DegenerateSection, "zero platform cross-section", "r_p");
  return ValidatedDesign(design);
}

double link_mass(const DesignVector& d, const Material& m) noexcept {
  return std::numbers::pi * d.leg_section_radius * d.leg_section_radius * d.link_length * m.density;
}

double platform_mass(const DesignVector& d, const Material& m) noexcept {
  return 3.0 * std::numbers::pi * d.platform_section_radius * d.platform_section_radius * d.platform_radius *
         m.density;
}

double mass(const ValidatedDesign& design, const Material& material) noexcept {
  const DesignVector& d = design.value();
  const double links = d.architecture == Architecture::RRR ? 6.0 : 3.0;
  return links * link_mass(d, material) + platform_mass(d, material);
}

}  // namespace ppm
