#pragma once

/// @file core_model.hpp
/// Design variables, material data, bounds and the mass-in-motion objective
/// shared by every other module.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

#include "ppm/error.hpp"

namespace ppm {

/// Manipulator architecture; the integer codes are the design variable d.
enum class Architecture : int { PRR = 1, RPR = 2, RRR = 3 };

inline constexpr std::array<Architecture, 3> kAllArchitectures{Architecture::PRR, Architecture::RPR,
                                                               Architecture::RRR};

std::string_view to_string(Architecture arch) noexcept;
std::optional<Architecture> architecture_from_code(int code) noexcept;
constexpr int code(Architecture arch) noexcept { return static_cast<int>(arch); }

/// The six decision variables (d, R, r, L_b, r_j, r_p). Lengths in meters.
struct DesignVector {
  Architecture architecture = Architecture::PRR;
  double base_radius = 0.0;              // R
  double platform_radius = 0.0;          // r
  double link_length = 0.0;              // L_b
  double leg_section_radius = 0.0;       // r_j
  double platform_section_radius = 0.0;  // r_p

  bool operator==(const DesignVector&) const = default;
};

/// Continuous variable indices, in the order of the design vector after d.
enum class Variable : int { R = 0, r = 1, L_b = 2, r_j = 3, r_p = 4 };
inline constexpr int kContinuousVariables = 5;
inline constexpr std::array<std::string_view, kContinuousVariables> kVariableNames{"R", "r", "L_b", "r_j",
                                                                                 "r_p"};

double get(const DesignVector& design, Variable v) noexcept;
void set(DesignVector& design, Variable v, double value) noexcept;

/// Componentwise box on the design vector. The architecture range is given by
/// integer codes.
struct Bounds {
  int architecture_lower = 1;
  int architecture_upper = 3;
  std::array<double, kContinuousVariables> lower{0.5, 0.3, 0.5, 0.0, 0.0};
  std::array<double, kContinuousVariables> upper{4.0, 4.0, 4.0, 0.1, 0.1};

  /// Throws Error(Config) when lower > upper anywhere.
  void check() const;
};

/// Isotropic linear-elastic material. Defaults are structural steel.
struct Material {
  double density = 7850.0;  // kg/m^3
  double young_modulus = 210e9;
  double shear_modulus = 210e9 / (2.0 * (1.0 + 0.3));

  void check() const;
};

/// Actuator (control loop) stiffness, one value per actuator kind.
struct ActuatorStiffness {
  double prismatic = 1e7;  // N/m
  double revolute = 1e6;   // N m/rad

  void check() const;
};

/// External wrench on the moving platform at P.
struct Wrench {
  std::array<double, 3> force{100.0 / std::numbers::sqrt2, 100.0 / std::numbers::sqrt2, 100.0};
  std::array<double, 3> torque{0.0, 0.0, 100.0};
};

/// A design that passed validate(); the only way to build one outside tests
/// is through validate().
class ValidatedDesign {
 public:
  const DesignVector& value() const noexcept { return design_; }
  const DesignVector* operator->() const noexcept { return &design_; }
  Architecture architecture() const noexcept { return design_.architecture; }

 private:
  friend ValidatedDesign validate(const DesignVector&, const Bounds&);
  explicit ValidatedDesign(const DesignVector& d) : design_(d) {}
  DesignVector design_;
};

/// Checks bounds and strictly positive section radii.
/// Throws Error(OutOfBounds, field) or Error(DegenerateSection, field).
ValidatedDesign validate(const DesignVector& design, const Bounds& bounds);

/// Mass of one intermediate link, pi r_j^2 L_b rho.
double link_mass(const DesignVector& design, const Material& material) noexcept;
/// Moving platform mass, three bars of length r and section radius r_p.
double platform_mass(const DesignVector& design, const Material& material) noexcept;
/// Mass in motion: 3 links + platform for PRR/RPR, 6 links + platform for RRR.
double mass(const ValidatedDesign& design, const Material& material) noexcept;

}  // namespace ppm
