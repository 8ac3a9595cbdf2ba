#pragma once

/// @file genome.hpp
/// Binary "DNA" encoding of a design: a 2-bit architecture gene followed by
/// five 16-bit Gray-coded continuous genes, most significant bit first.

#include <array>
#include <cstdint>
#include <functional>

#include "ppm/core_model.hpp"

namespace ppm {

inline constexpr int kGeneBits = 16;
inline constexpr std::uint32_t kGeneLevels = 1u << kGeneBits;

constexpr std::uint16_t to_gray(std::uint16_t b) noexcept { return static_cast<std::uint16_t>(b ^ (b >> 1)); }
constexpr std::uint16_t from_gray(std::uint16_t g) noexcept {
  std::uint16_t b = g;
  for (std::uint16_t shift = g >> 1; shift != 0; shift >>= 1) b ^= shift;
  return b;
}

struct Genome {
  static constexpr int kArchitectureBits = 2;
  static constexpr int kBits = kArchitectureBits + kContinuousVariables * kGeneBits;

  std::uint8_t architecture = 0;  // Gray-coded, 2 bits
  std::array<std::uint16_t, kContinuousVariables> genes{};  // Gray-coded

  bool bit(int index) const noexcept;
  void set_bit(int index, bool value) noexcept;
  void flip(int index) noexcept { set_bit(index, !bit(index)); }

  bool operator==(const Genome&) const = default;
  auto operator<=>(const Genome&) const = default;
};

/// Largest change of a decoded variable between neighbouring lattice levels.
double quantization_step(const Bounds& bounds, Variable v) noexcept;

/// Nearest lattice point; the architecture code is clamped to the bounds.
Genome encode(const DesignVector& design, const Bounds& bounds);

/// Architecture gene values 0, 1, 2 map to d = 1, 2, 3; the unused value 3
/// maps to d = 3. The result is clamped to the architecture bounds.
DesignVector decode(const Genome& genome, const Bounds& bounds);

/// Continuous genes as fractions of their ranges, in [0, 1].
std::array<double, kContinuousVariables> unit_coordinates(const Genome& genome) noexcept;
Genome from_unit_coordinates(Architecture arch, const std::array<double, kContinuousVariables>& unit,
                             const Bounds& bounds);

struct GenomeHash {
  std::size_t operator()(const Genome& g) const noexcept;
};

}  // namespace ppm
