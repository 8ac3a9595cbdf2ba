#include "ppm/genome.hpp"

#include <algorithm>
#include <cmath>

namespace ppm {

namespace {

int clamp_architecture(int c, const Bounds& bounds) {
  return std::clamp(c, bounds.architecture_lower, bounds.architecture_upper);
}

std::uint16_t level_of(double unit) {
  const double scaled = std::round(std::clamp(unit, 0.0, 1.0) * (kGeneLevels - 1));
  return static_cast<std::uint16_t>(scaled);
}

}  // namespace

bool Genome::bit(int index) const noexcept {
  if (index < kArchitectureBits) return (architecture >> (kArchitectureBits - 1 - index)) & 1u;
  const int g = (index - kArchitectureBits) / kGeneBits;
  const int b = (index - kArchitectureBits) % kGeneBits;
  return (genes[g] >> (kGeneBits - 1 - b)) & 1u;
}

void Genome::set_bit(int index, bool value) noexcept {
  if (index < kArchitectureBits) {
    const auto mask = static_cast<std::uint8_t>(1u << (kArchitectureBits - 1 - index));
    architecture = value ? (architecture | mask) : (architecture & ~mask);
    return;
  }
  const int g = (index - kArchitectureBits) / kGeneBits;
  const int b = (index - kArchitectureBits) % kGeneBits;
  const auto mask = static_cast<std::uint16_t>(1u << (kGeneBits - 1 - b));
  genes[g] = value ? static_cast<std::uint16_t>(genes[g] | mask) : static_cast<std::uint16_t>(genes[g] & ~mask);
}

double quantization_step(const Bounds& bounds, Variable v) noexcept {
  const int i = static_cast<int>(v);
  return (bounds.upper[i] - bounds.lower[i]) / (kGeneLevels - 1);
}

std::array<double, kContinuousVariables> unit_coordinates(const Genome& genome) noexcept {
  std::array<double, kContinuousVariables> u{};
  for (int i = 0; i < kContinuousVariables; ++i)
    u[i] = static_cast<double>(from_gray(genome.genes[i])) / (kGeneLevels - 1);
  return u;
}

Genome from_unit_coordinates(Architecture arch, const std::array<double, kContinuousVariables>& unit,
                             const Bounds& bounds) {
  Genome g;
  const int c = clamp_architecture(code(arch), bounds);
  g.architecture = static_cast<std::uint8_t>(to_gray(static_cast<std::uint16_t>(c - 1)));
  for (int i = 0; i < kContinuousVariables; ++i) g.genes[i] = to_gray(level_of(unit[i]));
  return g;
}

Genome encode(const DesignVector& design, const Bounds& bounds) {
  std::array<double, kContinuousVariables> unit{};
  for (int i = 0; i < kContinuousVariables; ++i) {
    const double span = bounds.upper[i] - bounds.lower[i];
    unit[i] = span > 0.0 ? (get(design, static_cast<Variable>(i)) - bounds.lower[i]) / span : 0.0;
  }
  return from_unit_coordinates(design.architecture, unit, bounds);
}

DesignVector decode(const Genome& genome, const Bounds& bounds) {
  DesignVector d;
  const int value = from_gray(genome.architecture) & 3u;
  d.architecture = static_cast<Architecture>(clamp_architecture(std::min(value, 2) + 1, bounds));
  const auto unit = unit_coordinates(genome);
  for (int i = 0; i < kContinuousVariables; ++i) {
    const double x = bounds.lower[i] + unit[i] * (bounds.upper[i] - bounds.lower[i]);
    set(d, static_cast<Variable>(i), std::min(x, bounds.upper[i]));
  }
  return d;
}

std::size_t GenomeHash::operator()(const Genome& g) const noexcept {
  std::size_t h = g.architecture;
  for (auto gene : g.genes) h = h * 1000003u ^ gene;
  return h;
}

}  // namespace ppm
