#pragma once

/// @file doe.hpp
/// Initial population samplers. The architecture gene is assigned
/// round-robin over the allowed codes; the five continuous genes come from
/// the sampler.

#include <cstdint>
#include <vector>

#include "ppm/genome.hpp"

namespace ppm {

enum class DoeKind { Sobol, Latin };

/// First n points of a 5-D Sobol sequence with a seed-derived digital shift.
std::vector<Genome> sobol_doe(int n, const Bounds& bounds, std::uint64_t seed);

/// Latin hypercube: one point per stratum in each continuous dimension.
std::vector<Genome> latin_doe(int n, const Bounds& bounds, std::uint64_t seed);

std::vector<Genome> make_doe(DoeKind kind, int n, const Bounds& bounds, std::uint64_t seed);

}  // namespace ppm
