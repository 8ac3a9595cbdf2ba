#include "ppm/doe.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/random/sobol.hpp>

namespace ppm {

namespace {

Architecture round_robin(int k, const Bounds& bounds) {
  const int span = bounds.architecture_upper - bounds.architecture_lower + 1;
  return static_cast<Architecture>(bounds.architecture_lower + k % span);
}

}  // namespace

std::vector<Genome> sobol_doe(int n, const Bounds& bounds, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("DOE size must be >= 1");
  std::mt19937_64 rng(seed);
  std::array<std::uint32_t, kContinuousVariables> shift{};
  for (auto& s : shift) s = static_cast<std::uint32_t>(rng() >> 32);

  boost::random::sobol_engine<std::uint32_t, 32> engine(kContinuousVariables);
  std::vector<Genome> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    std::array<double, kContinuousVariables> unit{};
    for (int i = 0; i < kContinuousVariables; ++i) {
      const auto raw = static_cast<std::uint32_t>(engine()) ^ shift[i];
      unit[i] = static_cast<double>(raw) / 4294967295.0;
    }
    out.push_back(from_unit_coordinates(round_robin(k, bounds), unit, bounds));
  }
  return out;
}

std::vector<Genome> latin_doe(int n, const Bounds& bounds, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("DOE size must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::array<std::vector<int>, kContinuousVariables> strata;
  for (auto& s : strata) {
    s.resize(n);
    std::iota(s.begin(), s.end(), 0);
    std::shuffle(s.begin(), s.end(), rng);
  }
  std::vector<Genome> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    std::array<double, kContinuousVariables> unit{};
    for (int i = 0; i < kContinuousVariables; ++i) unit[i] = (strata[i][k] + jitter(rng)) / n;
    out.push_back(from_unit_coordinates(round_robin(k, bounds), unit, bounds));
  }
  return out;
}

std::vector<Genome> make_doe(DoeKind kind, int n, const Bounds& bounds, std::uint64_t seed) {
  return kind == DoeKind::Sobol ? sobol_doe(n, bounds, seed) : latin_doe(n, bounds, seed);
}

}  // namespace ppm
