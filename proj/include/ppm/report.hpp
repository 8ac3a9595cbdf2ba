#pragma once

/// @file report.hpp
/// Plot-ready exports and small statistics used to read the fronts.
/// CSV output uses LF line endings, '.' decimals and shortest round-trip
/// number formatting, so identical inputs give identical bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppm/moga.hpp"

namespace ppm {

inline constexpr std::string_view kParetoHeader = "d,R,r,L_b,r_j,r_p,mass_kg,R_w_m,L_c_m,seed";
inline constexpr std::string_view kHistoryHeader =
    "d,R,r,L_b,r_j,r_p,mass_kg,R_w_m,L_c_m,seed,generation,hypervolume,n_feasible";
inline constexpr std::string_view kSweepHeader = "R_w_m,R,r,L_b,r_j,r_p";

/// One row per archive entry, R_w ascending.
std::string pareto_csv(const ParetoArchive& archive, std::uint64_t seed);

/// Archive snapshot after every generation, each block R_w ascending.
std::string history_csv(const MogaResult& result, std::uint64_t seed);

/// The three per-architecture fronts, PRR first, in pareto.csv format.
std::string fronts_csv(const std::array<ParetoArchive, 3>& fronts, std::uint64_t seed);

/// Design variables against R_w along one front.
std::string sweep_csv(const ParetoArchive& front);

/// Reads rows written by pareto_csv or fronts_csv back into evaluations
/// (design, mass, R_w, L_c; all marked feasible). Throws Error(Config).
std::vector<Evaluation> read_front_csv(const std::string& text);

/// Full single-design analysis for the evaluate command.
struct DesignReport {
  Evaluation evaluation;
  bool center_reachable = false;
  ConstraintReport center{};            // at the workspace center
  double min_inverse_condition = 0.0;   // over the grid at the radius found
};

DesignReport analyze_design(const DesignVector& design, const EvaluationContext& ctx);

/// Pretty-printed JSON report.
std::string report_json(const DesignReport& report, const EvaluationContext& ctx);

/// Spearman rank correlation (average ranks for ties); 0 for degenerate input.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Coefficient of determination of least-squares polynomial fits of y on x.
double r_squared(const std::vector<double>& x, const std::vector<double>& y, int degree);

}  // namespace ppm
