#include "ppm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace ppm {

namespace {

void append_design_row(std::string& out, const Evaluation& e, std::uint64_t seed) {
  const DesignVector& d = e.design;
  fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{},{},{},{}", code(d.architecture), d.base_radius,
                 d.platform_radius, d.link_length, d.leg_section_radius, d.platform_section_radius, e.mass,
                 e.workspace_radius, e.characteristic_length, seed);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorCode::Config, fmt::format("line {}: bad number '{}'", line, s), "<archive>");
  return v;
}

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

nlohmann::json constraint_table(const ConstraintReport& c) {
  auto flag = [](bool ok) { return ok ? "pass" : "fail"; };
  return {{"g1_geometry", flag(c.g1_geometry)},
          {"g2_stroke", flag(c.g2_stroke)},
          {"g3_dexterity", flag(c.g3_dexterity)},
          {"g4_kxy", flag(c.g4_kxy)},
          {"g5_kz", flag(c.g5_kz)},
          {"g6_kphiz", flag(c.g6_kphiz)},
          {"inverse_condition", c.inverse_condition},
          {"stiffness_evaluated", c.stiffness_evaluated},
          {"k_xy_min", c.stiffness.k_xy_min},
          {"k_z_min", c.stiffness.k_z_min},
          {"k_phiz_min", c.stiffness.k_phiz_min},
          {"overall", flag(c.overall)}};
}

nlohmann::json pose_json(const Pose& p) {
  return {{"x", p.x}, {"y", p.y}, {"phi_deg", p.phi * 180.0 / std::numbers::pi}};
}

}  // namespace

std::string pareto_csv(const ParetoArchive& archive, std::uint64_t seed) {
  std::string out(kParetoHeader);
  out += '\n';
  for (const Evaluation& e : archive.entries) {
    append_design_row(out, e, seed);
    out += '\n';
  }
  return out;
}

std::string history_csv(const MogaResult& result, std::uint64_t seed) {
  std::string out(kHistoryHeader);
  out += '\n';
  std::vector<Evaluation> seen;
  std::size_t next = 0;
  for (const GenerationRecord& rec : result.generations) {
    while (next < result.evaluations.size() && result.evaluations[next].generation <= rec.generation)
      seen.push_back(result.evaluations[next++]);
    ParetoArchive snapshot = pareto_filter(seen);
    seen = snapshot.entries;
    for (const Evaluation& e : snapshot.entries) {
      append_design_row(out, e, seed);
      fmt::format_to(std::back_inserter(out), ",{},{},{}\n", rec.generation, rec.hypervolume, rec.n_feasible);
    }
  }
  return out;
}

std::string fronts_csv(const std::array<ParetoArchive, 3>& fronts, std::uint64_t seed) {
  std::string out(kParetoHeader);
  out += '\n';
  for (const ParetoArchive& front : fronts)
    for (const Evaluation& e : front.entries) {
      append_design_row(out, e, seed);
      out += '\n';
    }
  return out;
}

std::string sweep_csv(const ParetoArchive& front) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const Evaluation& e : front.entries) {
    const DesignVector& d = e.design;
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", e.workspace_radius, d.base_radius,
                   d.platform_radius, d.link_length, d.leg_section_radius, d.platform_section_radius);
  }
  return out;
}

std::vector<Evaluation> read_front_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kParetoHeader)
    throw Error(ErrorCode::Config, "archive header does not match pareto.csv", "<archive>");
  std::vector<Evaluation> out;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 10)
      throw Error(ErrorCode::Config, fmt::format("line {}: expected 10 columns", number), "<archive>");
    const auto arch = architecture_from_code(static_cast<int>(parse_double(cells[0], number)));
    if (!arch) throw Error(ErrorCode::Config, fmt::format("line {}: bad architecture", number), "<archive>");
    Evaluation e;
    e.design = DesignVector{*arch,
                            parse_double(cells[1], number),
                            parse_double(cells[2], number),
                            parse_double(cells[3], number),
                            parse_double(cells[4], number),
                            parse_double(cells[5], number)};
    e.mass = parse_double(cells[6], number);
    e.workspace_radius = parse_double(cells[7], number);
    e.characteristic_length = parse_double(cells[8], number);
    e.feasible = true;
    out.push_back(e);
  }
  return out;
}

DesignReport analyze_design(const DesignVector& design, const EvaluationContext& ctx) {
  DesignReport report;
  report.evaluation = evaluate(design, ctx);
  const Evaluation& e = report.evaluation;
  if (e.characteristic_length <= 0.0) return report;

  const ValidatedDesign vd = validate(design, ctx.bounds);
  const ConstraintEvaluator ev(vd, ctx.performance, e.characteristic_length);
  report.center = ev.evaluate(ctx.workspace.center);
  report.center_reachable = report.center.ik_reachable;
  if (e.limiting_pose) report.evaluation.limiting_report = ev.evaluate(*e.limiting_pose);

  const WorkspaceSpec spec{ctx.workspace.center, ctx.workspace.rotation_range, e.workspace_radius};
  double lowest = std::numeric_limits<double>::infinity();
  for (const Pose& p : grid_points(spec, ctx.workspace.grid)) lowest = std::min(lowest, ev.evaluate(p).inverse_condition);
  report.min_inverse_condition = lowest;
  return report;
}

std::string report_json(const DesignReport& report, const EvaluationContext& ctx) {
  using nlohmann::json;
  const Evaluation& e = report.evaluation;
  const DesignVector& d = e.design;
  json j;
  j["design"] = {{"d", code(d.architecture)},
                 {"architecture", std::string(to_string(d.architecture))},
                 {"R", d.base_radius},
                 {"r", d.platform_radius},
                 {"L_b", d.link_length},
                 {"r_j", d.leg_section_radius},
                 {"r_p", d.platform_section_radius}};
  j["feasible"] = e.feasible;
  j["mass_kg"] = e.mass;
  j["R_w_m"] = e.workspace_radius;
  j["L_c_m"] = e.characteristic_length;
  j["characteristic_length_policy"] =
      ctx.performance.dexterity.policy == DexterityConfig::LengthPolicy::HomeOptimal ? "home_optimal" : "fixed";
  json mode = json::array();
  for (Branch b : ctx.performance.mode) mode.push_back(b == Branch::Plus ? "+" : "-");
  j["working_mode"] = mode;
  j["workspace_center"] = pose_json(ctx.workspace.center);
  j["center_reachable"] = report.center_reachable;
  j["center_constraints"] = constraint_table(report.center);
  j["stiffness_at_center"] = {{"k_xy_min", report.center.stiffness.k_xy_min},
                              {"k_z_min", report.center.stiffness.k_z_min},
                              {"k_phiz_min", report.center.stiffness.k_phiz_min}};
  j["min_inverse_condition"] = report.min_inverse_condition;
  j["violation"] = e.violation;
  if (e.limiting_pose) {
    j["limiting_pose"] = pose_json(*e.limiting_pose);
    j["limiting_constraints"] = constraint_table(e.limiting_report);
  } else {
    j["limiting_pose"] = nullptr;
  }
  return j.dump(2) + "\n";
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return 0.0;
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n != static_cast<Eigen::Index>(y.size()) || n <= degree) return 0.0;
  Eigen::MatrixXd v(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k <= degree; ++k) v(i, k) = std::pow(x[i], k);
    b(i) = y[i];
  }
  const Eigen::VectorXd coef = v.colPivHouseholderQr().solve(b);
  const double ss_res = (v * coef - b).squaredNorm();
  const double ss_tot = (b.array() - b.mean()).square().sum();
  if (ss_tot <= 0.0) return 0.0;
  return 1.0 - ss_res / ss_tot;
}

}  // namespace ppm
