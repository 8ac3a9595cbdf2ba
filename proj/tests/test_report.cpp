#include <doctest.h>

#include "ppm/report.hpp"

using namespace ppm;

namespace {

Evaluation row(double mass, double radius) {
  Evaluation e;
  e.design = DesignVector{Architecture::PRR, 1.5, 0.4, 0.7, 0.02, 0.03};
  e.mass = mass;
  e.workspace_radius = radius;
  e.characteristic_length = 0.45;
  e.feasible = true;
  return e;
}

}  // namespace

TEST_CASE("pareto.csv format") {
  const ParetoArchive a = pareto_filter({row(10.5, 0.2), row(3.25, 0.1)});
  const std::string csv = pareto_csv(a, 7);
  CHECK(csv ==
        "d,R,r,L_b,r_j,r_p,mass_kg,R_w_m,L_c_m,seed\n"
        "1,1.5,0.4,0.7,0.02,0.03,3.25,0.1,0.45,7\n"
        "1,1.5,0.4,0.7,0.02,0.03,10.5,0.2,0.45,7\n");
  CHECK(csv.find('\r') == std::string::npos);
  const auto back = read_front_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[1].mass == 10.5);
  CHECK(back[0].design == a.entries[0].design);
}

TEST_CASE("numbers round trip exactly") {
  Evaluation e = row(1.0 / 3.0, 0.1 + 0.2);
  const auto back = read_front_csv(pareto_csv(ParetoArchive{{e}}, 1));
  CHECK(back[0].mass == e.mass);
  CHECK(back[0].workspace_radius == e.workspace_radius);
}

TEST_CASE("sweep and history formats") {
  const ParetoArchive a = pareto_filter({row(3.0, 0.1)});
  CHECK(sweep_csv(a) == "R_w_m,R,r,L_b,r_j,r_p\n0.1,1.5,0.4,0.7,0.02,0.03\n");
  MogaResult result;
  result.evaluations = {row(3.0, 0.1), row(5.0, 0.3)};
  result.evaluations[1].generation = 1;
  result.generations = {GenerationRecord{0, 1.0, 1, 1}, GenerationRecord{1, 2.0, 1, 2}};
  const std::string h = history_csv(result, 2);
  CHECK(h.substr(0, h.find('\n')) == kHistoryHeader);
  CHECK(std::count(h.begin(), h.end(), '\n') == 4);
  CHECK(h.find("3,0.1,0.45,2,1,2,1\n") != std::string::npos);
}

TEST_CASE("malformed archives are rejected") {
  CHECK_THROWS_AS(read_front_csv("a,b\n"), Error);
  CHECK_THROWS_AS(read_front_csv(std::string(kParetoHeader) + "\n1,2,3\n"), Error);
  CHECK_THROWS_AS(read_front_csv(std::string(kParetoHeader) + "\n7,1,1,1,1,1,1,1,1,1\n"), Error);
}

TEST_CASE("Spearman correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {1, 8, 27, 64}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3}, {5, 5, 5}) == 0.0);
  // ties use average ranks: ranks y = 1.5, 1.5, 3
  CHECK(spearman({1, 2, 3}, {1, 1, 2}) == doctest::Approx(0.8660254037844386));
}

TEST_CASE("polynomial R squared") {
  std::vector<double> x, lin, quad;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    lin.push_back(2.0 * i + 1.0);
    quad.push_back(i * i);
  }
  CHECK(r_squared(x, lin, 1) == doctest::Approx(1.0));
  CHECK(r_squared(x, quad, 2) == doctest::Approx(1.0));
  CHECK(r_squared(x, quad, 1) < 1.0);
  CHECK(r_squared(x, quad, 1) > 0.9);
}

TEST_CASE("design report") {
  const EvaluationContext ctx{};
  const DesignReport rep = analyze_design(DesignVector{Architecture::PRR, 1.412, 0.319, 0.620, 0.026, 0.023}, ctx);
  CHECK(rep.evaluation.feasible);
  CHECK(rep.center.overall);
  CHECK(rep.min_inverse_condition >= ctx.performance.dexterity.threshold);
  REQUIRE(rep.evaluation.limiting_pose);
  CHECK_FALSE(rep.evaluation.limiting_report.overall);
  const std::string j = report_json(rep, ctx);
  CHECK(j.find("\"mass_kg\"") != std::string::npos);
  CHECK(j.find("\"g4_kxy\": \"pass\"") != std::string::npos);
}
