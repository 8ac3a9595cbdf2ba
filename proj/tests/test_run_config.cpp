#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ppm/run_config.hpp"

using namespace ppm;
using nlohmann::json;

namespace {

std::string expect_config_error(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    return e.field();
  }
  FAIL("expected a configuration error");
  return {};
}

}  // namespace

TEST_CASE("defaults round trip") {
  const std::string text = default_config_json();
  const RunConfig cfg = parse_run_config(text);
  CHECK(to_json(cfg) == text);
  CHECK(cfg.moga.population == 30);
  CHECK(cfg.moga.generations == 200);
  CHECK(cfg.context.performance.home.phi == doctest::Approx(cfg.context.workspace.center.phi));
}

TEST_CASE("missing and unknown keys name their path") {
  json j = json::parse(default_config_json());
  j["material"].erase("E");
  CHECK(expect_config_error(j.dump()) == "material.E");

  j = json::parse(default_config_json());
  j["moga"]["crossover"] = 0.3;
  CHECK(expect_config_error(j.dump()) == "moga.crossover");

  j = json::parse(default_config_json());
  j["workspace"]["center"].erase("phi_deg");
  CHECK(expect_config_error(j.dump()) == "workspace.center.phi_deg");

  j = json::parse(default_config_json());
  j["moga"]["population"] = "many";
  CHECK(expect_config_error(j.dump()) == "moga.population");

  j = json::parse(default_config_json());
  j["working_mode"][1] = "x";
  CHECK(expect_config_error(j.dump()) == "working_mode[1]");

  CHECK(expect_config_error("{ not json") == "<root>");
}

TEST_CASE("values are validated") {
  json j = json::parse(default_config_json());
  j["material"]["E"] = -1.0;
  CHECK(expect_config_error(j.dump()) == "material.E");
  j = json::parse(default_config_json());
  j["bounds"]["lower"]["R"] = 5.0;
  CHECK(expect_config_error(j.dump()) == "bounds.R");
}

TEST_CASE("overrides are applied") {
  json j = json::parse(default_config_json());
  j["dexterity"]["characteristic_length"] = 0.8;
  j["workspace"]["center"]["phi_deg"] = 0.0;
  j["working_mode"] = {"+", "-", "+"};
  j["moga"]["doe"] = "latin";
  const RunConfig cfg = parse_run_config(j.dump());
  CHECK(cfg.context.performance.dexterity.policy == DexterityConfig::LengthPolicy::Fixed);
  CHECK(cfg.context.performance.dexterity.fixed_length == 0.8);
  CHECK(cfg.context.workspace.center.phi == 0.0);
  CHECK(cfg.context.performance.home.phi == 0.0);
  CHECK(cfg.context.performance.mode[1] == Branch::Minus);
  CHECK(cfg.moga.doe == DoeKind::Latin);
}
