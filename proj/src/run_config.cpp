#include "ppm/run_config.hpp"

#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ppm {

namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::Config, path + ": " + message, path);
}

// Object reader that records visited keys so leftovers can be rejected.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  const json& at(const std::string& key) {
    const auto it = node_.find(key);
    if (it == node_.end()) fail(child(key), "missing key");
    seen_.insert(key);
    return *it;
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail(child(key), "expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) fail(child(key), "expected an integer");
    return v.get<int>();
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_unsigned()) fail(child(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail(child(key), "expected a string");
    return v.get<std::string>();
  }

  std::array<double, 3> triple(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array() || v.size() != 3) fail(child(key), "expected an array of 3 numbers");
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number()) fail(child(key) + "[" + std::to_string(i) + "]", "expected a number");
      out[i] = v[i].get<double>();
    }
    return out;
  }

  Section section(const std::string& key) { return Section(at(key), child(key)); }

  void finish() const {
    for (const auto& [key, value] : node_.items())
      if (!seen_.contains(key)) fail(child(key), "unknown key");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_variable_box(Section s, int& arch, std::array<double, kContinuousVariables>& values) {
  arch = s.integer("d");
  for (int i = 0; i < kContinuousVariables; ++i) values[i] = s.number(std::string(kVariableNames[i]));
  s.finish();
}

json variable_box(int arch, const std::array<double, kContinuousVariables>& values) {
  json j = json::object();
  j["d"] = arch;
  for (int i = 0; i < kContinuousVariables; ++i) j[std::string(kVariableNames[i])] = values[i];
  return j;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("malformed JSON: ") + e.what(), "<root>");
  }

  RunConfig cfg;
  EvaluationContext& ctx = cfg.context;
  PerformanceConfig& perf = ctx.performance;
  Section top(root, "");

  {
    Section s = top.section("bounds");
    read_variable_box(s.section("lower"), ctx.bounds.architecture_lower, ctx.bounds.lower);
    read_variable_box(s.section("upper"), ctx.bounds.architecture_upper, ctx.bounds.upper);
    s.finish();
  }
  {
    Section s = top.section("material");
    perf.stiffness.material.density = s.number("density");
    perf.stiffness.material.young_modulus = s.number("E");
    perf.stiffness.material.shear_modulus = s.number("G");
    s.finish();
  }
  {
    Section s = top.section("actuator");
    perf.stiffness.actuator.prismatic = s.number("k_prismatic");
    perf.stiffness.actuator.revolute = s.number("k_revolute");
    s.finish();
  }
  {
    Section s = top.section("dexterity");
    perf.dexterity.threshold = s.number("threshold");
    const json& lc = s.at("characteristic_length");
    if (lc.is_string() && lc.get<std::string>() == "home_optimal") {
      perf.dexterity.policy = DexterityConfig::LengthPolicy::HomeOptimal;
    } else if (lc.is_number()) {
      perf.dexterity.policy = DexterityConfig::LengthPolicy::Fixed;
      perf.dexterity.fixed_length = lc.get<double>();
    } else {
      fail("dexterity.characteristic_length", "expected \"home_optimal\" or a length in m");
    }
    s.finish();
  }
  {
    Section s = top.section("thresholds");
    perf.thresholds.k_xy = s.number("k_xy");
    perf.thresholds.k_z = s.number("k_z");
    perf.thresholds.k_phiz = s.number("k_phiz");
    s.finish();
    if (!(perf.thresholds.k_xy > 0.0)) fail("thresholds.k_xy", "must be positive");
    if (!(perf.thresholds.k_z > 0.0)) fail("thresholds.k_z", "must be positive");
    if (!(perf.thresholds.k_phiz > 0.0)) fail("thresholds.k_phiz", "must be positive");
  }
  {
    Section s = top.section("wrench");
    perf.wrench.force = s.triple("force");
    perf.wrench.torque = s.triple("torque");
    s.finish();
  }
  {
    const json& modes = top.at("working_mode");
    if (!modes.is_array() || modes.size() != 3) fail("working_mode", "expected an array of 3 of \"+\" or \"-\"");
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string path = "working_mode[" + std::to_string(i) + "]";
      if (!modes[i].is_string()) fail(path, "expected \"+\" or \"-\"");
      const std::string m = modes[i].get<std::string>();
      if (m == "+") perf.mode[i] = Branch::Plus;
      else if (m == "-") perf.mode[i] = Branch::Minus;
      else fail(path, "expected \"+\" or \"-\"");
    }
  }
  {
    Section s = top.section("workspace");
    Section c = s.section("center");
    const double x = c.number("x");
    const double y = c.number("y");
    const double phi = c.number("phi_deg") * kDeg;
    c.finish();
    ctx.workspace.center = Pose{x, y, phi};
    ctx.workspace.rotation_range = s.number("rotation_range_deg") * kDeg;
    ctx.workspace.grid.n_radial = s.integer("n_radial");
    ctx.workspace.grid.n_angular = s.integer("n_angular");
    ctx.workspace.grid.n_orientation = s.integer("n_orientation");
    ctx.workspace.tolerance = s.number("tolerance");
    s.finish();
    if (!(ctx.workspace.tolerance > 0.0)) fail("workspace.tolerance", "must be positive");
    perf.home = ctx.workspace.center;
  }
  {
    Section s = top.section("moga");
    cfg.moga.population = s.integer("population");
    cfg.moga.generations = s.integer("generations");
    cfg.moga.p_directional_crossover = s.number("p_directional_crossover");
    cfg.moga.p_selection = s.number("p_selection");
    cfg.moga.p_mutation = s.number("p_mutation");
    cfg.moga.dna_mutation_ratio = s.number("dna_mutation_ratio");
    cfg.moga.seed = s.unsigned_integer("seed");
    const std::string doe = s.text("doe");
    if (doe == "sobol") cfg.moga.doe = DoeKind::Sobol;
    else if (doe == "latin") cfg.moga.doe = DoeKind::Latin;
    else fail("moga.doe", "expected \"sobol\" or \"latin\"");
    s.finish();
  }
  cfg.moga.threads = top.integer("threads");
  cfg.output_dir = top.text("output_dir");
  top.finish();

  ctx.bounds.check();
  perf.stiffness.material.check();
  perf.stiffness.actuator.check();
  perf.dexterity.check();
  ctx.workspace.grid.check();
  WorkspaceSpec{ctx.workspace.center, ctx.workspace.rotation_range, 0.0}.check();
  cfg.moga.check();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::Config, "cannot read config file " + file.string(), "<file>");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string to_json(const RunConfig& cfg) {
  const EvaluationContext& ctx = cfg.context;
  const PerformanceConfig& perf = ctx.performance;
  json j;
  j["bounds"]["lower"] = variable_box(ctx.bounds.architecture_lower, ctx.bounds.lower);
  j["bounds"]["upper"] = variable_box(ctx.bounds.architecture_upper, ctx.bounds.upper);
  j["material"] = {{"density", perf.stiffness.material.density},
                   {"E", perf.stiffness.material.young_modulus},
                   {"G", perf.stiffness.material.shear_modulus}};
  j["actuator"] = {{"k_prismatic", perf.stiffness.actuator.prismatic},
                   {"k_revolute", perf.stiffness.actuator.revolute}};
  j["dexterity"]["threshold"] = perf.dexterity.threshold;
  if (perf.dexterity.policy == DexterityConfig::LengthPolicy::HomeOptimal)
    j["dexterity"]["characteristic_length"] = "home_optimal";
  else
    j["dexterity"]["characteristic_length"] = perf.dexterity.fixed_length;
  j["thresholds"] = {{"k_xy", perf.thresholds.k_xy}, {"k_z", perf.thresholds.k_z},
                     {"k_phiz", perf.thresholds.k_phiz}};
  j["wrench"] = {{"force", perf.wrench.force}, {"torque", perf.wrench.torque}};
  j["working_mode"] = json::array();
  for (Branch b : perf.mode) j["working_mode"].push_back(b == Branch::Plus ? "+" : "-");
  j["workspace"] = {{"center",
                     {{"x", ctx.workspace.center.x},
                      {"y", ctx.workspace.center.y},
                      {"phi_deg", ctx.workspace.center.phi / kDeg}}},
                    {"rotation_range_deg", ctx.workspace.rotation_range / kDeg},
                    {"n_radial", ctx.workspace.grid.n_radial},
                    {"n_angular", ctx.workspace.grid.n_angular},
                    {"n_orientation", ctx.workspace.grid.n_orientation},
                    {"tolerance", ctx.workspace.tolerance}};
  j["moga"] = {{"population", cfg.moga.population},
               {"generations", cfg.moga.generations},
               {"p_directional_crossover", cfg.moga.p_directional_crossover},
               {"p_selection", cfg.moga.p_selection},
               {"p_mutation", cfg.moga.p_mutation},
               {"dna_mutation_ratio", cfg.moga.dna_mutation_ratio},
               {"seed", cfg.moga.seed},
               {"doe", cfg.moga.doe == DoeKind::Sobol ? "sobol" : "latin"}};
  j["threads"] = cfg.moga.threads;
  j["output_dir"] = cfg.output_dir.string();
  return j.dump(2) + "\n";
}

std::string default_config_json() { return to_json(RunConfig{}); }

}  // namespace ppm
