#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ppm/report.hpp"
#include "ppm/run_config.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kInfeasibleDesign = 3,
  kEmptyArchive = 4,
  kEmptyFront = 5,
};

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> threads;
  std::string design;
  std::string arch = "PRR";
  std::string archive;
  bool quiet = false;
};

ppm::RunConfig load(const Options& opt) {
  ppm::RunConfig cfg = opt.config.empty() ? ppm::RunConfig{} : ppm::load_run_config(opt.config);
  if (opt.seed) cfg.moga.seed = *opt.seed;
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  if (opt.threads) {
    if (*opt.threads < 0) throw ppm::Error(ppm::ErrorCode::Config, "threads must be >= 0", "--threads");
    cfg.moga.threads = *opt.threads;
  }
  return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

ppm::DesignVector parse_design(const std::string& text) {
  std::vector<double> v;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ppm::Error(ppm::ErrorCode::Config, "bad number in --design: '" + cell + "'", "--design");
    }
  }
  if (v.size() != 6) throw ppm::Error(ppm::ErrorCode::Config, "--design expects d,R,r,L_b,r_j,r_p", "--design");
  const auto arch = ppm::architecture_from_code(static_cast<int>(v[0]));
  if (!arch || v[0] != static_cast<int>(v[0]))
    throw ppm::Error(ppm::ErrorCode::Config, "--design: d must be 1, 2 or 3", "--design");
  return {*arch, v[1], v[2], v[3], v[4], v[5]};
}

ppm::Architecture parse_architecture(const std::string& text) {
  for (ppm::Architecture a : ppm::kAllArchitectures)
    if (text == ppm::to_string(a) || text == ppm::to_string(a).substr(2) || text == std::to_string(ppm::code(a)))
      return a;
  throw ppm::Error(ppm::ErrorCode::Config, "--arch must be PRR, RPR, RRR or 1..3", "--arch");
}

ppm::MogaResult run_optimizer(const ppm::RunConfig& cfg, bool quiet) {
  return ppm::evolve(cfg.moga, cfg.context, [&](const ppm::GenerationRecord& rec, const ppm::ParetoArchive&) {
    if (!quiet)
      fmt::print(stderr, "generation {:4d}  feasible {:3d}  archive {:3d}  hypervolume {:.6g}\n", rec.generation,
                 rec.n_feasible, rec.archive_size, rec.hypervolume);
  });
}

int cmd_evaluate(const Options& opt) {
  const ppm::RunConfig cfg = load(opt);
  if (opt.design.empty()) throw ppm::Error(ppm::ErrorCode::Config, "--design is required", "--design");
  const ppm::DesignVector design = parse_design(opt.design);
  const ppm::DesignReport report = ppm::analyze_design(design, cfg.context);
  const auto path = cfg.output_dir / "evaluation.json";
  write_file(path, ppm::report_json(report, cfg.context));
  const ppm::Evaluation& e = report.evaluation;
  fmt::print("{}: mass {:.4g} kg, R_w {:.4g} m, L_c {:.4g} m, {}\n", path.string(), e.mass, e.workspace_radius,
             e.characteristic_length, e.feasible ? "feasible" : "infeasible");
  return e.feasible ? kOk : kInfeasibleDesign;
}

int write_optimization(const ppm::RunConfig& cfg, const ppm::MogaResult& result) {
  const auto& dir = cfg.output_dir;
  const std::uint64_t seed = cfg.moga.seed;
  write_file(dir / "pareto.csv", ppm::pareto_csv(result.archive, seed));
  write_file(dir / "history.csv", ppm::history_csv(result, seed));
  write_file(dir / "fronts_by_architecture.csv",
             ppm::fronts_csv(ppm::per_architecture_fronts(result.evaluations), seed));
  write_file(dir / "run_config.json", ppm::to_json(cfg));
  if (result.no_feasible_design()) {
    fmt::print(stderr, "no feasible design after {} evaluations\n", result.evaluations.size());
    return kEmptyArchive;
  }
  fmt::print("{} Pareto-optimal designs written to {}\n", result.archive.entries.size(), dir.string());
  return kOk;
}

int cmd_optimize(const Options& opt) {
  const ppm::RunConfig cfg = load(opt);
  return write_optimization(cfg, run_optimizer(cfg, opt.quiet));
}

int cmd_sweep(const Options& opt) {
  const ppm::RunConfig cfg = load(opt);
  const ppm::Architecture arch = parse_architecture(opt.arch);
  std::vector<ppm::Evaluation> points;
  if (!opt.archive.empty()) {
    std::ifstream in(opt.archive, std::ios::binary);
    if (!in) throw ppm::Error(ppm::ErrorCode::Config, "cannot read " + opt.archive, "--archive");
    std::ostringstream buf;
    buf << in.rdbuf();
    points = ppm::read_front_csv(buf.str());
  } else {
    const ppm::MogaResult result = run_optimizer(cfg, opt.quiet);
    const int status = write_optimization(cfg, result);
    if (status != kOk && status != kEmptyArchive) return status;
    points = result.evaluations;
  }
  const auto fronts = ppm::per_architecture_fronts(points);
  const ppm::ParetoArchive& front = fronts[ppm::code(arch) - 1];
  if (front.entries.empty()) {
    fmt::print(stderr, "empty {} front\n", ppm::to_string(arch));
    return kEmptyFront;
  }
  const auto path = cfg.output_dir / fmt::format("sweep_{}.csv", ppm::to_string(arch).substr(2));
  write_file(path, ppm::sweep_csv(front));
  fmt::print("{} designs written to {}\n", front.entries.size(), path.string());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design evaluation and multiobjective optimization of planar parallel manipulators"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON run configuration (defaults when omitted)");
    sub->add_option("--out", opt.out, "output directory (overrides output_dir)");
  };
  auto optimizer = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "random seed (overrides moga.seed)");
    sub->add_option("--threads", opt.threads, "evaluation threads, 0 = all cores");
    sub->add_flag("--quiet", opt.quiet, "no per-generation log");
  };

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate one design and write evaluation.json");
  common(evaluate);
  evaluate->add_option("--design", opt.design, "d,R,r,L_b,r_j,r_p")->required();

  CLI::App* optimize = app.add_subcommand("optimize", "run the genetic algorithm and write the CSV exports");
  common(optimize);
  optimizer(optimize);

  CLI::App* sweep = app.add_subcommand("sweep", "design variables against R_w along one architecture's front");
  common(sweep);
  optimizer(sweep);
  sweep->add_option("--arch", opt.arch, "PRR, RPR or RRR");
  sweep->add_option("--archive", opt.archive, "pareto.csv or fronts_by_architecture.csv from an earlier run");

  CLI::App* defaults = app.add_subcommand("print-defaults", "print a complete configuration with default values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kOk : kConfigError;
  }

  try {
    if (*defaults) {
      std::cout << ppm::default_config_json();
      return kOk;
    }
    if (*evaluate) return cmd_evaluate(opt);
    if (*optimize) return cmd_optimize(opt);
    if (*sweep) return cmd_sweep(opt);
  } catch (const ppm::Error& e) {
    fmt::print(stderr, "error [{}]: {}\n", ppm::to_string(e.code()), e.what());
    return e.code() == ppm::ErrorCode::Config ? kConfigError : kFailure;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFailure;
  }
  return kFailure;
}
