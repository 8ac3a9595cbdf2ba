#include "ppm/moga.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

namespace ppm {

void MogaConfig::check() const {
  if (population < 2) throw Error(ErrorCode::Config, "population must be >= 2", "moga.population");
  if (generations < 1) throw Error(ErrorCode::Config, "generations must be >= 1", "moga.generations");
  auto prob = [](double p, const char* field) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::Config, "probability outside [0, 1]", field);
  };
  prob(p_directional_crossover, "moga.p_directional_crossover");
  prob(p_selection, "moga.p_selection");
  prob(p_mutation, "moga.p_mutation");
  prob(dna_mutation_ratio, "moga.dna_mutation_ratio");
  if (p_one_point_crossover() < -1e-12)
    throw Error(ErrorCode::Config, "operator probabilities sum to more than 1", "moga.p_directional_crossover");
  if (threads < 0) throw Error(ErrorCode::Config, "threads must be >= 0", "threads");
}

namespace {

constexpr double kInvalidDesignViolation = 100.0;
constexpr double kNoHomeViolation = 50.0;

double center_violation(const ConstraintReport& rep, const DesignVector& d, const PerformanceConfig& cfg) {
  double v = 0.0;
  if (!rep.g1_geometry) v += 1.0 + (0.5 * d.base_radius - d.link_length - d.platform_radius) / d.base_radius;
  if (!rep.ik_reachable) return v + 3.0;
  const double thr = cfg.dexterity.threshold;
  if (rep.inverse_condition < thr) v += (thr - rep.inverse_condition) / thr;
  if (!rep.stiffness_evaluated) return v + 1.0;
  auto shortfall = [](double k, double limit) { return k >= limit ? 0.0 : 1.0 - k / limit; };
  v += shortfall(rep.stiffness.k_xy_min, cfg.thresholds.k_xy);
  v += shortfall(rep.stiffness.k_z_min, cfg.thresholds.k_z);
  v += shortfall(rep.stiffness.k_phiz_min, cfg.thresholds.k_phiz);
  // Feasible center but radius below the search tolerance.
  return v > 0.0 ? v : 1e-3;
}

Evaluation evaluate_decoded(Evaluation e, const EvaluationContext& ctx) {
  std::optional<ValidatedDesign> vd;
  try {
    vd = validate(e.design, ctx.bounds);
  } catch (const Error&) {
    e.violation = kInvalidDesignViolation;
    return e;
  }
  e.mass = mass(*vd, ctx.performance.stiffness.material);

  double length = 0.0;
  try {
    length = characteristic_length(*vd, ctx.performance.dexterity, ctx.performance.mode, ctx.performance.home);
  } catch (const Error&) {
    e.violation = kNoHomeViolation;
    return e;
  }
  e.characteristic_length = length;

  const ConstraintEvaluator ev(*vd, ctx.performance, length);
  const double radius = max_regular_workspace(ev, ctx.workspace);
  e.feasible = radius > 0.0;
  e.workspace_radius = e.feasible ? radius : 0.0;
  if (!e.feasible) e.violation = center_violation(ev.evaluate(ctx.workspace.center), e.design, ctx.performance);

  const WorkspaceSpec beyond{ctx.workspace.center, ctx.workspace.rotation_range,
                             e.workspace_radius + ctx.workspace.tolerance};
  const FeasibilityResult limit = workspace_feasible(ev, beyond, ctx.workspace.grid);
  if (limit.first_failure) {
    e.limiting_pose = limit.first_failure;
    e.limiting_report = limit.failure_report;
  }
  return e;
}

// Deterministic, platform-independent draws.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

 private:
  std::mt19937_64 engine_;
};

struct Ranking {
  std::vector<int> rank;
  std::vector<double> crowding;
};

Ranking rank_population(const std::vector<Evaluation>& pop) {
  const std::size_t n = pop.size();
  Ranking out{std::vector<int>(n, std::numeric_limits<int>::max()), std::vector<double>(n, 0.0)};
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < n; ++i)
    if (pop[i].feasible) remaining.push_back(i);

  int level = 0;
  while (!remaining.empty()) {
    std::vector<std::size_t> front, rest;
    for (std::size_t i : remaining) {
      bool dominated = false;
      for (std::size_t j : remaining)
        if (j != i && dominates(pop[j], pop[i])) {
          dominated = true;
          break;
        }
      (dominated ? rest : front).push_back(i);
    }
    for (std::size_t i : front) out.rank[i] = level;

    // Crowding distance in normalized objective space.
    auto assign = [&](auto key) {
      std::vector<std::size_t> order = front;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
      const double span = key(order.back()) - key(order.front());
      out.crowding[order.front()] = std::numeric_limits<double>::infinity();
      out.crowding[order.back()] = std::numeric_limits<double>::infinity();
      if (span <= 0.0) return;
      for (std::size_t k = 1; k + 1 < order.size(); ++k)
        out.crowding[order[k]] += (key(order[k + 1]) - key(order[k - 1])) / span;
    };
    assign([&](std::size_t i) { return pop[i].mass; });
    assign([&](std::size_t i) { return pop[i].workspace_radius; });

    remaining = std::move(rest);
    ++level;
  }
  return out;
}

bool better(const std::vector<Evaluation>& pop, const Ranking& r, std::size_t a, std::size_t b) {
  if (pop[a].feasible != pop[b].feasible) return pop[a].feasible;
  if (!pop[a].feasible) return pop[a].violation < pop[b].violation;
  if (r.rank[a] != r.rank[b]) return r.rank[a] < r.rank[b];
  return r.crowding[a] > r.crowding[b];
}

std::size_t tournament(const std::vector<Evaluation>& pop, const Ranking& r, Random& rng) {
  const std::size_t a = rng.index(pop.size());
  const std::size_t b = rng.index(pop.size());
  return better(pop, r, b, a) ? b : a;
}

Architecture architecture_of(const Genome& g, const Bounds& bounds) { return decode(g, bounds).architecture; }

Genome directional_crossover(const std::vector<Evaluation>& pop, const Ranking& r, Random& rng,
                             const Bounds& bounds) {
  const std::size_t x = tournament(pop, r, rng);
  const std::size_t x1 = tournament(pop, r, rng);
  const std::size_t x2 = tournament(pop, r, rng);
  const auto ux = unit_coordinates(pop[x].genome);
  const auto u1 = unit_coordinates(pop[x1].genome);
  const auto u2 = unit_coordinates(pop[x2].genome);
  // Move away from worse references and towards better ones.
  const double s = (better(pop, r, x, x1) ? 1.0 : -1.0) * rng.uniform();
  const double t = (better(pop, r, x, x2) ? 1.0 : -1.0) * rng.uniform();
  std::array<double, kContinuousVariables> child{};
  for (int i = 0; i < kContinuousVariables; ++i)
    child[i] = std::clamp(ux[i] + s * (ux[i] - u1[i]) + t * (ux[i] - u2[i]), 0.0, 1.0);
  return from_unit_coordinates(architecture_of(pop[x].genome, bounds), child, bounds);
}

Genome one_point_crossover(const Genome& a, const Genome& b, Random& rng) {
  const int cut = 1 + static_cast<int>(rng.index(Genome::kBits - 1));
  Genome child = a;
  for (int i = cut; i < Genome::kBits; ++i) child.set_bit(i, b.bit(i));
  return child;
}

Genome dna_mutation(Genome g, double ratio, Random& rng) {
  for (int i = 0; i < Genome::kBits; ++i)
    if (rng.uniform() < ratio) g.flip(i);
  return g;
}

void evaluate_parallel(const std::vector<Genome>& genomes, const EvaluationContext& ctx, int threads,
                       std::vector<Evaluation>& out) {
  out.assign(genomes.size(), Evaluation{});
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, genomes.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < genomes.size(); ++i) out[i] = evaluate(genomes[i], ctx);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < genomes.size(); i = next++) out[i] = evaluate(genomes[i], ctx);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

Evaluation evaluate(const Genome& genome, const EvaluationContext& ctx) {
  Evaluation e;
  e.genome = genome;
  e.design = decode(genome, ctx.bounds);
  return evaluate_decoded(e, ctx);
}

Evaluation evaluate(const DesignVector& design, const EvaluationContext& ctx) {
  Evaluation e;
  e.genome = encode(design, ctx.bounds);
  e.design = design;
  return evaluate_decoded(e, ctx);
}

bool dominates(const Evaluation& q, const Evaluation& p) noexcept {
  const bool no_worse = q.mass <= p.mass && q.workspace_radius >= p.workspace_radius;
  const bool strictly = q.mass < p.mass || q.workspace_radius > p.workspace_radius;
  return no_worse && strictly;
}

ParetoArchive pareto_filter(const std::vector<Evaluation>& points) {
  // Sort by mass ascending, then R_w descending; a point survives iff its R_w
  // beats every lighter-or-equal point seen before it.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].feasible) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].mass != points[b].mass) return points[a].mass < points[b].mass;
    return points[a].workspace_radius > points[b].workspace_radius;
  });
  ParetoArchive out;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (points[i].workspace_radius > best) {
      out.entries.push_back(points[i]);
      best = points[i].workspace_radius;
    }
  }
  return out;
}

double hypervolume(const ParetoArchive& archive, double reference_mass) {
  double volume = 0.0;
  double previous = 0.0;
  for (const Evaluation& e : archive.entries) {  // R_w ascending, mass ascending
    if (e.mass >= reference_mass) break;
    if (e.workspace_radius > previous) {
      volume += (reference_mass - e.mass) * (e.workspace_radius - previous);
      previous = e.workspace_radius;
    }
  }
  return volume;
}

std::array<ParetoArchive, 3> per_architecture_fronts(const std::vector<Evaluation>& history) {
  std::array<std::vector<Evaluation>, 3> buckets;
  for (const Evaluation& e : history)
    if (e.feasible) buckets[code(e.design.architecture) - 1].push_back(e);
  std::array<ParetoArchive, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = pareto_filter(buckets[i]);
  return out;
}

MogaResult evolve(const MogaConfig& cfg, const EvaluationContext& ctx, const GenerationCallback& on_generation) {
  cfg.check();
  MogaResult result;
  Random rng(cfg.seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull);
  std::unordered_map<Genome, Evaluation, GenomeHash> cache;

  auto run_generation = [&](const std::vector<Genome>& genomes, int generation) {
    std::vector<Genome> fresh;
    for (const Genome& g : genomes)
      if (!cache.contains(g) && std::find(fresh.begin(), fresh.end(), g) == fresh.end()) fresh.push_back(g);
    std::vector<Evaluation> evaluated;
    evaluate_parallel(fresh, ctx, cfg.threads, evaluated);
    for (std::size_t i = 0; i < fresh.size(); ++i) cache.emplace(fresh[i], evaluated[i]);

    std::vector<Evaluation> out;
    out.reserve(genomes.size());
    for (const Genome& g : genomes) {
      Evaluation e = cache.at(g);
      e.generation = generation;
      out.push_back(e);
    }
    return out;
  };

  auto record = [&](const std::vector<Evaluation>& batch, int generation) {
    std::vector<Evaluation> merged = result.archive.entries;
    for (const Evaluation& e : batch) {
      result.evaluations.push_back(e);
      if (e.feasible) merged.push_back(e);
    }
    result.archive = pareto_filter(merged);
    GenerationRecord rec;
    rec.generation = generation;
    rec.hypervolume = hypervolume(result.archive);
    rec.n_feasible = static_cast<int>(std::count_if(batch.begin(), batch.end(), [](const Evaluation& e) {
      return e.feasible;
    }));
    rec.archive_size = static_cast<int>(result.archive.entries.size());
    result.generations.push_back(rec);
    if (on_generation) on_generation(rec, result.archive);
  };

  std::vector<Evaluation> population =
      run_generation(make_doe(cfg.doe, cfg.population, ctx.bounds, cfg.seed), 0);
  record(population, 0);

  const double c_dir = cfg.p_directional_crossover;
  const double c_sel = c_dir + cfg.p_selection;
  const double c_mut = c_sel + cfg.p_mutation;

  for (int gen = 1; gen < cfg.generations; ++gen) {
    const Ranking ranking = rank_population(population);
    std::vector<Genome> offspring;
    offspring.reserve(cfg.population);
    while (static_cast<int>(offspring.size()) < cfg.population) {
      const double u = rng.uniform();
      if (u < c_dir) {
        offspring.push_back(directional_crossover(population, ranking, rng, ctx.bounds));
      } else if (u < c_sel) {
        offspring.push_back(population[tournament(population, ranking, rng)].genome);
      } else if (u < c_mut) {
        offspring.push_back(
            dna_mutation(population[tournament(population, ranking, rng)].genome, cfg.dna_mutation_ratio, rng));
      } else {
        const Genome& a = population[tournament(population, ranking, rng)].genome;
        const Genome& b = population[tournament(population, ranking, rng)].genome;
        offspring.push_back(one_point_crossover(a, b, rng));
      }
    }
    const std::vector<Evaluation> children = run_generation(offspring, gen);
    record(children, gen);

    // Elitist replacement over parents and offspring, unique genomes first.
    std::vector<Evaluation> combined;
    std::vector<Evaluation> duplicates;
    for (const std::vector<Evaluation>* batch : {static_cast<const std::vector<Evaluation>*>(&population), &children})
      for (const Evaluation& e : *batch) {
        const bool seen = std::any_of(combined.begin(), combined.end(),
                                      [&](const Evaluation& c) { return c.genome == e.genome; });
        (seen ? duplicates : combined).push_back(e);
      }
    const Ranking r = rank_population(combined);
    std::vector<std::size_t> order(combined.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(combined, r, a, b); });
    std::vector<Evaluation> next;
    for (std::size_t i = 0; i < order.size() && static_cast<int>(next.size()) < cfg.population; ++i)
      next.push_back(combined[order[i]]);
    for (std::size_t i = 0; i < duplicates.size() && static_cast<int>(next.size()) < cfg.population; ++i)
      next.push_back(duplicates[i]);
    population = std::move(next);
  }
  return result;
}

}  // namespace ppm
