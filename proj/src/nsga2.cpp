#include "mopsoca/nsga2.hpp"

#include "mopsoca/archive.hpp"
#include "mopsoca/dominance.hpp"
#include "mopsoca/metrics.hpp"
#include "mopsoca/pso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mopsoca {

namespace {

constexpr double kEps = 1.0e-14;

struct Ranked {
  std::vector<SolutionD> members;
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

// Keeps the best `size` members of `pool` by (rank, crowding).
Ranked environmental_selection(std::vector<SolutionD> pool, std::size_t size) {
  const auto objectives = objectives_of(std::span<const SolutionD>(pool));
  const auto fronts = pareto_rank_indices<double>(objectives);
  Ranked next;
  for (std::size_t r = 0; r < fronts.size() && next.members.size() < size; ++r) {
    std::vector<VectorXd> front_points;
    for (std::size_t i : fronts[r]) front_points.push_back(objectives[i]);
    const auto crowding = crowding_distance<double>(front_points);

    std::vector<std::size_t> order(fronts[r].size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (next.members.size() + order.size() > size) {
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return crowding[a] > crowding[b]; });
      order.resize(size - next.members.size());
    }
    for (std::size_t o : order) {
      next.members.push_back(std::move(pool[fronts[r][o]]));
      next.rank.push_back(r);
      next.crowding.push_back(crowding[o]);
    }
  }
  return next;
}

std::size_t tournament(const Ranked& pop, Rng& rng) {
  const std::size_t a = rng.index(pop.members.size());
  const std::size_t b = rng.index(pop.members.size());
  if (pop.rank[a] != pop.rank[b]) return pop.rank[a] < pop.rank[b] ? a : b;
  return pop.crowding[b] > pop.crowding[a] ? b : a;
}

double sbx_beta_q(double rand, double beta, double eta) {
  const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
  if (rand <= 1.0 / alpha) return std::pow(rand * alpha, 1.0 / (eta + 1.0));
  return std::pow(1.0 / (2.0 - rand * alpha), 1.0 / (eta + 1.0));
}

}  // namespace

std::pair<VectorXd, VectorXd> sbx_crossover(const VectorXd& p1, const VectorXd& p2,
                                            const Bounds<double>& bounds,
                                            const GaParams& params, Rng& rng) {
  VectorXd c1 = p1;
  VectorXd c2 = p2;
  if (!rng.bernoulli(params.crossover_prob)) return {c1, c2};

  for (Eigen::Index i = 0; i < p1.size(); ++i) {
    if (!rng.bernoulli(0.5)) continue;
    if (std::abs(p1(i) - p2(i)) <= kEps) continue;
    const double y1 = std::min(p1(i), p2(i));
    const double y2 = std::max(p1(i), p2(i));
    const double lo = bounds.lower(i);
    const double hi = bounds.upper(i);
    const double rand = rng.uniform();

    double betaq = sbx_beta_q(rand, 1.0 + 2.0 * (y1 - lo) / (y2 - y1), params.sbx_eta);
    double child1 = 0.5 * ((y1 + y2) - betaq * (y2 - y1));
    betaq = sbx_beta_q(rand, 1.0 + 2.0 * (hi - y2) / (y2 - y1), params.sbx_eta);
    double child2 = 0.5 * ((y1 + y2) + betaq * (y2 - y1));
    child1 = std::clamp(child1, lo, hi);
    child2 = std::clamp(child2, lo, hi);
    if (rng.bernoulli(0.5)) std::swap(child1, child2);
    c1(i) = child1;
    c2(i) = child2;
  }
  return {c1, c2};
}

VectorXd polynomial_mutation(VectorXd x, const Bounds<double>& bounds, const GaParams& params,
                             Rng& rng) {
  const double probability =
      params.mutation_prob.value_or(1.0 / static_cast<double>(x.size()));
  const double power = 1.0 / (params.pm_eta + 1.0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!rng.bernoulli(probability)) continue;
    const double lo = bounds.lower(i);
    const double hi = bounds.upper(i);
    const double delta1 = (x(i) - lo) / (hi - lo);
    const double delta2 = (hi - x(i)) / (hi - lo);
    const double rnd = rng.uniform();
    double deltaq = 0.0;
    if (rnd <= 0.5) {
      const double val =
          2.0 * rnd + (1.0 - 2.0 * rnd) * std::pow(1.0 - delta1, params.pm_eta + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - rnd) +
                         2.0 * (rnd - 0.5) * std::pow(1.0 - delta2, params.pm_eta + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    x(i) = std::clamp(x(i) + deltaq * (hi - lo), lo, hi);
  }
  return x;
}

RunResult run_nsga2(const Problem& problem, const GaParams& params, std::uint64_t seed,
                    const RunOptions& options) {
  params.validate();
  const Bounds<double>& bounds = problem.bounds();
  Rng rng(seed);
  RunResult result;
  result.seed = seed;

  auto evaluate = [&](VectorXd x, long generation) {
    VectorXd f = problem.evaluate(x);
    ++result.evaluations_used;
    return SolutionD{std::move(x), std::move(f), generation};
  };

  std::vector<SolutionD> initial;
  const std::size_t initial_size = std::min(params.population, params.max_evaluations);
  for (std::size_t i = 0; i < initial_size; ++i) initial.push_back(evaluate(random_point(bounds, rng), 0));
  Ranked pop = environmental_selection(std::move(initial), params.population);

  auto notify = [&](std::size_t generation) {
    if (options.hv_trace_reference.size() > 0) {
      const auto points = objectives_of(std::span<const SolutionD>(pop.members));
      result.hv_trace.push_back(hypervolume<double>(points, options.hv_trace_reference));
    }
    if (options.observer)
      options.observer({generation, result.evaluations_used, {}, {}, pop.members});
  };
  notify(0);

  for (std::size_t gen = 1; result.evaluations_used < params.max_evaluations; ++gen) {
    const std::size_t offspring_count =
        std::min(params.population, params.max_evaluations - result.evaluations_used);
    std::vector<SolutionD> pool = pop.members;
    while (pool.size() < pop.members.size() + offspring_count) {
      const SolutionD& a = pop.members[tournament(pop, rng)];
      const SolutionD& b = pop.members[tournament(pop, rng)];
      auto [x1, x2] = sbx_crossover(a.x, b.x, bounds, params, rng);
      pool.push_back(evaluate(polynomial_mutation(std::move(x1), bounds, params, rng),
                              static_cast<long>(gen)));
      if (pool.size() < pop.members.size() + offspring_count)
        pool.push_back(evaluate(polynomial_mutation(std::move(x2), bounds, params, rng),
                                static_cast<long>(gen)));
    }
    pop = environmental_selection(std::move(pool), params.population);
    notify(gen);
  }

  BoundedArchive<double> first_front(pop.members.size());
  for (std::size_t i = 0; i < pop.members.size(); ++i)
    if (pop.rank[i] == 0) first_front.insert(pop.members[i]);
  result.final_front.assign(first_front.members().begin(), first_front.members().end());
  return result;
}

}  // namespace mopsoca
