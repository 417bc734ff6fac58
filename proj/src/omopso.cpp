#include "mopsoca/omopso.hpp"

#include "mopsoca/metrics.hpp"

namespace mopsoca {

RunResult run_omopso(const Problem& problem, const PsoParams& params, std::uint64_t seed,
                     const RunOptions& options) {
  params.validate();
  const Bounds<double>& bounds = problem.bounds();
  Rng rng(seed);
  RunResult result;
  result.seed = seed;

  BoundedArchive<double> archive(params.archive_capacity);
  std::vector<Particle<double>> swarm;
  swarm.reserve(params.population);
  for (std::size_t i = 0; i < params.population; ++i) {
    VectorXd x = random_point(bounds, rng);
    VectorXd f = problem.evaluate(x);
    ++result.evaluations_used;
    swarm.push_back(make_particle(std::move(x), std::move(f), 0));
  }
  for (const auto& p : swarm) archive.insert(p.position(0));

  auto notify = [&](std::size_t iteration) {
    if (options.hv_trace_reference.size() > 0) {
      const auto points = objectives_of(archive.members());
      result.hv_trace.push_back(hypervolume<double>(points, options.hv_trace_reference));
    }
    if (options.observer)
      options.observer({iteration, result.evaluations_used, archive.members(), swarm, {}});
  };
  notify(0);

  for (std::size_t it = 1; it <= params.iterations; ++it) {
    const auto iteration = static_cast<long>(it);
    const std::vector<SolutionD> leaders(archive.members().begin(), archive.members().end());
    const std::vector<double> crowding = archive.density();
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      const SolutionD& leader = select_leader<double>(leaders, crowding, rng);
      swarm[i] = pso_update(std::move(swarm[i]), leader, params, bounds, rng);
      if (params.mutation.enabled && i % 3 == 0)
        apply_turbulence(swarm[i], params.mutation, bounds, rng);
    }
    for (auto& p : swarm) {
      p.f = problem.evaluate(p.x);
      ++result.evaluations_used;
      update_pbest(p, iteration, rng);
    }
    for (const auto& p : swarm) archive.insert(p.position(iteration));
    notify(it);
  }

  result.final_front.assign(archive.members().begin(), archive.members().end());
  return result;
}

}  // namespace mopsoca
