#include "mopsoca/mopso_ca.hpp"

#include "mopsoca/dominance.hpp"
#include "mopsoca/front_io.hpp"
#include "mopsoca/metrics.hpp"

#include <exception>
#include <ostream>
#include <thread>

namespace mopsoca {

namespace {

// Index of the maximum-crowding candidate; ties go to the lexicographically
// smallest objective vector. `candidates` indexes into `points`.
std::size_t least_crowded(std::span<const VectorXd> points, std::span<const double> crowding,
                          std::span<const std::size_t> candidates) {
  std::size_t best = candidates.front();
  for (std::size_t c : candidates.subspan(1)) {
    if (crowding[c] > crowding[best] ||
        (crowding[c] == crowding[best] && lexicographic_less(points[c], points[best])))
      best = c;
  }
  return best;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

struct AgentStep {
  std::vector<SolutionD> candidates;
  std::size_t evaluations = 0;
  std::exception_ptr error;
};

void step_agent(SubPopulation& agent, const SolutionD& gbest, const Problem& problem,
                const CaParams& params, std::uint64_t seed, std::size_t iteration,
                AgentStep& out) {
  const Bounds<double>& bounds = problem.bounds();
  const auto tag = static_cast<long>(iteration);
  Rng rng(child_seed(seed, agent.agent_id, iteration));

  const std::vector<SolutionD> leaders(agent.local_archive.members().begin(),
                                       agent.local_archive.members().end());
  const std::vector<double> crowding = agent.local_archive.density();
  for (std::size_t i = 0; i < agent.particles.size(); ++i) {
    auto& p = agent.particles[i];
    const SolutionD& lbest = select_leader<double>(leaders, crowding, rng);
    p = ca_update(std::move(p), lbest, gbest, params, bounds, rng);
    if (params.mutation.enabled && i % 3 == 0)
      apply_turbulence(p, params.mutation, bounds, rng);
  }
  for (auto& p : agent.particles) {
    p.f = problem.evaluate(p.x);
    ++out.evaluations;
    update_pbest(p, tag, rng);
  }
  out.candidates.reserve(agent.particles.size());
  for (const auto& p : agent.particles) {
    out.candidates.push_back(p.position(tag));
    agent.local_archive.insert(out.candidates.back());
  }
}

void write_trace(std::ostream& out, std::size_t iteration, std::span<const Offer> offers,
                 const NegotiationOutcome& outcome) {
  for (std::size_t o = 0; o < offers.size(); ++o) {
    out << iteration << ',' << offers[o].agent_id << ',' << join_values(offers[o].solution.f)
        << ',';
    for (Vote v : outcome.votes[o]) out << (v == Vote::Accept ? 'A' : 'R');
    out << ',' << (o == outcome.winner ? 1 : 0) << '\n';
  }
}

}  // namespace

std::vector<SubPopulation> subdivide(std::vector<Particle<double>> particles,
                                     std::size_t max_agents, std::size_t local_capacity,
                                     long iteration) {
  require(!particles.empty(), "subdivide: empty population");
  require(max_agents >= 1, "subdivide: max_agents must be at least 1");
  std::vector<VectorXd> objectives;
  objectives.reserve(particles.size());
  for (const auto& p : particles) objectives.push_back(p.f);
  const auto fronts = pareto_rank_indices<double>(objectives);

  const std::size_t count = std::min(fronts.size(), max_agents);
  std::vector<SubPopulation> agents(count);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    SubPopulation& agent = agents[std::min(r, count - 1)];
    for (std::size_t i : fronts[r]) agent.particles.push_back(std::move(particles[i]));
  }
  for (std::size_t a = 0; a < count; ++a) {
    agents[a].agent_id = a;
    agents[a].local_archive = BoundedArchive<double>(local_capacity);
    for (const auto& p : agents[a].particles) agents[a].local_archive.insert(p.position(iteration));
  }
  return agents;
}

std::vector<SubPopulation> subdivide(std::span<const SolutionD> population,
                                     std::size_t max_agents, std::size_t local_capacity) {
  std::vector<Particle<double>> particles;
  particles.reserve(population.size());
  for (const auto& s : population) particles.push_back(make_particle(s.x, s.f, s.iteration));
  const long tag = population.empty() ? 0 : population.front().iteration;
  return subdivide(std::move(particles), max_agents, local_capacity, tag);
}

Offer make_offer(const SubPopulation& agent) {
  std::vector<SolutionD> pool;
  if (!agent.local_archive.empty()) {
    pool.assign(agent.local_archive.members().begin(), agent.local_archive.members().end());
  } else {
    require(!agent.particles.empty(), "make_offer: agent has neither archive nor particles");
    std::vector<VectorXd> positions;
    for (const auto& p : agent.particles) positions.push_back(p.f);
    for (std::size_t i : non_dominated_indices<double>(positions))
      pool.push_back(agent.particles[i].position());
  }
  const auto points = objectives_of(std::span<const SolutionD>(pool));
  const auto crowding = crowding_distance<double>(points);
  const auto candidates = all_indices(pool.size());
  return Offer{agent.agent_id, pool[least_crowded(points, crowding, candidates)]};
}

Vote evaluate_offer(const SubPopulation& agent, const Offer& offer) {
  for (const auto& member : agent.local_archive.members())
    if (strictly_dominates(member.f, offer.solution.f)) return Vote::Reject;
  return Vote::Accept;
}

NegotiationOutcome negotiate(std::span<const Offer> offers,
                             std::span<const SubPopulation> agents) {
  require(!offers.empty(), "negotiate: no offers");
  require(offers.size() == agents.size(), "negotiate: need one offer per agent");

  NegotiationOutcome outcome;
  outcome.votes.assign(offers.size(), std::vector<Vote>(agents.size(), Vote::Accept));
  std::vector<VectorXd> points;
  points.reserve(offers.size());
  for (const auto& o : offers) points.push_back(o.solution.f);
  const auto non_dominated = non_dominated_indices<double>(points);

  std::vector<std::size_t> unanimous;
  for (std::size_t o = 0; o < offers.size(); ++o) {
    bool accepted_by_all = true;
    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (agents[a].agent_id == offers[o].agent_id) continue;
      outcome.votes[o][a] = evaluate_offer(agents[a], offers[o]);
      accepted_by_all = accepted_by_all && outcome.votes[o][a] == Vote::Accept;
    }
    // A unanimous offer is already non-dominated among offers whenever every
    // offer comes from its owner's archive; the filter covers fallback offers.
    const bool in_front =
        std::binary_search(non_dominated.begin(), non_dominated.end(), o);
    if (accepted_by_all && in_front) unanimous.push_back(o);
  }

  const auto crowding = crowding_distance<double>(points);
  outcome.unanimous = !unanimous.empty();
  outcome.winner = least_crowded(points, crowding, outcome.unanimous ? unanimous : non_dominated);
  outcome.accepted = offers[outcome.winner].solution;
  return outcome;
}

RunResult run_mopso_ca(const Problem& problem, const CaParams& params, std::uint64_t seed,
                       const CaRunOptions& options) {
  params.validate();
  const Bounds<double>& bounds = problem.bounds();
  RunResult result;
  result.seed = seed;

  BoundedArchive<double> global(params.archive_capacity);
  std::vector<SubPopulation> agents;
  {
    Rng rng(seed);
    std::vector<Particle<double>> swarm;
    swarm.reserve(params.population);
    for (std::size_t i = 0; i < params.population; ++i) {
      VectorXd x = random_point(bounds, rng);
      VectorXd f = problem.evaluate(x);
      ++result.evaluations_used;
      swarm.push_back(make_particle(std::move(x), std::move(f), 0));
    }
    for (const auto& p : swarm) global.insert(p.position(0));
    agents = subdivide(std::move(swarm), params.max_agents, params.local_archive_capacity, 0);
  }

  std::vector<Offer> offers;
  NegotiationOutcome outcome;
  auto notify = [&](std::size_t iteration) {
    if (options.hv_trace_reference.size() > 0) {
      const auto points = objectives_of(global.members());
      result.hv_trace.push_back(hypervolume<double>(points, options.hv_trace_reference));
    }
    if (options.observer) {
      std::vector<Particle<double>> flat;
      for (const auto& a : agents) flat.insert(flat.end(), a.particles.begin(), a.particles.end());
      options.observer({iteration, result.evaluations_used, global.members(), flat, {}});
    }
    if (options.agent_observer) {
      options.agent_observer(
          {iteration, agents, &global, iteration == 0 ? nullptr : &outcome, offers});
    }
  };
  notify(0);

  const std::size_t threads = std::max<std::size_t>(1, options.threads);
  for (std::size_t it = 1; it <= params.iterations; ++it) {
    offers.clear();
    for (const auto& a : agents) offers.push_back(make_offer(a));
    outcome = negotiate(offers, agents);
    if (options.negotiation_trace) write_trace(*options.negotiation_trace, it, offers, outcome);
    const SolutionD gbest = outcome.accepted;

    std::vector<AgentStep> steps(agents.size());
    auto work = [&](std::size_t first, std::size_t stride) {
      for (std::size_t a = first; a < agents.size(); a += stride) {
        try {
          step_agent(agents[a], gbest, problem, params, seed, it, steps[a]);
        } catch (...) {
          steps[a].error = std::current_exception();
        }
      }
    };
    const std::size_t workers = std::min(threads, agents.size());
    if (workers <= 1) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }

    for (auto& step : steps) {
      if (step.error) std::rethrow_exception(step.error);
      result.evaluations_used += step.evaluations;
      for (const auto& c : step.candidates) global.insert(c);
    }

    if (it % params.rerank_period == 0) {
      std::vector<Particle<double>> pooled;
      pooled.reserve(params.population);
      for (auto& a : agents)
        for (auto& p : a.particles) pooled.push_back(std::move(p));
      auto fresh = subdivide(std::move(pooled), params.max_agents, params.local_archive_capacity,
                         static_cast<long>(it));
      // Agent k keeps what it learned while it managed rank k; the new
      // members are merged into its existing archive.
      if (params.persistent_local_archives) {
        for (std::size_t a = 0; a < fresh.size() && a < agents.size(); ++a) {
          BoundedArchive<double> kept = std::move(agents[a].local_archive);
          for (const auto& m : fresh[a].local_archive.members()) kept.insert(m);
          fresh[a].local_archive = std::move(kept);
        }
      }
      agents = std::move(fresh);
    }
    notify(it);
  }

  result.final_front.assign(global.members().begin(), global.members().end());
  return result;
}

}  // namespace mopsoca
