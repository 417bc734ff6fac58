// MOPSO with cooperative agents.
//
// The swarm is split by Pareto rank into sub-populations, one per agent.
// Each agent keeps a local archive and flies its particles toward three
// attractors: the personal best, a local leader from its own archive, and
// a global leader elected every iteration by a multilateral negotiation in
// which every agent proposes one solution and votes on the others.
//
// Agents run independently between two barriers (negotiation and
// re-ranking). Each agent draws from a private stream seeded by
// child_seed(run_seed, agent_id, iteration), and the global archive is
// merged in agent order at the barrier, so a run is bit-identical for any
// number of worker threads.

#ifndef MOPSOCA_MOPSO_CA_HPP
#define MOPSOCA_MOPSO_CA_HPP

#include "mopsoca/archive.hpp"
#include "mopsoca/problems.hpp"
#include "mopsoca/pso.hpp"
#include "mopsoca/run_result.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace mopsoca {

struct CaParams : PsoParams {
  CoefficientRange c3{1.5, 2.0};
  std::size_t max_agents = 8;
  /// Iterations between two re-subdivisions of the pooled swarm.
  std::size_t rerank_period = 1;
  std::size_t local_archive_capacity = 100;
  /// When set, re-subdivision merges the new members into each agent's
  /// existing local archive instead of starting it afresh.
  bool persistent_local_archives = true;

  CaParams() { mutation.enabled = false; }

  void validate() const {
    PsoParams::validate();
    require(c3.valid(), "CaParams: empty c3 range");
    require(max_agents >= 1, "CaParams: max_agents must be at least 1");
    require(rerank_period >= 1, "CaParams: rerank_period must be at least 1");
    require(local_archive_capacity >= 1, "CaParams: local archive capacity must be positive");
  }
};

struct SubPopulation {
  std::size_t agent_id = 0;
  std::vector<Particle<double>> particles;
  BoundedArchive<double> local_archive{1};
};

struct Offer {
  std::size_t agent_id = 0;
  SolutionD solution;
};

enum class Vote { Accept, Reject };

struct NegotiationOutcome {
  SolutionD accepted;
  /// Index into the offer sequence of the elected proposal.
  std::size_t winner = 0;
  /// True when the winner was accepted by every agent.
  bool unanimous = false;
  /// votes[offer][agent]; an agent always accepts its own offer.
  std::vector<std::vector<Vote>> votes;
};

/// Splits particles into sub-populations by Pareto rank of their current
/// objectives. Fronts at rank >= max_agents - 1 are merged into the last
/// sub-population. Each local archive is seeded with its own members.
std::vector<SubPopulation> subdivide(std::vector<Particle<double>> particles,
                                     std::size_t max_agents, std::size_t local_capacity,
                                     long iteration = 0);

/// Same split for plain solutions; particles start at rest with pbest = x.
std::vector<SubPopulation> subdivide(std::span<const SolutionD> population,
                                     std::size_t max_agents, std::size_t local_capacity);

/// The least crowded local-archive member (ties: lexicographically smallest
/// objectives). An agent with an empty archive offers its least crowded
/// non-dominated particle instead.
Offer make_offer(const SubPopulation& agent);

/// Rejects an offer iff some local-archive member strictly dominates it.
Vote evaluate_offer(const SubPopulation& agent, const Offer& offer);

/// Every agent votes on every other agent's offer. Among unanimously
/// accepted offers the one with maximum crowding distance over the offer
/// set wins; without a unanimous offer the non-dominated offers compete by
/// the same rule. Ties go to the lexicographically smallest objectives.
NegotiationOutcome negotiate(std::span<const Offer> offers,
                             std::span<const SubPopulation> agents);

/// Coefficients of a three-attractor update: the two-attractor draw
/// (w, c1, r1, c2, r2) followed by c3, r3.
struct CaCoefficients {
  PsoCoefficients base;
  double c3 = 0.0;
  double r3 = 0.0;
};

inline CaCoefficients draw_ca_coefficients(const CaParams& params, Rng& rng) {
  CaCoefficients k;
  k.base = draw_pso_coefficients(params.w, params.c1, params.c2, rng);
  k.c3 = params.c3.draw(rng);
  k.r3 = rng.uniform();
  return k;
}

/// v <- w v + c1 r1 (pbest - x) + c2 r2 (lbest - x) + c3 r3 (gbest - x),
/// x <- x + v, followed by the same clamping and repair as pso_update.
template <typename Scalar>
Particle<Scalar> ca_update(Particle<Scalar> p, const Solution<Scalar>& lbest,
                           const Solution<Scalar>& gbest, const CaParams& params,
                           const Bounds<Scalar>& bounds, Rng& rng) {
  const CaCoefficients k = draw_ca_coefficients(params, rng);
  const auto a = static_cast<Scalar>(k.base.c1 * k.base.r1);
  const auto b = static_cast<Scalar>(k.base.c2 * k.base.r2);
  const auto c = static_cast<Scalar>(k.c3 * k.r3);
  Vector<Scalar> velocity = static_cast<Scalar>(k.base.w) * p.v + a * (p.pbest.x - p.x) +
                            b * (lbest.x - p.x) + c * (gbest.x - p.x);
  fly(p, std::move(velocity), bounds);
  return p;
}

struct CaIterationView {
  std::size_t iteration = 0;
  std::span<const SubPopulation> agents;
  const BoundedArchive<double>* global_archive = nullptr;
  /// Null at iteration 0, before the first negotiation.
  const NegotiationOutcome* negotiation = nullptr;
  std::span<const Offer> offers;
};

struct CaRunOptions : RunOptions {
  /// Worker threads used for the agent phase.
  std::size_t threads = 1;
  /// When set, one line per agent and iteration:
  /// iter,agent,offer_objectives,votes,accepted
  std::ostream* negotiation_trace = nullptr;
  std::function<void(const CaIterationView&)> agent_observer;
};

RunResult run_mopso_ca(const Problem& problem, const CaParams& params, std::uint64_t seed,
                       const CaRunOptions& options = {});

}  // namespace mopsoca

#endif  // MOPSOCA_MOPSO_CA_HPP
