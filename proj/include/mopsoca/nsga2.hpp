// NSGA-II with simulated binary crossover and polynomial mutation.

#ifndef MOPSOCA_NSGA2_HPP
#define MOPSOCA_NSGA2_HPP

#include "mopsoca/problems.hpp"
#include "mopsoca/random.hpp"
#include "mopsoca/run_result.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace mopsoca {

struct GaParams {
  std::size_t population = 200;
  std::size_t max_evaluations = 25000;
  double crossover_prob = 0.9;
  /// Per-gene probability; unset means 1/n.
  std::optional<double> mutation_prob;
  double sbx_eta = 20.0;
  double pm_eta = 20.0;

  void validate() const {
    require(population >= 2, "GaParams: population must be at least 2");
    require(max_evaluations >= 1, "GaParams: max_evaluations must be positive");
    require(crossover_prob >= 0.0 && crossover_prob <= 1.0,
            "GaParams: crossover probability outside [0,1]");
    require(!mutation_prob || (*mutation_prob >= 0.0 && *mutation_prob <= 1.0),
            "GaParams: mutation probability outside [0,1]");
  }
};

/// Bounded SBX. With probability 1 - crossover_prob the parents are
/// returned unchanged; offspring are always inside `bounds`.
std::pair<VectorXd, VectorXd> sbx_crossover(const VectorXd& p1, const VectorXd& p2,
                                            const Bounds<double>& bounds,
                                            const GaParams& params, Rng& rng);

/// Bounded polynomial mutation, applied gene by gene.
VectorXd polynomial_mutation(VectorXd x, const Bounds<double>& bounds, const GaParams& params,
                             Rng& rng);

/// Generational NSGA-II until max_evaluations (the last generation is cut
/// short to stay on budget). The result is the rank-0 front of the final
/// population.
RunResult run_nsga2(const Problem& problem, const GaParams& params, std::uint64_t seed,
                    const RunOptions& options = {});

}  // namespace mopsoca

#endif  // MOPSOCA_NSGA2_HPP
