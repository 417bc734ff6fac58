#ifndef MOPSOCA_RUN_RESULT_HPP
#define MOPSOCA_RUN_RESULT_HPP

#include "mopsoca/pso.hpp"
#include "mopsoca/types.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mopsoca {

struct RunResult {
  std::vector<SolutionD> final_front;
  std::size_t evaluations_used = 0;
  std::uint64_t seed = 0;
  /// Hypervolume of the archive after each iteration, when requested.
  std::vector<double> hv_trace;

  std::vector<VectorXd> objectives() const {
    std::vector<VectorXd> out;
    out.reserve(final_front.size());
    for (const auto& s : final_front) out.push_back(s.f);
    return out;
  }
};

/// Snapshot handed to an observer at every iteration boundary (iteration 0
/// is the initialized state).
struct IterationView {
  std::size_t iteration = 0;
  std::size_t evaluations = 0;
  std::span<const SolutionD> archive;
  std::span<const Particle<double>> particles;
  std::span<const SolutionD> population;
};

using IterationObserver = std::function<void(const IterationView&)>;

struct RunOptions {
  IterationObserver observer;
  /// When non-empty, the hypervolume of the archive w.r.t. this point is
  /// recorded after every iteration.
  VectorXd hv_trace_reference;
};

}  // namespace mopsoca

#endif  // MOPSOCA_RUN_RESULT_HPP
