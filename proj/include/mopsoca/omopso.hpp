// Single-swarm MOPSO with a crowding-truncated external archive, in the
// style of OMOPSO (no epsilon dominance).

#ifndef MOPSOCA_OMOPSO_HPP
#define MOPSOCA_OMOPSO_HPP

#include "mopsoca/problems.hpp"
#include "mopsoca/pso.hpp"
#include "mopsoca/run_result.hpp"

#include <cstdint>

namespace mopsoca {

/// Runs population * (iterations + 1) evaluations. Leaders are drawn from
/// the archive by binary tournament on crowding; turbulence, when enabled,
/// is applied to every third particle.
RunResult run_omopso(const Problem& problem, const PsoParams& params, std::uint64_t seed,
                     const RunOptions& options = {});

}  // namespace mopsoca

#endif  // MOPSOCA_OMOPSO_HPP
