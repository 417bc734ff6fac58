// Box-constrained benchmark problems: UF1, UF2, UF3, UF10 (CEC 2009) and
// DTLZ5, DTLZ6.

#ifndef MOPSOCA_PROBLEMS_HPP
#define MOPSOCA_PROBLEMS_HPP

#include "mopsoca/types.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mopsoca {

enum class ProblemId { UF1, UF2, UF3, UF10, DTLZ5, DTLZ6 };

inline constexpr std::array<ProblemId, 6> kAllProblems = {
    ProblemId::UF1, ProblemId::UF2, ProblemId::UF3,
    ProblemId::UF10, ProblemId::DTLZ5, ProblemId::DTLZ6};

std::string_view to_string(ProblemId id);
/// Accepts the canonical names ("UF1", "DTLZ5", ...), case-insensitive.
ProblemId parse_problem_id(std::string_view name);

class Problem {
 public:
  /// dimension = 0 picks the standard size: 30 for UF, objectives + 9 for DTLZ.
  explicit Problem(ProblemId id, std::size_t dimension = 0);

  ProblemId id() const { return id_; }
  std::string_view name() const { return to_string(id_); }
  std::size_t dimension() const { return static_cast<std::size_t>(bounds_.size()); }
  std::size_t objectives() const { return objectives_; }
  const Bounds<double>& bounds() const { return bounds_; }

  /// Throws ContractViolation for a wrong-length or out-of-bounds x.
  VectorXd evaluate(const VectorXd& x) const;

  /// Points on the analytic Pareto front. Two-objective and curve-shaped
  /// fronts return exactly m points; the UF10 sphere octant returns the
  /// largest even simplex lattice with at most m points.
  std::vector<VectorXd> true_front_sample(std::size_t m) const;

  /// Sample size used for reporting: 1000 for two objectives, 2500 for three.
  std::size_t default_front_sample_size() const { return objectives_ == 2 ? 1000 : 2500; }

 private:
  ProblemId id_;
  std::size_t objectives_;
  Bounds<double> bounds_;
};

/// Distance from a point to the DTLZ5/DTLZ6 Pareto curve
/// {(cos t / sqrt 2, cos t / sqrt 2, sin t) : t in [0, pi/2]}.
double distance_to_dtlz5_curve(const VectorXd& f);

}  // namespace mopsoca

#endif  // MOPSOCA_PROBLEMS_HPP
