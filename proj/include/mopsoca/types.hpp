// Dense value types shared by every optimizer.
//
// Objective vectors are stored in canonical minimization form: a
// maximization objective is negated before it reaches any of this code.

#ifndef MOPSOCA_TYPES_HPP
#define MOPSOCA_TYPES_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mopsoca {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VectorXd = Vector<double>;

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

/// Per-dimension box constraints lower_i <= x_i <= upper_i.
template <typename Scalar>
struct Bounds {
  Vector<Scalar> lower;
  Vector<Scalar> upper;

  Eigen::Index size() const { return lower.size(); }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    return x.size() == lower.size() && (x.array() >= lower.array()).all() &&
           (x.array() <= upper.array()).all();
  }
};

/// A decision vector together with its objective vector.
template <typename Scalar>
struct Solution {
  Vector<Scalar> x;
  Vector<Scalar> f;
  // Iteration at which the solution was evaluated; -1 for external points.
  long iteration = -1;
};

using SolutionD = Solution<double>;

}  // namespace mopsoca

#endif  // MOPSOCA_TYPES_HPP
