// Pareto dominance, non-dominated sorting and crowding distance.

#ifndef MOPSOCA_DOMINANCE_HPP
#define MOPSOCA_DOMINANCE_HPP

#include "mopsoca/types.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace mopsoca {

enum class Dominance { FirstDominates, SecondDominates, NonDominated, Equal };

template <typename DerivedA, typename DerivedB>
Dominance dominates(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  require(a.size() == b.size(), "dominates: objective vectors differ in length");
  bool a_better = false;
  bool b_better = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) a_better = true;
    else if (b(i) < a(i)) b_better = true;
    if (a_better && b_better) return Dominance::NonDominated;
  }
  if (a_better) return Dominance::FirstDominates;
  if (b_better) return Dominance::SecondDominates;
  return Dominance::Equal;
}

template <typename DerivedA, typename DerivedB>
bool strictly_dominates(const Eigen::MatrixBase<DerivedA>& a,
                        const Eigen::MatrixBase<DerivedB>& b) {
  return dominates(a, b) == Dominance::FirstDominates;
}

/// Lexicographic "less than" on objective vectors, used for deterministic tie-breaking.
template <typename Scalar>
bool lexicographic_less(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

template <typename Scalar>
std::vector<Vector<Scalar>> objectives_of(std::span<const Solution<Scalar>> solutions) {
  std::vector<Vector<Scalar>> out;
  out.reserve(solutions.size());
  for (const auto& s : solutions) out.push_back(s.f);
  return out;
}

/// Fast non-dominated sorting. Returns fronts of indices into `points`,
/// rank 0 first; indices inside a front are ascending.
template <typename Scalar>
std::vector<std::vector<std::size_t>> pareto_rank_indices(
    std::span<const Vector<Scalar>> points) {
  require(!points.empty(), "pareto_rank: empty population");
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts(1);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      switch (dominates(points[i], points[j])) {
        case Dominance::FirstDominates:
          dominated_by[i].push_back(j);
          ++domination_count[j];
          break;
        case Dominance::SecondDominates:
          dominated_by[j].push_back(i);
          ++domination_count[i];
          break;
        default:
          break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (domination_count[i] == 0) fronts[0].push_back(i);

  while (true) {
    std::vector<std::size_t> next;
    for (std::size_t i : fronts.back()) {
      for (std::size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  return fronts;
}

/// Indices of the non-dominated members of `points` (ascending).
template <typename Scalar>
std::vector<std::size_t> non_dominated_indices(std::span<const Vector<Scalar>> points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      dominated = j != i && strictly_dominates(points[j], points[i]);
    if (!dominated) out.push_back(i);
  }
  return out;
}

template <typename Scalar>
struct Front {
  std::size_t rank = 0;
  std::vector<Solution<Scalar>> members;
};

template <typename Scalar>
std::vector<Front<Scalar>> pareto_rank(std::span<const Solution<Scalar>> population) {
  const auto objectives = objectives_of(population);
  const auto ranked = pareto_rank_indices<Scalar>(objectives);
  std::vector<Front<Scalar>> fronts;
  fronts.reserve(ranked.size());
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    Front<Scalar> front{r, {}};
    front.members.reserve(ranked[r].size());
    for (std::size_t i : ranked[r]) front.members.push_back(population[i]);
    fronts.push_back(std::move(front));
  }
  return fronts;
}

/// NSGA-II crowding distance. Per-objective boundary members get +infinity;
/// an objective with zero range contributes nothing to any member.
template <typename Scalar>
std::vector<Scalar> crowding_distance(std::span<const Vector<Scalar>> front) {
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  const std::size_t n = front.size();
  if (n <= 2) return std::vector<Scalar>(n, inf);

  std::vector<Scalar> distance(n, Scalar(0));
  std::vector<std::size_t> order(n);
  const Eigen::Index k = front[0].size();
  for (Eigen::Index m = 0; m < k; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a](m) < front[b](m);
    });
    const Scalar lo = front[order.front()](m);
    const Scalar hi = front[order.back()](m);
    const Scalar range = hi - lo;
    if (!(range > Scalar(0))) continue;
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      distance[order[i]] += (front[order[i + 1]](m) - front[order[i - 1]](m)) / range;
    }
  }
  return distance;
}

template <typename Scalar>
std::vector<Scalar> crowding_distance(std::span<const Solution<Scalar>> front) {
  const auto objectives = objectives_of(front);
  return crowding_distance<Scalar>(objectives);
}

}  // namespace mopsoca

#endif  // MOPSOCA_DOMINANCE_HPP
