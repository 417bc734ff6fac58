// Quality indicators: inverted generational distance, hypervolume, spread.
//
// All three take point sets by value semantics and are invariant under
// permutation of their inputs.

#ifndef MOPSOCA_METRICS_HPP
#define MOPSOCA_METRICS_HPP

#include "mopsoca/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace mopsoca {

namespace detail {

template <typename Scalar>
Scalar nearest_distance(const Vector<Scalar>& p, std::span<const Vector<Scalar>> set) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (const auto& q : set) best = std::min(best, (p - q).norm());
  return best;
}

template <typename Scalar>
Scalar hypervolume_2d(std::vector<Vector<Scalar>> points, const Vector<Scalar>& ref) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  Scalar volume(0);
  Scalar ceiling = ref(1);
  for (const auto& p : points) {
    if (p(1) < ceiling) {
      volume += (ref(0) - p(0)) * (ceiling - p(1));
      ceiling = p(1);
    }
  }
  return volume;
}

// Slices along the last objective and recurses on the projected prefix.
template <typename Scalar>
Scalar hypervolume_slicing(std::vector<Vector<Scalar>> points, const Vector<Scalar>& ref) {
  const Eigen::Index k = ref.size();
  if (points.empty()) return Scalar(0);
  if (k == 1) {
    Scalar lo = ref(0);
    for (const auto& p : points) lo = std::min(lo, p(0));
    return ref(0) - lo;
  }
  if (k == 2) return hypervolume_2d(std::move(points), ref);

  const Eigen::Index last = k - 1;
  std::sort(points.begin(), points.end(),
            [last](const auto& a, const auto& b) { return a(last) < b(last); });
  const Vector<Scalar> sub_ref = ref.head(last);
  std::vector<Vector<Scalar>> slab;
  slab.reserve(points.size());
  Scalar volume(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    slab.push_back(points[i].head(last));
    const Scalar top = i + 1 < points.size() ? points[i + 1](last) : ref(last);
    const Scalar depth = top - points[i](last);
    if (depth > Scalar(0)) volume += hypervolume_slicing(slab, sub_ref) * depth;
  }
  return volume;
}

}  // namespace detail

/// Mean distance from each reference point to its nearest approximation point.
template <typename Scalar>
Scalar igd(std::span<const Vector<Scalar>> approx, std::span<const Vector<Scalar>> reference) {
  require(!approx.empty() && !reference.empty(), "igd: empty point set");
  require(approx.front().size() == reference.front().size(), "igd: objective count mismatch");
  Scalar total(0);
  for (const auto& r : reference) total += detail::nearest_distance(r, approx);
  return total / static_cast<Scalar>(reference.size());
}

/// Volume dominated by `approx` and bounded by `ref_point`. Points that do
/// not strictly dominate the reference point are ignored.
template <typename Scalar>
Scalar hypervolume(std::span<const Vector<Scalar>> approx, const Vector<Scalar>& ref_point) {
  std::vector<Vector<Scalar>> inside;
  for (const auto& p : approx) {
    require(p.size() == ref_point.size(), "hypervolume: objective count mismatch");
    if ((p.array() < ref_point.array()).all()) inside.push_back(p);
  }
  return detail::hypervolume_slicing(std::move(inside), ref_point);
}

/// Spread (delta) indicator; lower is better. For two objectives this is
/// Deb's delta over the front sorted by the first objective, otherwise the
/// generalized form using nearest-neighbour distances. The extremes are the
/// reference points maximizing each objective. Fewer than two approximation
/// points yield 1.
template <typename Scalar>
Scalar spread(std::span<const Vector<Scalar>> approx, std::span<const Vector<Scalar>> reference) {
  require(!approx.empty() && !reference.empty(), "spread: empty point set");
  const Eigen::Index k = reference.front().size();
  require(approx.front().size() == k, "spread: objective count mismatch");
  if (approx.size() < 2) return Scalar(1);

  std::vector<Vector<Scalar>> extremes;
  for (Eigen::Index m = 0; m < k; ++m) {
    auto it = std::max_element(reference.begin(), reference.end(),
                               [m](const auto& a, const auto& b) { return a(m) < b(m); });
    extremes.push_back(*it);
  }

  Scalar extreme_sum(0);
  std::vector<Scalar> gaps;
  if (k == 2) {
    std::vector<Vector<Scalar>> sorted(approx.begin(), approx.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      return a(0) < b(0) || (a(0) == b(0) && a(1) > b(1));
    });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      gaps.push_back((sorted[i + 1] - sorted[i]).norm());
    // The max-f2 extreme is the first point along f1, the max-f1 extreme the last.
    extreme_sum = detail::nearest_distance(extremes[1], approx) +
                  detail::nearest_distance(extremes[0], approx);
  } else {
    for (std::size_t i = 0; i < approx.size(); ++i) {
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (std::size_t j = 0; j < approx.size(); ++j)
        if (j != i) best = std::min(best, (approx[i] - approx[j]).norm());
      gaps.push_back(best);
    }
    for (const auto& e : extremes) extreme_sum += detail::nearest_distance(e, approx);
  }

  Scalar mean(0);
  for (Scalar d : gaps) mean += d;
  mean /= static_cast<Scalar>(gaps.size());
  Scalar deviation(0);
  for (Scalar d : gaps) deviation += std::abs(d - mean);

  const Scalar denominator = extreme_sum + static_cast<Scalar>(gaps.size()) * mean;
  if (!(denominator > Scalar(0))) return Scalar(0);
  return (extreme_sum + deviation) / denominator;
}

/// 1.1 times the component-wise maximum of `reference`.
template <typename Scalar>
Vector<Scalar> default_reference_point(std::span<const Vector<Scalar>> reference) {
  require(!reference.empty(), "default_reference_point: empty reference");
  Vector<Scalar> nadir = reference.front();
  for (const auto& r : reference) nadir = nadir.cwiseMax(r);
  return nadir * Scalar(1.1);
}

}  // namespace mopsoca

#endif  // MOPSOCA_METRICS_HPP
