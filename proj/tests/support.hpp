// Shared helpers and independent oracles for the test programs. The oracles
// are written from the definitions, with no code shared with the library.

#ifndef MOPSOCA_TESTS_SUPPORT_HPP
#define MOPSOCA_TESTS_SUPPORT_HPP

#include "mopsoca/random.hpp"
#include "mopsoca/types.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <set>
#include <vector>

namespace testing {

using mopsoca::Rng;
using mopsoca::SolutionD;
using mopsoca::VectorXd;

inline VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline std::vector<VectorXd> points(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<VectorXd> out;
  for (auto r : rows) out.push_back(vec(r));
  return out;
}

inline SolutionD sol(std::initializer_list<double> f) {
  const VectorXd v = vec(f);
  return {v, v, 0};
}

inline VectorXd random_vector(Rng& rng, int k, double lo = 0.0, double hi = 1.0) {
  VectorXd v(k);
  for (int i = 0; i < k; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

// Vectors on a coarse grid so that ties and duplicates are frequent.
inline VectorXd grid_vector(Rng& rng, int k, int levels = 5) {
  VectorXd v(k);
  for (int i = 0; i < k; ++i) v(i) = static_cast<double>(rng.index(levels));
  return v;
}

// a is no worse everywhere and better somewhere.
inline bool oracle_dominates(const VectorXd& a, const VectorXd& b) {
  bool better = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i)) return false;
    if (a(i) < b(i)) better = true;
  }
  return better;
}

// Repeated extraction of the non-dominated subset.
inline std::vector<std::set<std::size_t>> oracle_ranking(const std::vector<VectorXd>& pts) {
  std::vector<std::set<std::size_t>> fronts;
  std::set<std::size_t> remaining;
  for (std::size_t i = 0; i < pts.size(); ++i) remaining.insert(i);
  while (!remaining.empty()) {
    std::set<std::size_t> front;
    for (std::size_t i : remaining) {
      bool dominated = false;
      for (std::size_t j : remaining)
        if (oracle_dominates(pts[j], pts[i])) dominated = true;
      if (!dominated) front.insert(i);
    }
    for (std::size_t i : front) remaining.erase(i);
    fronts.push_back(front);
  }
  return fronts;
}

// Random set of mutually non-dominated points inside the unit box.
inline std::vector<VectorXd> random_nondominated_set(Rng& rng, int k, std::size_t max_size) {
  std::vector<VectorXd> out;
  const std::size_t target = 1 + rng.index(max_size);
  for (int attempt = 0; attempt < 10000 && out.size() < target; ++attempt) {
    VectorXd c = random_vector(rng, k, 0.02, 0.98);
    bool keep = true;
    for (const auto& p : out)
      if (oracle_dominates(p, c) || oracle_dominates(c, p) || p == c) keep = false;
    if (keep) out.push_back(c);
  }
  return out;
}

// Monte-Carlo estimate of the volume dominated by pts inside [0, ref].
inline double monte_carlo_hv(const std::vector<VectorXd>& pts, const VectorXd& ref,
                             std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const int k = static_cast<int>(ref.size());
  std::size_t hits = 0;
  VectorXd s(k);
  for (std::size_t n = 0; n < samples; ++n) {
    for (int i = 0; i < k; ++i) s(i) = rng.uniform() * ref(i);
    for (const auto& p : pts) {
      if ((p.array() <= s.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  return ref.prod() * static_cast<double>(hits) / static_cast<double>(samples);
}

inline bool pairwise_nondominated(const std::vector<VectorXd>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j && oracle_dominates(pts[i], pts[j])) return false;
  return true;
}

inline std::set<std::vector<double>> as_set(const std::vector<VectorXd>& pts) {
  std::set<std::vector<double>> out;
  for (const auto& p : pts) out.insert(std::vector<double>(p.data(), p.data() + p.size()));
  return out;
}

}  // namespace testing

#endif  // MOPSOCA_TESTS_SUPPORT_HPP
