// Particle swarm building blocks shared by OMOPSO and MOPSO-CA.

#ifndef MOPSOCA_PSO_HPP
#define MOPSOCA_PSO_HPP

#include "mopsoca/archive.hpp"
#include "mopsoca/random.hpp"
#include "mopsoca/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mopsoca {

struct CoefficientRange {
  double lo = 0.0;
  double hi = 0.0;

  double draw(Rng& rng) const { return rng.uniform(lo, hi); }
  bool valid() const { return lo <= hi; }
};

/// Uniform "turbulence" mutation: each gene moves by
/// (u - 0.5) * perturbation * (upper - lower) with probability
/// gene_probability (0 means 1/n), then is clipped to the box.
struct Turbulence {
  bool enabled = false;
  double gene_probability = 0.0;
  double perturbation = 0.5;
};

struct PsoParams {
  CoefficientRange w{0.1, 0.5};
  CoefficientRange c1{1.5, 2.0};
  CoefficientRange c2{1.5, 2.0};
  std::size_t population = 200;
  std::size_t archive_capacity = 100;
  std::size_t iterations = 250;
  Turbulence mutation{true, 0.0, 0.5};

  void validate() const {
    require(w.valid() && c1.valid() && c2.valid(), "PsoParams: empty coefficient range");
    require(population >= 2, "PsoParams: population must be at least 2");
    require(archive_capacity >= 1, "PsoParams: archive capacity must be positive");
    require(mutation.gene_probability >= 0.0 && mutation.gene_probability <= 1.0,
            "PsoParams: mutation probability outside [0,1]");
  }
};

template <typename Scalar>
struct Particle {
  Vector<Scalar> x;
  Vector<Scalar> v;
  Vector<Scalar> f;
  Solution<Scalar> pbest;

  Solution<Scalar> position(long iteration = -1) const { return {x, f, iteration}; }
};

/// One draw of the stochastic coefficients of a velocity update. The draw
/// order is w, c1, r1, c2, r2 for every update rule that uses this struct.
struct PsoCoefficients {
  double w = 0.0;
  double c1 = 0.0;
  double r1 = 0.0;
  double c2 = 0.0;
  double r2 = 0.0;
};

inline PsoCoefficients draw_pso_coefficients(const CoefficientRange& w,
                                             const CoefficientRange& c1,
                                             const CoefficientRange& c2, Rng& rng) {
  PsoCoefficients k;
  k.w = w.draw(rng);
  k.c1 = c1.draw(rng);
  k.r1 = rng.uniform();
  k.c2 = c2.draw(rng);
  k.r2 = rng.uniform();
  return k;
}

/// Applies a new velocity: clamps each component to half the box width,
/// moves, then clips the position to the box and reverses the velocity
/// component that left it.
template <typename Scalar>
void fly(Particle<Scalar>& p, Vector<Scalar> velocity, const Bounds<Scalar>& bounds) {
  const Vector<Scalar> v_max = Scalar(0.5) * (bounds.upper - bounds.lower);
  velocity = velocity.cwiseMax(-v_max).cwiseMin(v_max);
  p.x += velocity;
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    if (p.x(i) < bounds.lower(i)) {
      p.x(i) = bounds.lower(i);
      velocity(i) = -velocity(i);
    } else if (p.x(i) > bounds.upper(i)) {
      p.x(i) = bounds.upper(i);
      velocity(i) = -velocity(i);
    }
  }
  p.v = std::move(velocity);
}

/// Two-attractor velocity and position update toward pbest and `leader`.
template <typename Scalar>
Particle<Scalar> pso_update(Particle<Scalar> p, const Solution<Scalar>& leader,
                            const PsoParams& params, const Bounds<Scalar>& bounds, Rng& rng) {
  const PsoCoefficients k = draw_pso_coefficients(params.w, params.c1, params.c2, rng);
  const auto a = static_cast<Scalar>(k.c1 * k.r1);
  const auto b = static_cast<Scalar>(k.c2 * k.r2);
  Vector<Scalar> velocity = static_cast<Scalar>(k.w) * p.v + a * (p.pbest.x - p.x) +
                            b * (leader.x - p.x);
  fly(p, std::move(velocity), bounds);
  return p;
}

template <typename Scalar>
void apply_turbulence(Particle<Scalar>& p, const Turbulence& turbulence,
                      const Bounds<Scalar>& bounds, Rng& rng) {
  const double probability = turbulence.gene_probability > 0.0
                                 ? turbulence.gene_probability
                                 : 1.0 / static_cast<double>(p.x.size());
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    if (!rng.bernoulli(probability)) continue;
    const Scalar step = static_cast<Scalar>((rng.uniform() - 0.5) * turbulence.perturbation) *
                        (bounds.upper(i) - bounds.lower(i));
    p.x(i) = std::clamp(p.x(i) + step, bounds.lower(i), bounds.upper(i));
  }
}

/// Replaces pbest when the current position dominates it; keeps it when it
/// dominates the current position; otherwise replaces with probability 1/2.
template <typename Scalar>
void update_pbest(Particle<Scalar>& p, long iteration, Rng& rng) {
  switch (dominates(p.f, p.pbest.f)) {
    case Dominance::FirstDominates:
      p.pbest = p.position(iteration);
      break;
    case Dominance::NonDominated:
    case Dominance::Equal:
      if (rng.bernoulli(0.5)) p.pbest = p.position(iteration);
      break;
    case Dominance::SecondDominates:
      break;
  }
}

/// Binary tournament on crowding distance; the less crowded member wins,
/// ties go to the first pick.
template <typename Scalar>
const Solution<Scalar>& select_leader(std::span<const Solution<Scalar>> archive,
                                      std::span<const Scalar> crowding, Rng& rng) {
  require(!archive.empty(), "select_leader: empty archive");
  if (archive.size() == 1) return archive.front();
  const std::size_t a = rng.index(archive.size());
  const std::size_t b = rng.index(archive.size());
  return crowding[b] > crowding[a] ? archive[b] : archive[a];
}

template <typename Scalar>
Particle<Scalar> make_particle(Vector<Scalar> x, Vector<Scalar> f, long iteration = 0) {
  Particle<Scalar> p;
  p.v = Vector<Scalar>::Zero(x.size());
  p.pbest = Solution<Scalar>{x, f, iteration};
  p.x = std::move(x);
  p.f = std::move(f);
  return p;
}

template <typename Scalar>
Vector<Scalar> random_point(const Bounds<Scalar>& bounds, Rng& rng) {
  Vector<Scalar> x(bounds.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = static_cast<Scalar>(rng.uniform(bounds.lower(i), bounds.upper(i)));
  return x;
}

}  // namespace mopsoca

#endif  // MOPSOCA_PSO_HPP
