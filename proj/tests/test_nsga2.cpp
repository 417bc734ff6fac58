#include "mopsoca/nsga2.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mopsoca;
using testing::vec;

namespace {

Bounds<double> box(int n, double lo, double hi) {
  return {VectorXd::Constant(n, lo), VectorXd::Constant(n, hi)};
}

std::vector<VectorXd> nondominated(const std::vector<VectorXd>& pts) {
  std::vector<VectorXd> out;
  for (const auto& f : pts) {
    bool dominated = false;
    for (const auto& g : pts) dominated = dominated || testing::oracle_dominates(g, f);
    if (!dominated) out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_CASE("SBX crossover") {
  const auto b = box(6, -1, 2);
  GaParams params;
  Rng rng(1);
  SECTION("zero crossover probability returns the parents") {
    params.crossover_prob = 0.0;
    for (int t = 0; t < 50; ++t) {
      const VectorXd p1 = random_point(b, rng), p2 = random_point(b, rng);
      const auto [c1, c2] = sbx_crossover(p1, p2, b, params, rng);
      CHECK(c1 == p1);
      CHECK(c2 == p2);
    }
  }
  SECTION("identical parents give identical offspring") {
    params.crossover_prob = 1.0;
    const VectorXd p = random_point(b, rng);
    const auto [c1, c2] = sbx_crossover(p, p, b, params, rng);
    CHECK(c1 == p);
    CHECK(c2 == p);
  }
  SECTION("offspring stay in bounds and change something") {
    params.crossover_prob = 1.0;
    params.sbx_eta = 2.0;
    int changed = 0;
    for (int t = 0; t < 500; ++t) {
      const VectorXd p1 = random_point(b, rng), p2 = random_point(b, rng);
      const auto [c1, c2] = sbx_crossover(p1, p2, b, params, rng);
      CHECK(b.contains(c1));
      CHECK(b.contains(c2));
      changed += c1 != p1;
    }
    CHECK(changed > 400);
  }
  SECTION("each gene pair keeps its midpoint unless clipped") {
    params.crossover_prob = 1.0;
    const auto wide = box(4, -100, 100);
    const VectorXd p1 = vec({0.1, 0.4, -0.3, 0.8});
    const VectorXd p2 = vec({0.6, -0.2, 0.5, 0.9});
    const auto [c1, c2] = sbx_crossover(p1, p2, wide, params, rng);
    for (int i = 0; i < 4; ++i) CHECK(c1(i) + c2(i) == Catch::Approx(p1(i) + p2(i)).margin(1e-12));
  }
}

TEST_CASE("polynomial mutation") {
  const auto b = box(8, 0, 1);
  GaParams params;
  Rng rng(2);
  SECTION("zero probability leaves the vector unchanged") {
    params.mutation_prob = 0.0;
    const VectorXd x = random_point(b, rng);
    CHECK(polynomial_mutation(x, b, params, rng) == x);
  }
  SECTION("output stays in bounds") {
    params.mutation_prob = 1.0;
    params.pm_eta = 1.0;
    for (int t = 0; t < 500; ++t) CHECK(b.contains(polynomial_mutation(random_point(b, rng), b, params, rng)));
  }
  SECTION("fixed seed gives a fixed result") {
    params.mutation_prob = 0.5;
    const VectorXd x = random_point(b, rng);
    Rng r1(9), r2(9);
    CHECK(polynomial_mutation(x, b, params, r1) == polynomial_mutation(x, b, params, r2));
  }
  SECTION("default rate mutates about one gene in n") {
    const auto big = box(100, 0, 1);
    const VectorXd x = VectorXd::Constant(100, 0.5);
    int changed = 0;
    for (int t = 0; t < 200; ++t) changed += (polynomial_mutation(x, big, params, rng).array() != 0.5).count();
    CHECK(changed == Catch::Approx(200).margin(60));
  }
}

TEST_CASE("GA parameter validation") {
  GaParams p;
  p.crossover_prob = 1.5;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = GaParams{};
  p.mutation_prob = -0.1;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
  p = GaParams{};
  p.population = 1;
  CHECK_THROWS_AS(p.validate(), ContractViolation);
}

TEST_CASE("NSGA-II with a budget of one population returns the initial front") {
  const Problem problem(ProblemId::UF3);
  GaParams params;
  params.population = 40;
  params.max_evaluations = 40;
  std::vector<VectorXd> initial;
  RunOptions options;
  options.observer = [&](const IterationView& v) {
    for (const auto& s : v.population) initial.push_back(s.f);
  };
  const RunResult r = run_nsga2(problem, params, 3, options);
  CHECK(r.evaluations_used == 40);
  CHECK(testing::as_set(r.objectives()) == testing::as_set(nondominated(initial)));
}

TEST_CASE("NSGA-II determinism and exact budget") {
  const Problem problem(ProblemId::UF2);
  GaParams params;
  params.population = 30;
  params.max_evaluations = 1000;  // not a multiple of the population
  const RunResult a = run_nsga2(problem, params, 11);
  const RunResult b = run_nsga2(problem, params, 11);
  CHECK(a.evaluations_used == 1000);
  CHECK(testing::as_set(a.objectives()) == testing::as_set(b.objectives()));
  CHECK(testing::pairwise_nondominated(a.objectives()));
  for (const auto& s : a.final_front) {
    CHECK(problem.bounds().contains(s.x));
    CHECK(problem.evaluate(s.x) == s.f);
  }
}

TEST_CASE("NSGA-II population stays ranked and sized") {
  const Problem problem(ProblemId::DTLZ6);
  GaParams params;
  params.population = 20;
  params.max_evaluations = 400;
  std::size_t calls = 0;
  RunOptions options;
  options.observer = [&](const IterationView& v) {
    ++calls;
    CHECK(v.population.size() == 20);
    for (const auto& s : v.population) CHECK(problem.bounds().contains(s.x));
  };
  run_nsga2(problem, params, 5, options);
  CHECK(calls == 20);
}

TEST_CASE("NSGA-II converges near the DTLZ5 sphere at default settings") {
  const Problem problem(ProblemId::DTLZ5);
  const RunResult r = run_nsga2(problem, GaParams{}, 1);
  std::size_t inside = 0;
  for (const auto& f : r.objectives()) inside += f.norm() >= 0.95 && f.norm() <= 1.3;
  CHECK(static_cast<double>(inside) >= 0.9 * static_cast<double>(r.final_front.size()));
}
