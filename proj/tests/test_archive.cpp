#include "mopsoca/archive.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace mopsoca;
using testing::sol;
using testing::vec;

namespace {

std::vector<VectorXd> contents(const BoundedArchive<double>& a) {
  std::vector<VectorXd> out;
  for (const auto& m : a.members()) out.push_back(m.f);
  return out;
}

}  // namespace

TEST_CASE("archive insertion examples") {
  SECTION("dominating candidate replaces the member") {
    BoundedArchive<double> a(10);
    a.insert(sol({1, 1}));
    CHECK(a.insert(sol({0, 0})) == InsertOutcome::Inserted);
    REQUIRE(a.size() == 1);
    CHECK(a[0].f == vec({0, 0}));
  }
  SECTION("dominated candidate is rejected") {
    BoundedArchive<double> a(10);
    a.insert(sol({0, 0}));
    CHECK(a.insert(sol({1, 1})) == InsertOutcome::Rejected);
    REQUIRE(a.size() == 1);
    CHECK(a[0].f == vec({0, 0}));
  }
  SECTION("equal candidate is rejected and the incumbent stays") {
    BoundedArchive<double> a(10);
    SolutionD first = sol({0.5, 0.5});
    first.iteration = 3;
    a.insert(first);
    SolutionD twin = sol({0.5, 0.5});
    twin.iteration = 9;
    CHECK(a.insert(twin) == InsertOutcome::Rejected);
    CHECK(a[0].iteration == 3);
  }
  SECTION("overflow evicts the interior point") {
    BoundedArchive<double> a(2);
    a.insert(sol({0, 1}));
    a.insert(sol({1, 0}));
    CHECK(a.insert(sol({0.5, 0.5})) == InsertOutcome::InsertedWithEviction);
    CHECK(testing::as_set(contents(a)) == testing::as_set(testing::points({{0, 1}, {1, 0}})));
  }
  SECTION("crowding ties evict the lexicographically largest member") {
    // Capacity 1 with two mutually non-dominated members: both have
    // infinite crowding, so (1,0) goes.
    BoundedArchive<double> a(1);
    a.insert(sol({0, 1}));
    CHECK(a.insert(sol({1, 0})) == InsertOutcome::InsertedWithEviction);
    REQUIRE(a.size() == 1);
    CHECK(a[0].f == vec({0, 1}));
  }
  SECTION("candidate dominating several members removes all of them") {
    BoundedArchive<double> a(10);
    a.insert(sol({0.2, 0.9}));
    a.insert(sol({0.5, 0.5}));
    a.insert(sol({0.9, 0.2}));
    CHECK(a.insert(sol({0.1, 0.1})) == InsertOutcome::Inserted);
    REQUIRE(a.size() == 1);
  }
  SECTION("density has one entry per member") {
    BoundedArchive<double> a(10);
    a.insert(sol({0, 1}));
    a.insert(sol({0.5, 0.5}));
    a.insert(sol({1, 0}));
    CHECK(a.density().size() == 3);
  }
}

TEST_CASE("archive capacity must be positive") {
  CHECK_THROWS_AS(BoundedArchive<double>(0), ContractViolation);
}

TEST_CASE("archive invariants under random insertion") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng.index(2));
    const std::size_t capacity = 1 + rng.index(15);
    BoundedArchive<double> a(capacity);
    for (int n = 0; n < 400; ++n) {
      const VectorXd f = n % 2 ? testing::grid_vector(rng, k, 8) : testing::random_vector(rng, k);
      const auto before = contents(a);
      bool covered = false;
      for (const auto& m : before) covered = covered || testing::oracle_dominates(m, f) || m == f;
      const InsertOutcome outcome = a.insert({f, f, n});
      CHECK((outcome == InsertOutcome::Rejected) == covered);
      if (outcome == InsertOutcome::Rejected) CHECK(contents(a) == before);
      REQUIRE(a.size() <= capacity);
    }
    CHECK(testing::pairwise_nondominated(contents(a)));
  }
}

TEST_CASE("archive content is order-insensitive when capacity suffices") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<VectorXd> candidates;
    for (int i = 0; i < 40; ++i) candidates.push_back(testing::grid_vector(rng, 2, 10));
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::set<std::vector<double>> reference;
    for (int perm = 0; perm < 5; ++perm) {
      for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
      BoundedArchive<double> a(candidates.size());
      for (std::size_t i : order) a.insert({candidates[i], candidates[i], 0});
      const auto got = testing::as_set(contents(a));
      if (perm == 0) reference = got;
      CHECK(got == reference);
    }
    // It is exactly the distinct non-dominated subset.
    std::vector<VectorXd> nd;
    for (const auto& c : candidates) {
      bool dominated = false;
      for (const auto& o : candidates) dominated = dominated || testing::oracle_dominates(o, c);
      if (!dominated) nd.push_back(c);
    }
    CHECK(reference == testing::as_set(nd));
  }
}
