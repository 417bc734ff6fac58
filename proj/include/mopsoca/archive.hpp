// Capacity-limited store of mutually non-dominated solutions.

#ifndef MOPSOCA_ARCHIVE_HPP
#define MOPSOCA_ARCHIVE_HPP

#include "mopsoca/dominance.hpp"

#include <span>
#include <vector>

namespace mopsoca {

enum class InsertOutcome { Inserted, Rejected, InsertedWithEviction };

/// Members are pairwise non-dominated and never exceed `capacity`. When an
/// insertion overflows, members with the smallest crowding distance are
/// evicted one at a time (crowding recomputed after each eviction); ties
/// evict the lexicographically largest objective vector. An exact duplicate
/// of a member's objective vector is rejected.
template <typename Scalar>
class BoundedArchive {
 public:
  explicit BoundedArchive(std::size_t capacity) : capacity_(capacity) {
    require(capacity > 0, "BoundedArchive: capacity must be positive");
  }

  InsertOutcome insert(const Solution<Scalar>& candidate) {
    for (const auto& m : members_) {
      const Dominance d = dominates(m.f, candidate.f);
      if (d == Dominance::FirstDominates || d == Dominance::Equal)
        return InsertOutcome::Rejected;
    }
    std::erase_if(members_, [&](const Solution<Scalar>& m) {
      return strictly_dominates(candidate.f, m.f);
    });
    members_.push_back(candidate);
    if (members_.size() <= capacity_) return InsertOutcome::Inserted;
    while (members_.size() > capacity_) evict_most_crowded();
    return InsertOutcome::InsertedWithEviction;
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const Solution<Scalar>> members() const { return members_; }
  const Solution<Scalar>& operator[](std::size_t i) const { return members_[i]; }

  std::vector<Scalar> density() const {
    return crowding_distance<Scalar>(std::span<const Solution<Scalar>>(members_));
  }

 private:
  void evict_most_crowded() {
    const auto crowding = density();
    std::size_t victim = 0;
    for (std::size_t i = 1; i < members_.size(); ++i) {
      if (crowding[i] < crowding[victim] ||
          (crowding[i] == crowding[victim] &&
           lexicographic_less(members_[victim].f, members_[i].f)))
        victim = i;
    }
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(victim));
  }

  std::size_t capacity_;
  std::vector<Solution<Scalar>> members_;
};

}  // namespace mopsoca

#endif  // MOPSOCA_ARCHIVE_HPP
