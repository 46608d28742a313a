#pragma once

#include <deque>
#include <vector>

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

// Training view of one interaction: states as one-hot indices, plus the
// raw observation bits for observation-driven losses.
struct EnnTransition {
  int state = 0;
  ActionId action = 0;
  double reward = 0.0;
  int next_state = 0;
  bool terminal = false;
  std::vector<double> observation_bits;
};

// FIFO buffer; eviction strictly oldest-first. min_size gates training
// (default: the batch size, set by the agent).
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity, std::size_t min_size = 1)
      : capacity_(capacity), min_size_(min_size) {
    if (capacity_ == 0) throw ContractViolation("ReplayBuffer: zero capacity");
  }

  void add(EnnTransition tr) {
    if (items_.size() == capacity_) items_.pop_front();
    items_.push_back(std::move(tr));
  }

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::size_t min_size() const { return min_size_; }
  bool ready() const { return items_.size() >= min_size_; }
  const EnnTransition& at(std::size_t i) const { return items_[i]; }

  // Uniform sample with replacement.
  std::vector<const EnnTransition*> sample(int n, RandomSource& rng) const {
    std::vector<const EnnTransition*> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      out.push_back(&items_[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(items_.size())))]);
    return out;
  }

 private:
  std::size_t capacity_;
  std::size_t min_size_;
  std::deque<EnnTransition> items_;
};

}  // namespace rlinfo
