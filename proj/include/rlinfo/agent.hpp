#pragma once

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

// Agent interface. update() is final and assembles the next state from the
// three named sub-updates, so every concrete agent decomposes its state
// transition into algorithmic / aleatoric / epistemic parts.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual ActionId act(const AgentState& state, RandomSource& rng) = 0;

  AgentState update(const AgentState& state, const Transition& tr, RandomSource& rng) {
    AgentState next;
    next.algorithmic = update_algorithmic(state, tr, rng);
    next.aleatoric = update_aleatoric(state, tr, rng);
    next.epistemic = update_epistemic(state, tr, rng);
    return next;
  }

  virtual AgentState reset(RandomSource& rng) = 0;

 protected:
  virtual std::any update_algorithmic(const AgentState& s, const Transition& tr,
                                      RandomSource& rng) = 0;
  virtual std::any update_aleatoric(const AgentState& s, const Transition& tr,
                                    RandomSource& rng) = 0;
  virtual std::any update_epistemic(const AgentState& s, const Transition& tr,
                                    RandomSource& rng) = 0;
};

}  // namespace rlinfo
