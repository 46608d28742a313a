#pragma once

#include <string>
#include <vector>

#include "rlinfo/agent.hpp"
#include "rlinfo/env.hpp"

namespace rlinfo {

// Run agent on env for exactly `horizon` steps. Episodic envs auto-reset
// on terminal; the agent is updated once after every step. The trace is
// recorded for diagnostics only, never handed back to the agent.
std::vector<Transition> run_loop(Agent& agent, const Environment& env, int horizon,
                                 RandomSource& rng);

// Sum of rewards from `start` to the next terminal, inclusive. `start`
// must be an episode boundary (index 0 or just after a terminal).
double episode_return(const std::vector<Transition>& trace, std::size_t start);

// CSV with columns step,episode,state,action,observation,reward,terminal.
std::string trace_to_csv(const std::vector<Transition>& trace);

}  // namespace rlinfo
