#include <cmath>
#include <sstream>

#include "rlinfo/env.hpp"
#include "rlinfo/loop.hpp"

namespace rlinfo {

QTable Environment::q_star() const {
  const int ns = num_states();
  const int na = num_actions();
  QTable table;
  table.q.assign(ns, std::vector<double>(na, 0.0));
  // The episodic envs here are phase-structured (every branch either
  // terminates or advances toward renewal), so sweeps equal to the state
  // count reach the fixed point; the residual check guards the assumption.
  for (int sweep = 0; sweep < ns + 2; ++sweep) {
    double residual = 0.0;
    for (int s = 0; s < ns; ++s) {
      for (int a = 0; a < na; ++a) {
        double q = 0.0;
        for (const Branch& b : branches(s, a)) {
          double cont = 0.0;
          if (!b.episode_terminal) {
            cont = table.q[b.next_state][0];
            for (int a2 = 1; a2 < na; ++a2)
              cont = std::max(cont, table.q[b.next_state][a2]);
          }
          q += b.probability * (b.reward + cont);
        }
        residual = std::max(residual, std::fabs(q - table.q[s][a]));
        table.q[s][a] = q;
      }
    }
    if (sweep >= ns && residual < 1e-13) return table;
  }
  throw NumericalDegeneracy("q_star: value iteration did not converge");
}

std::vector<double> per_step_shortfall(const Environment& env,
                                       const std::vector<Transition>& trace) {
  const QTable table = env.q_star();
  std::vector<double> out;
  out.reserve(trace.size());
  for (const Transition& tr : trace)
    out.push_back(table.value(tr.state_before) - table.q[tr.state_before][tr.action]);
  return out;
}

std::vector<Transition> run_loop(Agent& agent, const Environment& env, int horizon,
                                 RandomSource& rng) {
  if (horizon < 1) throw ContractViolation("run_loop: horizon must be >= 1");
  std::vector<Transition> trace;
  trace.reserve(static_cast<std::size_t>(horizon));
  AgentState agent_state = agent.reset(rng);
  int env_state = env.initial_state();
  for (int t = 0; t < horizon; ++t) {
    const ActionId action = agent.act(agent_state, rng);
    env.check_action(action);
    const StepResult r = env.step(env_state, action, rng);
    Transition tr;
    tr.state_before = env_state;
    tr.action = action;
    tr.observation = r.observation;
    tr.reward = r.reward;
    tr.state_after = r.next_state;
    tr.episode_terminal = r.episode_terminal;
    agent_state = agent.update(agent_state, tr, rng);
    env_state = r.episode_terminal ? env.initial_state() : r.next_state;
    trace.push_back(std::move(tr));
  }
  return trace;
}

double episode_return(const std::vector<Transition>& trace, std::size_t start) {
  if (start >= trace.size()) throw ContractViolation("episode_return: start out of range");
  if (start != 0 && !trace[start - 1].episode_terminal)
    throw ContractViolation("episode_return: start is not an episode boundary");
  double total = 0.0;
  for (std::size_t i = start; i < trace.size(); ++i) {
    total += trace[i].reward;
    if (trace[i].episode_terminal) break;
  }
  return total;
}

std::string trace_to_csv(const std::vector<Transition>& trace) {
  std::ostringstream out;
  out << "step,episode,state,action,observation,reward,terminal\n";
  int episode = 0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const Transition& tr = trace[t];
    out << t << ',' << episode << ',' << tr.state_before << ',' << tr.action << ','
        << tr.observation.encode() << ',' << tr.reward << ','
        << (tr.episode_terminal ? 1 : 0) << '\n';
    if (tr.episode_terminal) ++episode;
  }
  return out.str();
}

}  // namespace rlinfo
