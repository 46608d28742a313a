#include "rlinfo/bayes/planning.hpp"

#include <cmath>

namespace rlinfo {

void PhaseMdp::validate() const {
  if (num_states <= 0 || num_actions <= 0 || tau <= 0)
    throw ContractViolation("PhaseMdp: empty model");
  for (int s = 0; s < num_states; ++s)
    for (int a = 0; a < num_actions; ++a) {
      double total = 0.0;
      for (const Outcome& o : outcomes[s][a]) total += o.probability;
      if (std::fabs(total - 1.0) > 1e-9)
        throw ContractViolation("PhaseMdp: non-stochastic row at state " + std::to_string(s));
    }
}

QTable bellman_plan(const PhaseMdp& mdp) {
  mdp.validate();
  QTable table;
  table.q.assign(mdp.num_states, std::vector<double>(mdp.num_actions, 0.0));
  for (int k = mdp.tau - 1; k >= 0; --k) {
    for (int s = 0; s < mdp.num_states; ++s) {
      if (mdp.phase[s] != k) continue;
      for (int a = 0; a < mdp.num_actions; ++a) {
        double q = 0.0;
        for (const PhaseMdp::Outcome& o : mdp.outcomes[s][a]) {
          q += o.probability * o.reward;
          if (k < mdp.tau - 1) q += o.probability * table.value(o.next_state);
        }
        table.q[s][a] = q;
      }
    }
  }
  return table;
}

QTable policy_q(const PhaseMdp& mdp, const std::vector<std::vector<double>>& policy) {
  mdp.validate();
  QTable table;
  table.q.assign(mdp.num_states, std::vector<double>(mdp.num_actions, 0.0));
  std::vector<double> v(mdp.num_states, 0.0);
  for (int k = mdp.tau - 1; k >= 0; --k) {
    for (int s = 0; s < mdp.num_states; ++s) {
      if (mdp.phase[s] != k) continue;
      for (int a = 0; a < mdp.num_actions; ++a) {
        double q = 0.0;
        for (const PhaseMdp::Outcome& o : mdp.outcomes[s][a]) {
          q += o.probability * o.reward;
          if (k < mdp.tau - 1) q += o.probability * v[o.next_state];
        }
        table.q[s][a] = q;
      }
      double value = 0.0;
      for (int a = 0; a < mdp.num_actions; ++a) value += policy[s][a] * table.q[s][a];
      v[s] = value;
    }
  }
  return table;
}

std::vector<ActionId> greedy_policy(const QTable& table) {
  std::vector<ActionId> policy(table.q.size());
  for (std::size_t s = 0; s < table.q.size(); ++s) policy[s] = table.greedy(static_cast<int>(s));
  return policy;
}

PhaseMdp ring_model(const RingMdp& env, const std::vector<double>& up_probabilities) {
  PhaseMdp mdp;
  mdp.num_states = env.num_states();
  mdp.num_actions = env.num_actions();
  mdp.tau = env.tau();
  mdp.phase.resize(mdp.num_states);
  mdp.outcomes.assign(mdp.num_states,
                      std::vector<std::vector<PhaseMdp::Outcome>>(mdp.num_actions));
  for (int s = 0; s < mdp.num_states; ++s) {
    mdp.phase[s] = env.phase_of(s);
    for (int a = 0; a < mdp.num_actions; ++a) {
      if (env.phase_of(s) == env.tau() - 1) {
        mdp.outcomes[s][a] = {{1.0, env.state_id(0, 0), env.reward(s, a, env.state_id(0, 0))}};
        continue;
      }
      const double p = up_probabilities[static_cast<std::size_t>(s * 2 + a)];
      const int up = env.neighbor(s, true);
      const int down = env.neighbor(s, false);
      mdp.outcomes[s][a] = {{p, up, env.reward(s, a, up)},
                            {1.0 - p, down, env.reward(s, a, down)}};
    }
  }
  return mdp;
}

std::vector<ActionId> psrl_episode_plan(const RingPosterior& post, const RingMdp& env,
                                        RandomSource& rng) {
  std::vector<double> sampled(static_cast<std::size_t>(env.num_states() * 2));
  for (std::size_t i = 0; i < sampled.size(); ++i)
    sampled[i] = rng.beta(post.up.alpha[i], post.up.beta[i]);
  return greedy_policy(bellman_plan(ring_model(env, sampled)));
}

}  // namespace rlinfo
