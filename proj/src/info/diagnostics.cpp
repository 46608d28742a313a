#include "rlinfo/info/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rlinfo {

std::string RegretTrace::to_csv() const {
  std::ostringstream out;
  out << "t,shortfall,reward,cumulative_regret,episode\n";
  for (std::size_t t = 0; t < shortfall.size(); ++t)
    out << t << ',' << shortfall[t] << ',' << reward[t] << ',' << cumulative_regret[t] << ','
        << episode[t] << '\n';
  return out.str();
}

RegretTrace build_regret_trace(const Environment& env, const std::vector<Transition>& trace) {
  RegretTrace out;
  const std::vector<double> shortfalls = per_step_shortfall(env, trace);
  double cumulative = 0.0;
  int episode = 0;
  double ep_return = 0.0;
  double ep_shortfall = 0.0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    cumulative += shortfalls[t];
    out.shortfall.push_back(shortfalls[t]);
    out.reward.push_back(trace[t].reward);
    out.cumulative_regret.push_back(cumulative);
    out.episode.push_back(episode);
    ep_return += trace[t].reward;
    ep_shortfall += shortfalls[t];
    if (trace[t].episode_terminal) {
      out.episode_return.push_back(ep_return);
      // An episode counts as optimal when no executed action lost value;
      // this is robust to stochastic realized rewards.
      out.episode_optimal.push_back(ep_shortfall <= 1e-9);
      ep_return = 0.0;
      ep_shortfall = 0.0;
      ++episode;
    }
  }
  return out;
}

std::optional<int> learning_time(const std::vector<bool>& episode_optimal, double threshold,
                                 int window) {
  if (window < 1) throw ContractViolation("learning_time: window must be positive");
  int suboptimal_in_window = 0;
  for (std::size_t t = 0; t < episode_optimal.size(); ++t) {
    if (!episode_optimal[t]) ++suboptimal_in_window;
    if (t >= static_cast<std::size_t>(window) && !episode_optimal[t - window])
      --suboptimal_in_window;
    const int covered = std::min<int>(static_cast<int>(t) + 1, window);
    if (static_cast<double>(suboptimal_in_window) / covered < threshold)
      return static_cast<int>(t);
  }
  return std::nullopt;
}

InfoRatioEstimate info_ratio_sequence(const std::vector<double>& expected_shortfall,
                                      const std::vector<double>& gain_per_step, int tau,
                                      const std::vector<double>& epsilon) {
  if (expected_shortfall.size() != gain_per_step.size())
    throw ContractViolation("info_ratio_sequence: size mismatch");
  InfoRatioEstimate est;
  est.tau = tau;
  est.epsilon = epsilon;
  for (std::size_t t = 0; t < expected_shortfall.size(); ++t) {
    double shortfall = expected_shortfall[t];
    if (!epsilon.empty()) shortfall = std::max(0.0, shortfall - epsilon[t]);
    const double gain = gain_per_step[t];
    if (gain < -1e-12) {              // non-monotone beliefs
      est.ratio.push_back(0.0);
      est.defined.push_back(false);
      continue;
    }
    est.defined.push_back(true);
    const double num = shortfall * shortfall;
    if (num == 0.0 && gain <= 0.0)
      est.ratio.push_back(0.0);
    else if (gain <= 0.0)
      est.ratio.push_back(std::numeric_limits<double>::infinity());
    else
      est.ratio.push_back(num / gain);
  }
  return est;
}

std::string info_ratio_csv(const std::vector<double>& expected_shortfall,
                           const std::vector<double>& gain_per_step,
                           const InfoRatioEstimate& estimate) {
  std::ostringstream out;
  out << "t,shortfall,gain,ratio,cumulative_regret\n";
  double cumulative = 0.0;
  for (std::size_t t = 0; t < estimate.ratio.size(); ++t) {
    cumulative += expected_shortfall[t];
    out << t << ',' << expected_shortfall[t] << ',' << gain_per_step[t] << ',';
    if (estimate.defined[t])
      out << estimate.ratio[t];
    else
      out << "nan";
    out << ',' << cumulative << '\n';
  }
  return out.str();
}

std::string curve_csv(const std::vector<SatisficingCurvePoint>& curve) {
  std::ostringstream out;
  out << "epsilon,target_entropy_nats\n";
  for (const SatisficingCurvePoint& point : curve)
    out << point.epsilon << ',' << point.target_entropy << '\n';
  return out.str();
}

std::vector<SatisficingCurvePoint> satisficing_entropy_curve(int num_arms,
                                                             const std::vector<double>& eps_grid,
                                                             int monte_carlo_draws,
                                                             RandomSource& rng) {
  std::vector<SatisficingCurvePoint> curve(eps_grid.size());
  for (std::size_t e = 0; e < eps_grid.size(); ++e) curve[e].epsilon = eps_grid[e];
  std::vector<std::vector<double>> target_counts(eps_grid.size(),
                                                 std::vector<double>(num_arms, 0.0));
  std::vector<double> optimal_counts(num_arms, 0.0);
  std::vector<double> eps_optimal_arms(eps_grid.size(), 0.0);
  std::vector<double> means(static_cast<std::size_t>(num_arms));
  for (int draw = 0; draw < monte_carlo_draws; ++draw) {
    for (double& m : means) m = rng.uniform();
    int best = 0;
    for (int a = 1; a < num_arms; ++a)
      if (means[a] > means[best]) best = a;
    optimal_counts[best] += 1.0;
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
      const double bar = means[best] - eps_grid[e];
      int first = best;
      int qualifying = 0;
      for (int a = 0; a < num_arms; ++a)
        if (means[a] >= bar) {
          ++qualifying;
          if (a < first) first = a;
        }
      target_counts[e][first] += 1.0;
      eps_optimal_arms[e] += qualifying;
    }
  }
  EmpiricalDistribution optimal{{}, optimal_counts};
  const double h_optimal = optimal.entropy(LogBase::nats);
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    EmpiricalDistribution target{{}, target_counts[e]};
    curve[e].target_entropy = target.entropy(LogBase::nats);
    curve[e].optimal_entropy = h_optimal;
    curve[e].epsilon_optimal_prob =
        eps_optimal_arms[e] / (static_cast<double>(monte_carlo_draws) * num_arms);
  }
  return curve;
}

}  // namespace rlinfo
