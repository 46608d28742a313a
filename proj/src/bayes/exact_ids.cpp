#include "rlinfo/bayes/exact_ids.hpp"

#include <algorithm>
#include <cmath>

#include "rlinfo/info/measures.hpp"
#include "rlinfo/math.hpp"

namespace rlinfo {

namespace {

// P(A* = j) and E[max p] under independent Beta arms, lowest-index ties
// (ties have measure zero for continuous posteriors).
void optimal_arm_stats(const BetaPosterior& post, std::vector<double>* probs,
                       double* expected_best) {
  const int n = post.num_arms();
  probs->assign(static_cast<std::size_t>(n), 0.0);
  *expected_best = 0.0;
  for (int j = 0; j < n; ++j) {
    auto integrand_prob = [&](double x) {
      double v = beta_pdf(x, post.alpha[j], post.beta[j]);
      for (int i = 0; i < n && v > 0.0; ++i)
        if (i != j) v *= beta_cdf(x, post.alpha[i], post.beta[i]);
      return v;
    };
    (*probs)[static_cast<std::size_t>(j)] = integrate(integrand_prob, 0.0, 1.0, 1e-10);
    auto integrand_mean = [&](double x) { return x * integrand_prob(x); };
    *expected_best += integrate(integrand_mean, 0.0, 1.0, 1e-10);
  }
  // Quadrature drift guard: renormalize the argmax distribution.
  double total = 0.0;
  for (double p : *probs) total += p;
  if (total > 0.0)
    for (double& p : *probs) p /= total;
}

}  // namespace

BetaBanditExact beta_bandit_exact(const BetaPosterior& post) {
  BetaBanditExact out;
  optimal_arm_stats(post, &out.optimal_arm_probability, &out.expected_best_mean);
  const double h_prior = entropy(out.optimal_arm_probability, LogBase::nats);
  const int n = post.num_arms();
  out.shortfall.resize(static_cast<std::size_t>(n));
  out.info_gain.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    out.shortfall[a] = std::max(0.0, out.expected_best_mean - post.mean(a));
    // I(A*; R_a) = H(A*) - E_R[H(A* | R_a)], outcomes via the posterior
    // predictive mean.
    const double p1 = post.mean(a);
    double h_post = 0.0;
    for (int outcome = 0; outcome <= 1; ++outcome) {
      BetaPosterior updated = beta_update(post, a, outcome);
      std::vector<double> probs;
      double unused = 0.0;
      optimal_arm_stats(updated, &probs, &unused);
      h_post += (outcome == 1 ? p1 : 1.0 - p1) * entropy(probs, LogBase::nats);
    }
    out.info_gain[a] = std::max(0.0, h_prior - h_post);
  }
  return out;
}

ExactIdsDecision exact_ids_bandit_select(const BetaPosterior& post, RandomSource& rng,
                                         int granularity) {
  ExactIdsDecision decision;
  decision.exact = beta_bandit_exact(post);
  ShortfallGainTable table{decision.exact.shortfall, decision.exact.info_gain};
  const TwoSparseResult opt = two_sparse_minimize(table, granularity);
  decision.nu = opt.nu;
  if (opt.degenerate_fallback) {
    const int pick = rng.uniform_int(static_cast<int>(opt.fallback_support.size()));
    decision.action = opt.fallback_support[static_cast<std::size_t>(pick)];
    return decision;
  }
  decision.action = decision.nu.sample(rng);
  return decision;
}

}  // namespace rlinfo
