#include "rlinfo/bayes/posteriors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rlinfo/math.hpp"

namespace rlinfo {

std::string BetaPosterior::serialize() const {
  std::ostringstream out;
  out.precision(17);
  for (int a = 0; a < num_arms(); ++a) out << a << ' ' << alpha[a] << ' ' << beta[a] << '\n';
  return out.str();
}

BetaPosterior BetaPosterior::deserialize(const std::string& text) {
  BetaPosterior post;
  std::istringstream in(text);
  int arm = 0;
  double a = 0.0, b = 0.0;
  while (in >> arm >> a >> b) {
    post.alpha.push_back(a);
    post.beta.push_back(b);
  }
  return post;
}

BetaPosterior beta_update(BetaPosterior post, ActionId arm, int outcome) {
  if (outcome != 0 && outcome != 1) throw ContractViolation("beta_update: outcome must be 0/1");
  if (arm < 0 || arm >= post.num_arms()) throw ContractViolation("beta_update: bad arm");
  post.alpha[arm] += outcome;
  post.beta[arm] += 1 - outcome;
  return post;
}

double beta_bernoulli_mi(double alpha, double beta) {
  if (alpha < 1.0 || beta < 1.0)
    throw ContractViolation("beta_bernoulli_mi: requires alpha, beta >= 1");
  const double s = alpha + beta;
  return alpha / s * (digamma(alpha + 1.0) - std::log(alpha)) +
         beta / s * (digamma(beta + 1.0) - std::log(beta)) -
         (digamma(s + 1.0) - std::log(s));
}

namespace {

// Lower-triangular Cholesky factor; empty result when not PD.
std::vector<double> cholesky(const std::vector<double>& m, int d) {
  std::vector<double> L(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = m[static_cast<std::size_t>(i) * d + j];
      for (int k = 0; k < j; ++k)
        sum -= L[static_cast<std::size_t>(i) * d + k] * L[static_cast<std::size_t>(j) * d + k];
      if (i == j) {
        if (sum <= 0.0) return {};
        L[static_cast<std::size_t>(i) * d + i] = std::sqrt(sum);
      } else {
        L[static_cast<std::size_t>(i) * d + j] = sum / L[static_cast<std::size_t>(j) * d + j];
      }
    }
  }
  return L;
}

// Solve m x = b via the Cholesky factor of m.
std::vector<double> solve_spd(const std::vector<double>& L, const std::vector<double>& b, int d) {
  std::vector<double> y(b);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < i; ++k) y[i] -= L[static_cast<std::size_t>(i) * d + k] * y[k];
    y[i] /= L[static_cast<std::size_t>(i) * d + i];
  }
  for (int i = d - 1; i >= 0; --i) {
    for (int k = i + 1; k < d; ++k) y[i] -= L[static_cast<std::size_t>(k) * d + i] * y[k];
    y[i] /= L[static_cast<std::size_t>(i) * d + i];
  }
  return y;
}

std::vector<double> invert_spd(const std::vector<double>& m, int d, const char* what) {
  const std::vector<double> L = cholesky(m, d);
  if (L.empty()) throw NumericalDegeneracy(std::string(what) + ": matrix not positive definite");
  std::vector<double> inv(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> e(static_cast<std::size_t>(d), 0.0);
  for (int j = 0; j < d; ++j) {
    e.assign(static_cast<std::size_t>(d), 0.0);
    e[j] = 1.0;
    const std::vector<double> col = solve_spd(L, e, d);
    for (int i = 0; i < d; ++i) inv[static_cast<std::size_t>(i) * d + j] = col[i];
  }
  return inv;
}

}  // namespace

GaussianLinearPosterior GaussianLinearPosterior::isotropic_prior(int dim, double prior_variance,
                                                                 double noise_variance) {
  GaussianLinearPosterior post;
  post.mean.assign(static_cast<std::size_t>(dim), 0.0);
  post.cov.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) post.cov[static_cast<std::size_t>(i) * dim + i] = prior_variance;
  post.noise_variance = noise_variance;
  return post;
}

std::vector<double> GaussianLinearPosterior::sample(RandomSource& rng) const {
  const int d = dim();
  const std::vector<double> L = cholesky(cov, d);
  if (L.empty()) throw NumericalDegeneracy("GaussianLinearPosterior::sample: covariance not PD");
  std::vector<double> z(static_cast<std::size_t>(d));
  for (double& x : z) x = rng.normal();
  std::vector<double> out(mean);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k <= i; ++k) out[i] += L[static_cast<std::size_t>(i) * d + k] * z[k];
  return out;
}

GaussianLinearPosterior kalman_update(const GaussianLinearPosterior& post,
                                      const std::vector<double>& action, double reward) {
  const int d = post.dim();
  if (static_cast<int>(action.size()) != d)
    throw ContractViolation("kalman_update: dimension mismatch");
  // Information form: Sigma' = (Sigma^-1 + a a^T / s2)^-1,
  //                   mu'    = Sigma' (Sigma^-1 mu + a R / s2).
  const double s2 = post.noise_variance;
  std::vector<double> info = invert_spd(post.cov, d, "kalman_update");
  std::vector<double> info_mean(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) info_mean[i] += info[static_cast<std::size_t>(i) * d + j] * post.mean[j];
  for (int i = 0; i < d; ++i) {
    info_mean[i] += action[i] * reward / s2;
    for (int j = 0; j < d; ++j) info[static_cast<std::size_t>(i) * d + j] += action[i] * action[j] / s2;
  }
  GaussianLinearPosterior next;
  next.noise_variance = s2;
  next.cov = invert_spd(info, d, "kalman_update");
  // Symmetric re-projection keeps the factorization honest.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      const double v = 0.5 * (next.cov[static_cast<std::size_t>(i) * d + j] +
                              next.cov[static_cast<std::size_t>(j) * d + i]);
      next.cov[static_cast<std::size_t>(i) * d + j] = v;
      next.cov[static_cast<std::size_t>(j) * d + i] = v;
    }
  if (cholesky(next.cov, d).empty())
    throw NumericalDegeneracy("kalman_update: covariance lost positive definiteness");
  next.mean.assign(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      next.mean[i] += next.cov[static_cast<std::size_t>(i) * d + j] * info_mean[j];
  return next;
}

void DiscreteBelief::validate() const {
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw ContractViolation("DiscreteBelief: negative probability");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw ContractViolation("DiscreteBelief: probabilities must sum to 1");
}

int DiscreteBelief::sample(RandomSource& rng) const {
  return rng.categorical(probabilities);
}

ActionId thompson_select(const BetaPosterior& post, RandomSource& rng) {
  int best = 0;
  double best_value = -1.0;
  for (int a = 0; a < post.num_arms(); ++a) {
    const double draw = rng.beta(post.alpha[a], post.beta[a]);
    if (draw > best_value) {
      best_value = draw;
      best = a;
    }
  }
  return best;
}

ActionId thompson_select(const GaussianLinearPosterior& post,
                         const std::vector<std::vector<double>>& action_set, RandomSource& rng) {
  const std::vector<double> theta = post.sample(rng);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < action_set.size(); ++a) {
    double v = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) v += theta[i] * action_set[a][i];
    if (v > best_value) {
      best_value = v;
      best = static_cast<int>(a);
    }
  }
  return best;
}

ActionId thompson_select(const DiscreteBelief& belief,
                         const std::function<ActionId(int)>& optimal_action_of_hypothesis,
                         RandomSource& rng) {
  return optimal_action_of_hypothesis(belief.sample(rng));
}

ActionId satisficing_ts_select(const BetaPosterior& post, double eps, RandomSource& rng) {
  if (eps < 0.0) throw ContractViolation("satisficing_ts_select: eps must be >= 0");
  std::vector<double> draws(static_cast<std::size_t>(post.num_arms()));
  double best = -1.0;
  for (int a = 0; a < post.num_arms(); ++a) {
    draws[a] = rng.beta(post.alpha[a], post.beta[a]);
    best = std::max(best, draws[a]);
  }
  for (int a = 0; a < post.num_arms(); ++a)
    if (draws[a] >= best - eps) return a;
  return post.num_arms() - 1;  // unreachable: the max itself qualifies
}

}  // namespace rlinfo
