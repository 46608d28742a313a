#include "rlinfo/info/measures.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace rlinfo {

namespace {

double entropy_nats(const std::vector<double>& dist) {
  double h = 0.0;
  for (double p : dist) {
    if (p < -1e-12) throw ContractViolation("entropy: negative probability");
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double entropy(const std::vector<double>& dist, LogBase base) {
  double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  if (std::fabs(total - 1.0) > 1e-9)
    throw ContractViolation("entropy: distribution does not sum to 1");
  return from_nats(entropy_nats(dist), base);
}

double mutual_information(const std::vector<std::vector<double>>& joint, LogBase base) {
  double total = 0.0;
  std::vector<double> px(joint.size(), 0.0);
  std::vector<double> py;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    if (py.empty()) py.assign(joint[x].size(), 0.0);
    for (std::size_t y = 0; y < joint[x].size(); ++y) {
      px[x] += joint[x][y];
      py[y] += joint[x][y];
      total += joint[x][y];
    }
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw ContractViolation("mutual_information: joint does not sum to 1");
  double mi = 0.0;
  for (std::size_t x = 0; x < joint.size(); ++x)
    for (std::size_t y = 0; y < joint[x].size(); ++y) {
      const double pxy = joint[x][y];
      if (pxy > 0.0) mi += pxy * std::log(pxy / (px[x] * py[y]));
    }
  // Clamp the tiny negative values numerical cancellation can produce.
  if (mi < 0.0 && mi > -1e-12) mi = 0.0;
  return from_nats(mi, base);
}

double conditional_mutual_information(
    const std::vector<std::vector<std::vector<double>>>& joint, LogBase base) {
  // I(X;Z|Y) = sum_y p(y) * I(X;Z | Y=y)
  const std::size_t nx = joint.size();
  const std::size_t ny = joint[0].size();
  double result = 0.0;
  for (std::size_t y = 0; y < ny; ++y) {
    double py = 0.0;
    std::vector<std::vector<double>> slice(nx);
    for (std::size_t x = 0; x < nx; ++x) {
      slice[x] = joint[x][y];
      for (double v : slice[x]) py += v;
    }
    if (py <= 0.0) continue;
    for (auto& row : slice)
      for (double& v : row) v /= py;
    result += py * mutual_information(slice, LogBase::nats);
  }
  return from_nats(result, base);
}

KlResult kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ContractViolation("kl_divergence: size mismatch");
  KlResult r;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      r.support_violated = true;
      r.value = std::numeric_limits<double>::infinity();
      return r;
    }
    r.value += p[i] * std::log(p[i] / q[i]);
  }
  if (r.value < 0.0 && r.value > -1e-12) r.value = 0.0;
  return r;
}

double pinsker_mean_gap_bound(double kl_nats) { return std::sqrt(0.5 * kl_nats); }

double EmpiricalDistribution::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

std::vector<double> EmpiricalDistribution::probabilities() const {
  const double t = total();
  if (t <= 0.0) throw ContractViolation("EmpiricalDistribution: empty");
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0.0) throw ContractViolation("EmpiricalDistribution: negative count");
    probs[i] = counts[i] / t;
  }
  return probs;
}

double EmpiricalDistribution::entropy(LogBase base) const {
  return rlinfo::entropy(probabilities(), base);
}

}  // namespace rlinfo
