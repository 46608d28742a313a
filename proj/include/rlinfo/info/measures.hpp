#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlinfo/types.hpp"

namespace rlinfo {

enum class LogBase { bits, nats };

inline double from_nats(double x, LogBase base) {
  return base == LogBase::bits ? x / 0.6931471805599453 : x;
}

// Shannon entropy with the 0 log 0 = 0 convention. Base-2 by default.
double entropy(const std::vector<double>& dist, LogBase base = LogBase::bits);

// I(X;Y) from a joint probability matrix p[x][y]; must sum to 1.
double mutual_information(const std::vector<std::vector<double>>& joint,
                          LogBase base = LogBase::bits);

// I(X;Z | Y) from a joint tensor p[x][y][z].
double conditional_mutual_information(
    const std::vector<std::vector<std::vector<double>>>& joint,
    LogBase base = LogBase::bits);

struct KlResult {
  double value = 0.0;        // nats; +inf on support violation
  bool support_violated = false;
};

// d_KL(p || q) in nats; flags (and returns +inf) when support(p) is not
// contained in support(q).
KlResult kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// Pinsker: |E_p - E_q| <= sqrt(d_KL/2) for [0,1]-supported outcome values.
double pinsker_mean_gap_bound(double kl_nats);

// Outcome counts with derived probabilities.
struct EmpiricalDistribution {
  std::vector<std::string> labels;
  std::vector<double> counts;

  double total() const;
  std::vector<double> probabilities() const;
  double entropy(LogBase base = LogBase::bits) const;
};

}  // namespace rlinfo
