#include "rlinfo/ids/gains.hpp"

namespace rlinfo {

std::vector<double> variance_gain_optimal_action(const std::vector<std::vector<double>>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw ContractViolation("variance_gain_optimal_action: needs >= 2 samples");
  const int num_actions = static_cast<int>(samples[0].size());

  std::vector<double> overall(num_actions, 0.0);
  std::vector<std::vector<double>> class_sum(num_actions, std::vector<double>(num_actions, 0.0));
  std::vector<int> class_count(num_actions, 0);
  for (const auto& draw : samples) {
    int cls = 0;
    for (int a = 1; a < num_actions; ++a)
      if (draw[a] > draw[cls]) cls = a;
    ++class_count[cls];
    for (int a = 0; a < num_actions; ++a) {
      overall[a] += draw[a];
      class_sum[cls][a] += draw[a];
    }
  }
  for (double& v : overall) v /= n;

  std::vector<double> gain(num_actions, 0.0);
  for (int cls = 0; cls < num_actions; ++cls) {
    if (class_count[cls] == 0) continue;
    for (int a = 0; a < num_actions; ++a) {
      const double class_mean = class_sum[cls][a] / class_count[cls];
      const double d = class_mean - overall[a];
      gain[a] += class_count[cls] * d * d;
    }
  }
  for (double& g : gain) g /= n;
  return gain;
}

std::vector<double> variance_gain_gvf(
    const std::vector<std::vector<std::vector<double>>>& samples) {
  std::vector<double> gain(samples.size(), 0.0);
  for (std::size_t a = 0; a < samples.size(); ++a) {
    const auto& draws = samples[a];
    const int n = static_cast<int>(draws.size());
    if (n < 2) throw ContractViolation("variance_gain_gvf: needs >= 2 samples");
    const std::size_t dim = draws[0].size();
    for (std::size_t i = 0; i < dim; ++i) {
      double mean = 0.0;
      for (int j = 0; j < n; ++j) mean += draws[j][i];
      mean /= n;
      double ss = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = draws[j][i] - mean;
        ss += d * d;
      }
      gain[a] += ss / n;
    }
  }
  return gain;
}

}  // namespace rlinfo
