#pragma once

#include <vector>

#include "rlinfo/types.hpp"

namespace rlinfo {

// Between-class variance gain for the optimal-action learning target
// (class = argmax of each sampled value vector, lowest index on ties):
//   gain_a = (1/n) * sum_classes |class| * (class_mean(a) - overall_mean(a))^2.
// samples[i][a] is draw i's value for action a; needs n >= 2.
std::vector<double> variance_gain_optimal_action(const std::vector<std::vector<double>>& samples);

// GVF-target gain: per-action sample variance summed over components,
//   gain_a = (1/n) * sum_i sum_j (Q[a][j][i] - mean_i(a))^2.
// samples[a][j][i] is draw j's value of component i at action a.
std::vector<double> variance_gain_gvf(
    const std::vector<std::vector<std::vector<double>>>& samples);

}  // namespace rlinfo
