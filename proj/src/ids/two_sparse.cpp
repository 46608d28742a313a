#include "rlinfo/ids/two_sparse.hpp"

#include <cmath>
#include <limits>

namespace rlinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pair_objective(double p, double sf_a, double sf_b, double g_a, double g_b,
                      double pessimism) {
  const double shortfall = p * sf_a + (1.0 - p) * sf_b;
  const double gain = p * g_a + (1.0 - p) * g_b;
  const double num = shortfall * shortfall + pessimism;
  if (num == 0.0 && gain <= 0.0) return 0.0;
  if (gain <= 0.0) return kInf;
  return num / gain;
}

}  // namespace

void ShortfallGainTable::validate() const {
  if (shortfall.empty() || shortfall.size() != gain.size())
    throw ContractViolation("ShortfallGainTable: empty or mismatched columns");
  for (std::size_t a = 0; a < shortfall.size(); ++a) {
    if (!(shortfall[a] >= 0.0) || !(gain[a] >= 0.0) || !std::isfinite(shortfall[a]) ||
        !std::isfinite(gain[a]))
      throw ContractViolation("ShortfallGainTable: entries must be finite and nonnegative");
  }
}

double ratio_objective(const std::vector<double>& nu, const ShortfallGainTable& table,
                       double pessimism) {
  if (static_cast<int>(nu.size()) != table.num_actions())
    throw ContractViolation("ratio_objective: nu size mismatch");
  double total = 0.0, shortfall = 0.0, gain = 0.0;
  for (std::size_t a = 0; a < nu.size(); ++a) {
    total += nu[a];
    shortfall += nu[a] * table.shortfall[a];
    gain += nu[a] * table.gain[a];
  }
  if (std::fabs(total - 1.0) > 1e-9) throw ContractViolation("ratio_objective: nu must sum to 1");
  const double num = shortfall * shortfall + pessimism;
  if (num == 0.0 && gain <= 0.0) return 0.0;
  if (gain <= 0.0) return kInf;
  return num / gain;
}

TwoSparseResult two_sparse_minimize(const ShortfallGainTable& table, int granularity,
                                    double pessimism) {
  table.validate();
  if (granularity < 2) throw ContractViolation("two_sparse_minimize: granularity too small");
  const int n = table.num_actions();
  TwoSparseResult result;

  double min_shortfall = table.shortfall[0];
  double max_gain = table.gain[0];
  for (int a = 1; a < n; ++a) {
    min_shortfall = std::min(min_shortfall, table.shortfall[a]);
    max_gain = std::max(max_gain, table.gain[a]);
  }

  if (max_gain == 0.0 && min_shortfall == 0.0) {
    // Whole table zero: documented fallback, uniform over min-shortfall
    // actions. The 2-sparse container cannot hold the uniform set, so the
    // support travels alongside for the caller to sample.
    for (int a = 0; a < n; ++a)
      if (table.shortfall[a] == 0.0) result.fallback_support.push_back(a);
    result.degenerate_fallback = true;
    result.nu = {result.fallback_support.front(), result.fallback_support.back(),
                 result.fallback_support.size() == 1 ? 1.0 : 0.5};
    result.objective = 0.0;
    return result;
  }

  if (pessimism == 0.0 && min_shortfall == 0.0) {
    // Zero-shortfall absorption: the ratio is zero on the lowest such
    // action and nonnegative everywhere.
    for (int a = 0; a < n; ++a)
      if (table.shortfall[a] == 0.0) {
        result.nu = {a, a, 1.0};
        result.objective = 0.0;
        return result;
      }
  }

  if (max_gain == 0.0) {
    // No information anywhere: every distribution is +inf (or the numerator
    // is pinned positive by pessimism); fall back to the min-shortfall
    // action, lowest index.
    for (int a = 0; a < n; ++a)
      if (table.shortfall[a] == min_shortfall) {
        result.nu = {a, a, 1.0};
        result.objective = pessimism > 0.0 || min_shortfall > 0.0 ? kInf : 0.0;
        return result;
      }
  }

  if (n == 1) {
    result.nu = {0, 0, 1.0};
    result.objective = pair_objective(1.0, table.shortfall[0], table.shortfall[0], table.gain[0],
                                      table.gain[0], pessimism);
    return result;
  }

  // Pairwise probability grid. Pairs scan lexicographically; within a pair
  // the probabilities scan outward from 1/2 (the larger value of each
  // equidistant pair first), so exact objective ties resolve to the lower
  // action pair, then to the most balanced mix, then to more probability
  // on the lower index. A symmetric table lands on (0, 1, 0.5).
  std::vector<int> scan_order;
  scan_order.reserve(static_cast<std::size_t>(granularity) + 1);
  scan_order.push_back(granularity / 2);
  for (int d = 1; scan_order.size() < static_cast<std::size_t>(granularity) + 1; ++d) {
    if (granularity / 2 + d <= granularity) scan_order.push_back(granularity / 2 + d);
    if (granularity / 2 - d >= 0) scan_order.push_back(granularity / 2 - d);
  }
  double best = kInf;
  int best_i = 0, best_j = 1, best_k = granularity / 2;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k : scan_order) {
        const double p = static_cast<double>(k) / granularity;
        const double obj = pair_objective(p, table.shortfall[i], table.shortfall[j],
                                          table.gain[i], table.gain[j], pessimism);
        // the relative margin keeps ulp-level rounding from breaking ties
        if (obj < best * (1.0 - 1e-9)) {
          best = obj;
          best_i = i;
          best_j = j;
          best_k = k;
        }
      }
    }
  }

  double best_p = static_cast<double>(best_k) / granularity;
  // Convex refinement along the winning pair; accepted only on strict
  // improvement so grid-level tie-breaking stays authoritative.
  if (std::isfinite(best) && best > 0.0) {
    double lo = std::max(0.0, best_p - 1.0 / granularity);
    double hi = std::min(1.0, best_p + 1.0 / granularity);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    auto f = [&](double p) {
      return pair_objective(p, table.shortfall[best_i], table.shortfall[best_j],
                            table.gain[best_i], table.gain[best_j], pessimism);
    };
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 90 && hi - lo > 1e-13; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = f(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = f(d);
      }
    }
    const double p_ref = 0.5 * (lo + hi);
    const double obj_ref = f(p_ref);
    if (obj_ref < best * (1.0 - 1e-9)) {
      best = obj_ref;
      best_p = p_ref;
    }
  }

  result.nu = {best_i, best_j, best_p};
  result.objective = best;
  return result;
}

}  // namespace rlinfo
