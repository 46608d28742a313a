#pragma once

#include <string>

namespace rlinfo {

// Static SVG reproduction of one aggregate CSV. Kinds:
//   scaling   - per-cell median learning time against a swept size column,
//               log2 y-axis, optional dashed reference curve
//   lines     - first column as x, remaining numeric columns as series
// reference: "pow2" (2^x), "identity" (y = x), "log" (log x), or "".
std::string emit_plot(const std::string& csv_text, const std::string& kind,
                      const std::string& reference = "");

}  // namespace rlinfo
