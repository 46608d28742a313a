#pragma once

#include <string>
#include <vector>

#include "rlinfo/harness/sweep.hpp"

namespace rlinfo {

// Checked-in desk-scale sweeps reproducing the reference figures; seed
// counts are scaled down and documented per preset.
std::vector<std::string> preset_names();
SweepSpec preset(const std::string& name);
std::string preset_description(const std::string& name);

}  // namespace rlinfo
