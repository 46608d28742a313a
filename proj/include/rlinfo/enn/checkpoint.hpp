#pragma once

#include <string>

#include "rlinfo/enn/ensemble.hpp"

namespace rlinfo {

// Versioned text tensor dump: a manifest line with member count, prior
// scale and layer shapes, then one whitespace-separated block of values
// per (member, trainable|prior, layer) in declaration order.
std::string save_checkpoint(const EnsembleMlp& net);
EnsembleMlp load_checkpoint(const std::string& text);

}  // namespace rlinfo
