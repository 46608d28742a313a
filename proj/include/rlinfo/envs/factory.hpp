#pragma once

#include <map>
#include <memory>
#include <string>

#include "rlinfo/env.hpp"

namespace rlinfo {

// Flat parameter record used by the harness config format.
struct EnvParams {
  std::string name;
  std::map<std::string, double> values;

  double get(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const { return values.count(key) != 0; }
};

// Builds one of the named environments; throws ContractViolation on an
// unknown name or out-of-range parameter.
std::unique_ptr<Environment> make_environment(const EnvParams& params, std::uint64_t seed);

}  // namespace rlinfo
