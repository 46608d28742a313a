#pragma once

#include <any>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rlinfo {

// Index into the action set of one particular environment.
using ActionId = int;

// Discrete token or fixed-dimension real vector; the shape is declared by
// the environment and stays fixed for the whole run.
struct Observation {
  std::variant<int, std::vector<double>> value;

  Observation() : value(0) {}
  Observation(int token) : value(token) {}  // NOLINT: implicit by design
  Observation(std::vector<double> v) : value(std::move(v)) {}

  bool is_token() const { return std::holds_alternative<int>(value); }
  int token() const { return std::get<int>(value); }
  const std::vector<double>& vec() const { return std::get<std::vector<double>>(value); }

  // CSV encoding: integer token, or semicolon-joined reals.
  std::string encode() const {
    if (is_token()) return std::to_string(token());
    std::ostringstream out;
    const auto& v = vec();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ';';
      out << v[i];
    }
    return out.str();
  }

  bool operator==(const Observation& other) const { return value == other.value; }
};

// One agent-environment interaction step.
struct Transition {
  int state_before = 0;  // environment-internal (aleatoric) state id
  ActionId action = 0;
  Observation observation;
  double reward = 0.0;
  int state_after = 0;
  bool episode_terminal = false;
};

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct NumericalDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Agent state triple. The three components are opaque per-agent records;
// action selection reads only this struct, never raw history.
struct AgentState {
  std::any algorithmic;  // Z: cached computation / randomization
  std::any aleatoric;    // S: situation summary
  std::any epistemic;    // P: knowledge about the environment
};

}  // namespace rlinfo
