#pragma once

#include <cmath>
#include <vector>

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

// Ensemble of logit vectors over a finite candidate set (the rewarding arm
// or rewarding chain transition). Trained by cross-entropy against the
// candidate set consistent with each observation.
class LogitEnsemble {
 public:
  LogitEnsemble(int num_members, int num_candidates, double init_std, RandomSource& rng)
      : num_candidates_(num_candidates) {
    if (num_members < 1 || num_candidates < 2)
      throw ContractViolation("LogitEnsemble: bad sizes");
    logits_.assign(static_cast<std::size_t>(num_members),
                   std::vector<double>(static_cast<std::size_t>(num_candidates)));
    for (auto& member : logits_)
      for (double& l : member) l = init_std * rng.normal();
  }

  int num_members() const { return static_cast<int>(logits_.size()); }
  int num_candidates() const { return num_candidates_; }
  const std::vector<double>& logits(int z) const { return logits_[check(z)]; }

  std::vector<double> softmax(int z) const {
    const std::vector<double>& l = logits_[check(z)];
    double mx = l[0];
    for (double x : l) mx = std::max(mx, x);
    std::vector<double> p(l.size());
    double total = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      p[i] = std::exp(l[i] - mx);
      total += p[i];
    }
    for (double& x : p) x /= total;
    return p;
  }

  // Member's point estimate: argmax logit, lowest index on ties.
  int map_candidate(int z) const {
    const std::vector<double>& l = logits_[check(z)];
    int best = 0;
    for (std::size_t i = 1; i < l.size(); ++i)
      if (l[i] > l[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    return best;
  }

  // -log P_z(consistent set).
  double cross_entropy(int z, const std::vector<char>& consistent) const {
    const std::vector<double> p = softmax(z);
    double mass = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (consistent[i]) mass += p[i];
    return -std::log(std::max(mass, 1e-300));
  }

  // One SGD step per member on the categorical cross-entropy against the
  // restricted-uniform target (the Bayes posterior of a flat prior under
  // indicator evidence). Gradient: p - uniform_over_consistent.
  double train_step_restricted_uniform(const std::vector<char>& consistent,
                                       double learning_rate) {
    int support = 0;
    for (char c : consistent) support += c ? 1 : 0;
    if (support == 0) throw ContractViolation("LogitEnsemble: empty consistent set");
    const double target = 1.0 / support;
    double mean_loss = 0.0;
    for (auto& member : logits_) {
      double mx = member[0];
      for (double x : member) mx = std::max(mx, x);
      double total = 0.0;
      std::vector<double> p(member.size());
      for (std::size_t i = 0; i < member.size(); ++i) {
        p[i] = std::exp(member[i] - mx);
        total += p[i];
      }
      double loss = 0.0;
      for (std::size_t i = 0; i < member.size(); ++i) {
        p[i] /= total;
        if (consistent[i]) loss -= target * std::log(std::max(p[i], 1e-300));
        member[i] -= learning_rate * (p[i] - (consistent[i] ? target : 0.0));
      }
      mean_loss += loss;
    }
    return mean_loss / num_members();
  }

  // One SGD step on the cross-entropy for every member; returns the mean
  // loss before the step.
  double train_step(const std::vector<char>& consistent, double learning_rate) {
    if (static_cast<int>(consistent.size()) != num_candidates_)
      throw ContractViolation("LogitEnsemble: consistency mask size mismatch");
    double mean_loss = 0.0;
    for (auto& member : logits_) {
      // softmax of this member
      double mx = member[0];
      for (double x : member) mx = std::max(mx, x);
      double total = 0.0;
      std::vector<double> p(member.size());
      for (std::size_t i = 0; i < member.size(); ++i) {
        p[i] = std::exp(member[i] - mx);
        total += p[i];
      }
      double mass = 0.0;
      for (std::size_t i = 0; i < member.size(); ++i) {
        p[i] /= total;
        if (consistent[i]) mass += p[i];
      }
      mass = std::max(mass, 1e-300);
      mean_loss += -std::log(mass);
      for (std::size_t i = 0; i < member.size(); ++i) {
        const double grad = p[i] - (consistent[i] ? p[i] / mass : 0.0);
        member[i] -= learning_rate * grad;
      }
    }
    return mean_loss / num_members();
  }

 private:
  std::size_t check(int z) const {
    if (z < 0 || z >= num_members())
      throw ContractViolation("LogitEnsemble: epistemic index out of range");
    return static_cast<std::size_t>(z);
  }

  int num_candidates_;
  std::vector<std::vector<double>> logits_;
};

}  // namespace rlinfo
