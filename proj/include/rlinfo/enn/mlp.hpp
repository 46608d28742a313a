#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rlinfo/random.hpp"
#include "rlinfo/types.hpp"

namespace rlinfo {

// Plain fully-connected network, ReLU hidden activations, linear output.
// Inputs arrive either as dense vectors or as a one-hot index; the one-hot
// path skips the first matrix product entirely.
struct Mlp {
  struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // out x in, row-major
    std::vector<double> b;  // out
  };

  std::vector<Layer> layers;

  int input_dim() const { return layers.front().in; }
  int output_dim() const { return layers.back().out; }

  std::size_t num_params() const {
    std::size_t n = 0;
    for (const Layer& l : layers) n += l.w.size() + l.b.size();
    return n;
  }

  // widths = {input, hidden..., output}; fan-in-scaled truncated Gaussian
  // weights, zero biases.
  static Mlp create(const std::vector<int>& widths, RandomSource& rng) {
    if (widths.size() < 2) throw ContractViolation("Mlp: needs input and output widths");
    Mlp net;
    for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
      Layer layer;
      layer.in = widths[i];
      layer.out = widths[i + 1];
      layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
      layer.b.assign(static_cast<std::size_t>(layer.out), 0.0);
      const double scale = 1.0 / std::sqrt(static_cast<double>(layer.in));
      for (double& v : layer.w) {
        double z;
        do {
          z = rng.normal();
        } while (std::fabs(z) > 2.0);
        v = scale * z;
      }
      net.layers.push_back(std::move(layer));
    }
    return net;
  }

  // Preallocated per-net activation storage for the training loop.
  struct Workspace {
    std::vector<std::vector<double>> act;    // act[l] = activation after layer l
    std::vector<std::vector<double>> delta;  // backprop buffers
    int onehot_input = -1;                   // set when forward used a one-hot
    std::vector<double> dense_input;

    void resize_if_needed(const Mlp& net) {
      if (act.size() != net.layers.size()) {
        act.resize(net.layers.size());
        delta.resize(net.layers.size());
      }
      for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const std::size_t out = static_cast<std::size_t>(net.layers[l].out);
        if (act[l].size() != out) {
          act[l].assign(out, 0.0);
          delta[l].assign(out, 0.0);
        }
      }
    }
  };

  // Gradient buffers shaped like the parameters.
  struct Grad {
    std::vector<Layer> layers;

    void resize(const Mlp& net) {
      layers.resize(net.layers.size());
      for (std::size_t l = 0; l < net.layers.size(); ++l) {
        layers[l].in = net.layers[l].in;
        layers[l].out = net.layers[l].out;
        layers[l].w.assign(net.layers[l].w.size(), 0.0);
        layers[l].b.assign(net.layers[l].b.size(), 0.0);
      }
    }
    void zero() {
      for (Layer& l : layers) {
        std::fill(l.w.begin(), l.w.end(), 0.0);
        std::fill(l.b.begin(), l.b.end(), 0.0);
      }
    }
  };

  const std::vector<double>& forward_onehot(int index, Workspace& ws) const {
    ws.resize_if_needed(*this);
    ws.onehot_input = index;
    const Layer& first = layers.front();
    if (index < 0 || index >= first.in) throw ContractViolation("Mlp: one-hot index out of range");
    for (int o = 0; o < first.out; ++o)
      ws.act[0][o] = first.w[static_cast<std::size_t>(o) * first.in + index] + first.b[o];
    finish_forward(ws);
    return ws.act.back();
  }

  const std::vector<double>& forward(const std::vector<double>& x, Workspace& ws) const {
    ws.resize_if_needed(*this);
    ws.onehot_input = -1;
    ws.dense_input = x;
    const Layer& first = layers.front();
    if (static_cast<int>(x.size()) != first.in)
      throw ContractViolation("Mlp: input dimension mismatch");
    for (int o = 0; o < first.out; ++o) {
      const double* row = &first.w[static_cast<std::size_t>(o) * first.in];
      double s = first.b[o];
      for (int i = 0; i < first.in; ++i) s += row[i] * x[i];
      ws.act[0][o] = s;
    }
    finish_forward(ws);
    return ws.act.back();
  }

  // Backprop dLoss/dOutput through the activations left in ws, adding
  // parameter gradients into grad.
  void backward(const std::vector<double>& dout, Workspace& ws, Grad& grad) const {
    const int last = static_cast<int>(layers.size()) - 1;
    ws.delta[last] = dout;
    for (int l = last; l >= 0; --l) {
      const Layer& layer = layers[l];
      const std::vector<double>& delta = ws.delta[l];
      // Bias and weight gradients.
      for (int o = 0; o < layer.out; ++o) grad.layers[l].b[o] += delta[o];
      if (l == 0) {
        if (ws.onehot_input >= 0) {
          for (int o = 0; o < layer.out; ++o)
            grad.layers[0].w[static_cast<std::size_t>(o) * layer.in + ws.onehot_input] += delta[o];
        } else {
          for (int o = 0; o < layer.out; ++o) {
            double* row = &grad.layers[0].w[static_cast<std::size_t>(o) * layer.in];
            for (int i = 0; i < layer.in; ++i) row[i] += delta[o] * ws.dense_input[i];
          }
        }
        break;
      }
      const std::vector<double>& below = ws.act[l - 1];  // post-ReLU activations
      for (int o = 0; o < layer.out; ++o) {
        double* row = &grad.layers[l].w[static_cast<std::size_t>(o) * layer.in];
        const double d = delta[o];
        for (int i = 0; i < layer.in; ++i) row[i] += d * below[i];
      }
      // Propagate through W and the ReLU mask.
      std::vector<double>& next_delta = ws.delta[l - 1];
      std::fill(next_delta.begin(), next_delta.end(), 0.0);
      for (int o = 0; o < layer.out; ++o) {
        const double d = delta[o];
        const double* row = &layer.w[static_cast<std::size_t>(o) * layer.in];
        for (int i = 0; i < layer.in; ++i) next_delta[i] += d * row[i];
      }
      for (int i = 0; i < layer.in; ++i)
        if (below[i] <= 0.0) next_delta[i] = 0.0;
    }
  }

 private:
  void finish_forward(Workspace& ws) const {
    for (std::size_t l = 1; l < layers.size(); ++l) {
      // ReLU on the previous layer's pre-activation (hidden layers only).
      std::vector<double>& prev = ws.act[l - 1];
      for (double& v : prev) v = v > 0.0 ? v : 0.0;
      const Layer& layer = layers[l];
      for (int o = 0; o < layer.out; ++o) {
        const double* row = &layer.w[static_cast<std::size_t>(o) * layer.in];
        double s = layer.b[o];
        for (int i = 0; i < layer.in; ++i) s += row[i] * prev[i];
        ws.act[l][o] = s;
      }
    }
  }
};

}  // namespace rlinfo
