#include "rlinfo/enn/checkpoint.hpp"

#include <sstream>

namespace rlinfo {

namespace {
constexpr const char* kMagic = "enn-checkpoint-v1";
}

std::string save_checkpoint(const EnsembleMlp& net) {
  std::ostringstream out;
  out.precision(17);
  out << kMagic << '\n';
  out << net.num_members() << ' ' << net.prior_scale() << '\n';
  const Mlp& first = net.member(0);
  out << first.layers.size();
  for (const Mlp::Layer& l : first.layers) out << ' ' << l.in << ' ' << l.out;
  out << '\n';
  auto dump = [&out](const Mlp& m) {
    for (const Mlp::Layer& l : m.layers) {
      for (double v : l.w) out << v << ' ';
      for (double v : l.b) out << v << ' ';
      out << '\n';
    }
  };
  for (int z = 0; z < net.num_members(); ++z) {
    dump(net.member(z));
    dump(net.prior_member(z));
  }
  return out.str();
}

EnsembleMlp load_checkpoint(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  in >> magic;
  if (magic != kMagic) throw ContractViolation("checkpoint: unknown format tag");
  int members = 0;
  double prior_scale = 0.0;
  in >> members >> prior_scale;
  std::size_t num_layers = 0;
  in >> num_layers;
  std::vector<int> widths;
  for (std::size_t l = 0; l < num_layers; ++l) {
    int lin = 0, lout = 0;
    in >> lin >> lout;
    if (l == 0) widths.push_back(lin);
    widths.push_back(lout);
  }
  RandomSource scratch(0);
  EnsembleMlp net(members, widths, prior_scale, scratch);
  auto fill = [&in](Mlp& m) {
    for (Mlp::Layer& l : m.layers) {
      for (double& v : l.w) in >> v;
      for (double& v : l.b) in >> v;
    }
  };
  for (int z = 0; z < members; ++z) {
    fill(net.mutable_member(z));
    fill(const_cast<Mlp&>(net.prior_member(z)));
  }
  if (!in) throw ContractViolation("checkpoint: truncated tensor data");
  return net;
}

}  // namespace rlinfo
