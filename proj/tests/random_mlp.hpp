#pragma once

#include "qbaf/mlp.hpp"

#include <optional>
#include <random>
#include <vector>

namespace testing_aid {

using qbaf::Index;
using qbaf::Mlp;
using qbaf::MlpDraft;

// Random layered network; layer sizes in [1, 5], each consecutive pair of
// nodes wired with probability 0.6.
inline Mlp random_mlp(std::mt19937_64& rng, int n_layers) {
  std::uniform_int_distribution<int> width(1, 5);
  std::normal_distribution<double> gauss(0.0, 1.5);
  std::bernoulli_distribution wire(0.6);
  MlpDraft d;
  std::vector<std::vector<Index>> ids(n_layers);
  for (int l = 0; l < n_layers; ++l) {
    const int k = width(rng);
    for (int j = 0; j < k; ++j) {
      std::optional<double> b;
      if (l > 0) b = gauss(rng);
      ids[l].push_back(d.add_node(static_cast<std::size_t>(l), b));
    }
  }
  for (int l = 1; l < n_layers; ++l)
    for (auto t : ids[l])
      for (auto s : ids[l - 1]) {
        if (!wire(rng)) continue;
        double w = gauss(rng);
        if (w == 0.0) w = 1.0;
        d.add_edge(s, t, w);
      }
  return Mlp(std::move(d));
}

inline qbaf::InputAssignment random_inputs(std::mt19937_64& rng, Index n) {
  std::uniform_real_distribution<double> u(0, 1);
  qbaf::InputAssignment x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace testing_aid
