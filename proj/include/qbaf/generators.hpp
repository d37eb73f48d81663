#pragma once

#include "qbaf/core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qbaf {

// Stock-trading decision: A1 recommends selling, A2 and A3 contradict A1's
// premises and recommend buying, sell and buy attack each other. Supports get
// weight +scale and attacks -scale. Unlisted base scores default to 0.5.
Qbaf stock_example(double scale, const std::map<std::string, double>& base_scores = {});

// Complete "blue/green" family: every blue argument attacks every blue
// argument (itself included) and supports every green one; symmetrically for
// green. All edges have magnitude `scale`.
Qbaf divergence_family(Index n_blue, Index n_green, double beta_blue, double beta_green, double scale);

struct WeightMode {
  enum class Kind { UnitSigned, BoundedMagnitude } kind = Kind::UnitSigned;
  double bound = 1.0;

  static WeightMode unit() { return {}; }
  static WeightMode bounded(double w) { return {Kind::BoundedMagnitude, w}; }
};

struct RandomQbafParams {
  Index n_args = 10;
  double edge_density = 0.2;
  bool acyclic = true;
  WeightMode weight_mode = WeightMode::unit();
  double base_lo = 0.0;
  double base_hi = 1.0;
  std::uint64_t seed = 0;
  // Parents per argument are capped at this count (0 = no cap).
  Index max_in_degree = 0;
  // When positive, base scores are drawn from {lo, lo + g, ...} (multiples
  // of g inside the range); repeated values give the property checkers
  // more witnesses.
  double base_grid = 0.0;
  // Probability of replacing a drawn base score by 0 or 1.
  double extreme_probability = 0.0;

  void check() const;
};

// Deterministic given params.seed. Acyclic instances only draw edges that
// follow a random permutation of the arguments; cyclic instances may contain
// self-loops. BoundedMagnitude weights satisfy 0 < |w| <= bound.
Qbaf random_qbaf(const RandomQbafParams& params);

// splitmix64 step; derives independent per-instance seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qbaf
