#include "qbaf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qbaf {

Qbaf stock_example(double scale, const std::map<std::string, double>& base_scores) {
  if (!(scale > 0)) throw Error(ErrorKind::NonPositiveScale, "edge scale must be positive");
  static const char* const names[] = {"A1", "A2", "A3", "sell", "buy"};
  for (const auto& [name, _] : base_scores) {
    if (std::find_if(std::begin(names), std::end(names), [&](const char* n) { return name == n; }) == std::end(names))
      throw Error(ErrorKind::UnknownArgument, "stock example has no argument '" + name + "'");
  }

  QbafDraft<double> d;
  for (const char* name : names) {
    const auto it = base_scores.find(name);
    d.add_argument(it == base_scores.end() ? 0.5 : it->second, name);
  }
  enum { A1, A2, A3, Sell, Buy };
  d.add_edge(A2, A1, -scale);
  d.add_edge(A3, A1, -scale);
  d.add_edge(A2, Buy, scale);
  d.add_edge(A3, Buy, scale);
  d.add_edge(A1, Sell, scale);
  d.add_edge(Sell, Buy, -scale);
  d.add_edge(Buy, Sell, -scale);
  return Qbaf(std::move(d));
}

Qbaf divergence_family(Index n_blue, Index n_green, double beta_blue, double beta_green, double scale) {
  if (n_blue < 1 || n_green < 1) throw Error(ErrorKind::InvalidConfig, "both colour classes need at least one argument");
  if (!(scale > 0)) throw Error(ErrorKind::NonPositiveScale, "edge scale must be positive");
  QbafDraft<double> d;
  for (Index i = 0; i < n_blue; ++i) d.add_argument(beta_blue, "b" + std::to_string(i + 1));
  for (Index i = 0; i < n_green; ++i) d.add_argument(beta_green, "g" + std::to_string(i + 1));
  const Index n = n_blue + n_green;
  const auto blue = [&](Index a) { return a < n_blue; };
  for (Index src = 0; src < n; ++src)
    for (Index dst = 0; dst < n; ++dst) d.add_edge(src, dst, blue(src) == blue(dst) ? -scale : scale);
  return Qbaf(std::move(d));
}

void RandomQbafParams::check() const {
  if (n_args < 0) throw Error(ErrorKind::InvalidConfig, "n_args must be non-negative");
  if (!(edge_density >= 0 && edge_density <= 1)) throw Error(ErrorKind::InvalidConfig, "edge_density must be in [0,1]");
  if (!(base_lo >= 0 && base_lo <= base_hi && base_hi <= 1))
    throw Error(ErrorKind::InvalidConfig, "base score range must satisfy 0 <= lo <= hi <= 1");
  if (weight_mode.kind == WeightMode::Kind::BoundedMagnitude && !(weight_mode.bound > 0))
    throw Error(ErrorKind::InvalidConfig, "weight bound must be positive");
  if (max_in_degree < 0) throw Error(ErrorKind::InvalidConfig, "max_in_degree must be non-negative");
  if (base_grid < 0) throw Error(ErrorKind::InvalidConfig, "base_grid must be non-negative");
  if (!(extreme_probability >= 0 && extreme_probability <= 1))
    throw Error(ErrorKind::InvalidConfig, "extreme_probability must be in [0,1]");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Qbaf random_qbaf(const RandomQbafParams& p) {
  p.check();
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  QbafDraft<double> d;
  for (Index a = 0; a < p.n_args; ++a) {
    double beta;
    if (p.base_grid > 0) {
      const auto steps = static_cast<long>(std::floor((p.base_hi - p.base_lo) / p.base_grid + 1e-9));
      std::uniform_int_distribution<long> pick(0, steps);
      beta = std::min(p.base_hi, p.base_lo + p.base_grid * static_cast<double>(pick(rng)));
    } else {
      beta = p.base_lo + (p.base_hi - p.base_lo) * unit(rng);
    }
    if (p.extreme_probability > 0 && unit(rng) < p.extreme_probability) beta = unit(rng) < 0.5 ? 0.0 : 1.0;
    d.add_argument(beta);
  }

  std::vector<Index> rank(p.n_args);
  std::iota(rank.begin(), rank.end(), Index(0));
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<Index> position(p.n_args);
  for (Index i = 0; i < p.n_args; ++i) position[rank[i]] = i;

  const auto draw_weight = [&] {
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    if (p.weight_mode.kind == WeightMode::Kind::UnitSigned) return sign;
    // (0, bound]: 1 - U lies in (0, 1].
    return sign * p.weight_mode.bound * (1.0 - unit(rng));
  };

  for (Index target = 0; target < p.n_args; ++target) {
    std::vector<Index> candidates;
    for (Index source = 0; source < p.n_args; ++source) {
      if (p.acyclic && position[source] >= position[target]) continue;
      if (unit(rng) < p.edge_density) candidates.push_back(source);
    }
    if (p.max_in_degree > 0 && static_cast<Index>(candidates.size()) > p.max_in_degree) {
      std::shuffle(candidates.begin(), candidates.end(), rng);
      candidates.resize(p.max_in_degree);
      std::sort(candidates.begin(), candidates.end());
    }
    for (auto source : candidates) d.add_edge(source, target, draw_weight());
  }
  return Qbaf(std::move(d));
}

}  // namespace qbaf
