#pragma once

#include "qbaf/core.hpp"

#include <cmath>
#include <optional>

namespace qbaf {

// Structural quantities behind the convergence guarantee. `contraction` is
// the Lipschitz constant of u in the infinity norm: (max |w|) * (max parents)
// times 1/4, the bound on the logistic derivative.
struct GuaranteeReport {
  bool acyclic = true;
  Index max_parents = 0;
  double max_weight = 0;
  double contraction = 0;
  bool guaranteed = true;
  bool bound_formula_applicable = true;
};

template <class Scalar>
GuaranteeReport analyze(const BasicQbaf<Scalar>& q) {
  GuaranteeReport r;
  r.acyclic = is_acyclic(q);
  for (Index a = 0; a < q.size(); ++a) r.max_parents = std::max(r.max_parents, q.in_degree(a));
  for (const auto& e : q.edges()) r.max_weight = std::max(r.max_weight, std::abs(static_cast<double>(e.weight)));
  const double wp = r.max_weight * static_cast<double>(r.max_parents);
  r.contraction = wp / 4.0;
  r.bound_formula_applicable = wp < 4.0;
  r.guaranteed = r.acyclic || r.bound_formula_applicable;
  return r;
}

// Smallest n with n > log(eps) / log(W*P/4); nullopt when W*P >= 4.
inline std::optional<Index> iteration_bound(double epsilon, double max_weight, Index max_parents) {
  if (!(epsilon > 0)) throw Error(ErrorKind::NonPositiveEpsilon, "epsilon must be positive");
  const double contraction = max_weight * static_cast<double>(max_parents) / 4.0;
  if (contraction >= 1.0) return std::nullopt;
  // Every strength is in [0,1], so any eps above 1 holds before the first step.
  if (epsilon > 1.0) return Index(0);
  if (contraction == 0.0) return Index(1);
  const double ratio = std::log(epsilon) / std::log(contraction);
  return std::max<Index>(0, static_cast<Index>(std::floor(ratio)) + 1);
}

inline std::optional<Index> iteration_bound(double epsilon, const GuaranteeReport& r) {
  return iteration_bound(epsilon, r.max_weight, r.max_parents);
}

}  // namespace qbaf
