#pragma once

#include "qbaf/core.hpp"

#include <deque>

namespace qbaf {

template <class Scalar>
struct IterationConfig {
  Scalar tolerance = Scalar(1e-6);
  Index max_iterations = 10000;
  bool record_trajectory = false;
  // Compare against the state this many steps back to detect cycling.
  // 0 disables detection; 1 is rejected (it would duplicate the step test).
  Index oscillation_window = 2;

  void check() const {
    if (!(tolerance > Scalar(0))) throw Error(ErrorKind::InvalidConfig, "tolerance must be positive");
    if (max_iterations < 1) throw Error(ErrorKind::InvalidConfig, "max_iterations must be at least 1");
    if (oscillation_window == 1 || oscillation_window < 0)
      throw Error(ErrorKind::InvalidConfig, "oscillation_window must be 0 or >= 2");
  }
};

template <class Scalar>
Scalar logistic(Scalar z) {
  using std::exp;
  if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-z));
  const Scalar e = exp(z);
  return e / (Scalar(1) + e);
}

// phi(logit(beta) + alpha) with the infinite-limit conventions: base scores 0
// and 1 are absorbing, and alpha = +-inf saturates every other base score.
template <class Scalar>
Scalar influence(Scalar beta, Scalar alpha) {
  using std::log;
  using std::log1p;
  if (beta <= Scalar(0)) return Scalar(0);
  if (beta >= Scalar(1)) return Scalar(1);
  if (alpha == Scalar(0)) return beta;
  if (std::isinf(static_cast<double>(alpha))) return alpha > Scalar(0) ? Scalar(1) : Scalar(0);
  return logistic(log(beta) - log1p(-beta) + alpha);
}

template <class Scalar, class Derived>
Scalar aggregate(const BasicQbaf<Scalar>& q, const Eigen::MatrixBase<Derived>& s, ArgumentId a) {
  if (!q.contains(a)) throw Error(ErrorKind::UnknownArgument, "unknown argument #" + std::to_string(a + 1));
  return q.weights().row(a).dot(s);
}

template <class Scalar, class Derived>
Vector<Scalar> update(const BasicQbaf<Scalar>& q, const Eigen::MatrixBase<Derived>& s) {
  eigen_assert(s.size() == q.size());
  const Vector<Scalar> alpha = q.weights() * s;
  const auto& beta = q.base_scores();
  Vector<Scalar> out(q.size());
  for (Index i = 0; i < q.size(); ++i) out[i] = influence(beta[i], alpha[i]);
  return out;
}

template <class Scalar, class Derived>
Scalar residual(const BasicQbaf<Scalar>& q, const Eigen::MatrixBase<Derived>& s) {
  if (q.size() == 0) return Scalar(0);
  return (update(q, s) - s).template lpNorm<Eigen::Infinity>();
}

// One pass over a topological order; each argument is evaluated once.
template <class Scalar>
Interpretation<Scalar> solve_acyclic(const BasicQbaf<Scalar>& q) {
  const auto order = topological_order(q);
  Vector<Scalar> s = q.base_scores();
  for (auto a : order) s[a] = influence(q.base_score(a), Scalar(q.weights().row(a).dot(s)));
  return Interpretation<Scalar>::defined(std::move(s));
}

// Synchronous fixed-point iteration s_{k+1} = u(s_k) from s_0 = beta.
template <class Scalar>
SolveReport<Scalar> iterate(const BasicQbaf<Scalar>& q, const IterationConfig<Scalar>& cfg = {}) {
  cfg.check();
  SolveReport<Scalar> report;
  Vector<Scalar> current = q.base_scores();
  if (cfg.record_trajectory) report.trajectory.emplace().push_back({Scalar(0), current});

  // Holds s_{k-window} .. s_{k-1}; front() is the comparison state.
  std::deque<Vector<Scalar>> history;
  const auto window = static_cast<std::size_t>(cfg.oscillation_window);

  for (Index k = 1; k <= cfg.max_iterations; ++k) {
    Vector<Scalar> next = update(q, current);
    const Scalar change = q.size() == 0 ? Scalar(0) : (next - current).template lpNorm<Eigen::Infinity>();
    if (cfg.record_trajectory) report.trajectory->push_back({Scalar(k), next});
    report.steps = k;
    report.residual = change;

    if (change < cfg.tolerance) {
      report.status = SolveStatus::Converged;
      report.interpretation = Interpretation<Scalar>::defined(std::move(next));
      return report;
    }
    if (window >= 2) {
      history.push_back(std::move(current));
      if (history.size() > window) history.pop_front();
      if (history.size() == window) {
        if ((next - history.front()).template lpNorm<Eigen::Infinity>() < cfg.tolerance) {
          report.status = SolveStatus::Oscillating;
          report.interpretation = Interpretation<Scalar>::undefined(q.size());
          return report;
        }
      }
    }
    current = std::move(next);
  }
  report.status = SolveStatus::MaxIterationsExceeded;
  report.interpretation = Interpretation<Scalar>::undefined(q.size());
  return report;
}

}  // namespace qbaf
