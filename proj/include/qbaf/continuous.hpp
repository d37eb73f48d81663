#pragma once

#include "qbaf/discrete.hpp"

namespace qbaf {

template <class Scalar>
struct IntegrationConfig {
  Scalar step = Scalar(0.05);
  Scalar tolerance = Scalar(1e-6);
  Scalar max_time = Scalar(1000);
  bool record_trajectory = false;

  void check() const {
    if (!(step > Scalar(0))) throw Error(ErrorKind::InvalidConfig, "step must be positive");
    if (!(tolerance > Scalar(0))) throw Error(ErrorKind::InvalidConfig, "tolerance must be positive");
    if (!(max_time >= step)) throw Error(ErrorKind::InvalidConfig, "max_time must be at least one step");
  }
};

// df/dt = u(f) - f; every component lies in [-1, 1].
template <class Scalar, class Derived>
Vector<Scalar> derivative(const BasicQbaf<Scalar>& q, const Eigen::MatrixBase<Derived>& f) {
  return update(q, f) - f;
}

namespace detail {

template <class Scalar>
Vector<Scalar> rk4_advance(const BasicQbaf<Scalar>& q, const Vector<Scalar>& f, const Vector<Scalar>& k1, Scalar h) {
  const Scalar half = h / Scalar(2);
  const Vector<Scalar> k2 = derivative(q, f + half * k1);
  const Vector<Scalar> k3 = derivative(q, f + half * k2);
  const Vector<Scalar> k4 = derivative(q, f + h * k3);
  Vector<Scalar> next = f + (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
  return next.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
}

}  // namespace detail

// Classical four-stage Runge-Kutta step, clamped to the unit cube.
template <class Scalar, class Derived>
Vector<Scalar> rk4_step(const BasicQbaf<Scalar>& q, const Eigen::MatrixBase<Derived>& f, Scalar h) {
  if (!(h > Scalar(0))) throw Error(ErrorKind::InvalidConfig, "step must be positive");
  const Vector<Scalar> start = f;
  return detail::rk4_advance(q, start, derivative(q, start), h);
}

// Integrates from f(0) = beta until the derivative (equivalently the
// fixed-point residual of u) drops below the tolerance.
template <class Scalar>
SolveReport<Scalar> integrate(const BasicQbaf<Scalar>& q, const IntegrationConfig<Scalar>& cfg = {}) {
  cfg.check();
  SolveReport<Scalar> report;
  Vector<Scalar> f = q.base_scores();
  if (cfg.record_trajectory) report.trajectory.emplace().push_back({Scalar(0), f});

  for (Index steps = 0;; ++steps) {
    const Vector<Scalar> d = derivative(q, f);
    const Scalar r = q.size() == 0 ? Scalar(0) : d.template lpNorm<Eigen::Infinity>();
    report.steps = steps;
    report.residual = r;
    if (r < cfg.tolerance) {
      report.status = SolveStatus::Converged;
      report.interpretation = Interpretation<Scalar>::defined(std::move(f));
      return report;
    }
    // Time is steps * h rather than an accumulated sum, so T is hit exactly.
    if (Scalar(steps) * cfg.step >= cfg.max_time) break;
    f = detail::rk4_advance(q, f, d, cfg.step);
    if (cfg.record_trajectory) report.trajectory->push_back({Scalar(steps + 1) * cfg.step, f});
  }
  report.status = SolveStatus::MaxTimeExceeded;
  report.interpretation = Interpretation<Scalar>::undefined(q.size());
  return report;
}

}  // namespace qbaf
