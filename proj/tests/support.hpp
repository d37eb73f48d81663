#pragma once

#include "oracle.hpp"

#include "qbaf/qbaf.hpp"

#include <doctest.h>

#include <random>
#include <tuple>

inline oracle::Graph to_graph(const qbaf::Qbaf& q) {
  oracle::Graph g;
  for (qbaf::Index a = 0; a < q.size(); ++a) g.beta.push_back(q.base_score(a));
  for (const auto& e : q.edges())
    g.arcs.push_back({static_cast<std::size_t>(e.source), static_cast<std::size_t>(e.target), e.weight});
  return g;
}

inline std::vector<oracle::Real> to_reals(const qbaf::Vector<double>& v) {
  return std::vector<oracle::Real>(v.data(), v.data() + v.size());
}

inline double max_gap(const qbaf::Vector<double>& x, const std::vector<oracle::Real>& y) {
  double m = 0;
  for (qbaf::Index i = 0; i < x.size(); ++i)
    m = std::max(m, static_cast<double>(std::fabs(static_cast<oracle::Real>(x[i]) - y[i])));
  return m;
}

// a <- b edges given as (source, target, weight) on ids 0..n-1.
inline qbaf::Qbaf make_qbaf(const std::vector<double>& beta,
                            const std::vector<std::tuple<qbaf::Index, qbaf::Index, double>>& edges) {
  qbaf::QbafDraft<double> d;
  for (double b : beta) d.add_argument(b);
  for (const auto& [s, t, w] : edges) d.add_edge(s, t, w);
  return qbaf::Qbaf(std::move(d));
}

template <class F>
qbaf::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const qbaf::Error& e) {
    return e.kind();
  }
  FAIL("expected a qbaf::Error");
  return qbaf::ErrorKind::SyntaxError;
}
