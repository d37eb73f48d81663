#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qbaf {

using Index = Eigen::Index;

// Position of an argument inside one QBAF (0-based). The human-facing name
// lives in the QBAF's label table and defaults to "1".."n".
using ArgumentId = Index;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using StrengthVector = Vector<Scalar>;

enum class ErrorKind {
  BaseScoreOutOfRange,
  ZeroWeightEdge,
  NonFiniteWeight,
  DanglingEndpoint,
  DuplicateEdge,
  DuplicateArgument,
  UnknownArgument,
  CyclicGraph,
  SyntaxError,
  InvalidConfig,
  NonPositiveEpsilon,
  NonPositiveScale,
  MissingInput,
  InputOutOfRange,
  ExtremeBaseScore,
  InvalidMlp,
  NonUnitWeights,
  PartialInterpretation,
  SinkUnavailable,
};

inline const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// One problem found by validate(). `argument`/`edge` index into the draft.
struct Issue {
  ErrorKind kind;
  std::string message;
  std::optional<Index> argument;
  std::optional<std::size_t> edge;
};

template <class Scalar>
struct Edge {
  ArgumentId source;
  ArgumentId target;
  Scalar weight;

  bool is_attack() const { return weight < Scalar(0); }
  bool is_support() const { return weight > Scalar(0); }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Mutable, unchecked description of a QBAF. Turned into a BasicQbaf (the only
// type the engines accept) through the validating constructor.
template <class Scalar>
struct QbafDraft {
  std::vector<std::string> labels;
  std::vector<Scalar> base_scores;
  std::vector<Edge<Scalar>> edges;

  ArgumentId add_argument(Scalar base_score, std::string label = {}) {
    const auto id = static_cast<ArgumentId>(base_scores.size());
    if (label.empty()) label = std::to_string(id + 1);
    labels.push_back(std::move(label));
    base_scores.push_back(base_score);
    return id;
  }

  void add_edge(ArgumentId source, ArgumentId target, Scalar weight) {
    edges.push_back({source, target, weight});
  }

  Index size() const { return static_cast<Index>(base_scores.size()); }
};

template <class Scalar>
std::vector<Issue> validate(const QbafDraft<Scalar>& draft) {
  std::vector<Issue> issues;
  const Index n = draft.size();
  const auto name = [&](Index a) -> std::string {
    if (a >= 0 && a < static_cast<Index>(draft.labels.size())) return draft.labels[a];
    return "#" + std::to_string(a + 1);
  };

  if (static_cast<Index>(draft.labels.size()) != n) {
    issues.push_back({ErrorKind::DuplicateArgument, "label table does not match argument count", {}, {}});
  }
  std::unordered_map<std::string_view, Index> seen;
  for (Index a = 0; a < static_cast<Index>(draft.labels.size()); ++a) {
    if (!seen.emplace(draft.labels[a], a).second) {
      issues.push_back({ErrorKind::DuplicateArgument, "argument '" + draft.labels[a] + "' declared twice", a, {}});
    }
  }
  for (Index a = 0; a < n; ++a) {
    const Scalar b = draft.base_scores[a];
    if (!(b >= Scalar(0) && b <= Scalar(1))) {
      issues.push_back({ErrorKind::BaseScoreOutOfRange,
                        "argument '" + name(a) + "': base score " + std::to_string(static_cast<double>(b)) +
                            " outside [0,1]",
                        a,
                        {}});
    }
  }

  // (source, target, edge index) of every edge with valid endpoints.
  std::vector<std::tuple<ArgumentId, ArgumentId, std::size_t>> pairs;
  for (std::size_t e = 0; e < draft.edges.size(); ++e) {
    const auto& edge = draft.edges[e];
    const bool src_ok = edge.source >= 0 && edge.source < n;
    const bool dst_ok = edge.target >= 0 && edge.target < n;
    if (!src_ok || !dst_ok) {
      issues.push_back({ErrorKind::DanglingEndpoint,
                        "edge " + std::to_string(e + 1) + " references an undeclared argument", {}, e});
      continue;
    }
    const std::string where = "edge " + name(edge.source) + " -> " + name(edge.target);
    if (!std::isfinite(static_cast<double>(edge.weight))) {
      issues.push_back({ErrorKind::NonFiniteWeight, where + ": weight is not finite", {}, e});
    } else if (edge.weight == Scalar(0)) {
      issues.push_back({ErrorKind::ZeroWeightEdge, where + ": zero weight is neither attack nor support", {}, e});
    }
    pairs.emplace_back(edge.source, edge.target, e);
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    const auto& [s, t, e] = pairs[i];
    if (s == std::get<0>(pairs[i - 1]) && t == std::get<1>(pairs[i - 1])) {
      issues.push_back({ErrorKind::DuplicateEdge, "edge " + name(s) + " -> " + name(t) + " declared more than once",
                        {}, e});
    }
  }
  return issues;
}

// Edge-weighted QBAF. Immutable once built; construction is the single
// validation gate, so every engine can assume the invariants hold.
template <class Scalar>
class BasicQbaf {
 public:
  using WeightMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  BasicQbaf() = default;

  explicit BasicQbaf(QbafDraft<Scalar> draft) {
    const auto issues = validate(draft);
    if (!issues.empty()) {
      std::string message = issues.front().message;
      for (std::size_t i = 1; i < issues.size(); ++i) message += "; " + issues[i].message;
      throw Error(issues.front().kind, message);
    }
    labels_ = std::move(draft.labels);
    base_scores_ = Eigen::Map<const Vector<Scalar>>(draft.base_scores.data(), draft.size());
    edges_ = std::move(draft.edges);
    std::sort(edges_.begin(), edges_.end(), [](const auto& l, const auto& r) {
      return std::pair(l.source, l.target) < std::pair(r.source, r.target);
    });

    const Index n = size();
    std::vector<Eigen::Triplet<Scalar>> triplets;
    triplets.reserve(edges_.size());
    for (const auto& e : edges_) triplets.emplace_back(e.target, e.source, e.weight);
    weights_.resize(n, n);
    weights_.setFromTriplets(triplets.begin(), triplets.end());
    weights_.makeCompressed();

    for (Index a = 0; a < n; ++a) index_.emplace(labels_[a], a);
  }

  Index size() const { return base_scores_.size(); }
  bool contains(ArgumentId a) const { return a >= 0 && a < size(); }

  const Vector<Scalar>& base_scores() const { return base_scores_; }
  Scalar base_score(ArgumentId a) const { return base_scores_[checked(a)]; }

  // Row = target, column = source; row a holds the in-edges of a.
  const WeightMatrix& weights() const { return weights_; }

  // Sorted by (source, target).
  const std::vector<Edge<Scalar>>& edges() const { return edges_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(ArgumentId a) const { return labels_[checked(a)]; }

  std::optional<ArgumentId> find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Index in_degree(ArgumentId a) const {
    const auto row = checked(a);
    return weights_.outerIndexPtr()[row + 1] - weights_.outerIndexPtr()[row];
  }

  // Parents of a paired with the edge weight, in ascending source order.
  std::vector<std::pair<ArgumentId, Scalar>> in_edges(ArgumentId a) const {
    std::vector<std::pair<ArgumentId, Scalar>> out;
    for (typename WeightMatrix::InnerIterator it(weights_, checked(a)); it; ++it) out.emplace_back(it.col(), it.value());
    return out;
  }

  std::optional<Scalar> weight(ArgumentId source, ArgumentId target) const {
    for (typename WeightMatrix::InnerIterator it(weights_, checked(target)); it; ++it) {
      if (it.col() == source) return it.value();
    }
    return std::nullopt;
  }

  // Editable copy, for building companion instances.
  QbafDraft<Scalar> draft() const {
    QbafDraft<Scalar> d;
    d.labels = labels_;
    d.base_scores.assign(base_scores_.data(), base_scores_.data() + base_scores_.size());
    d.edges = edges_;
    return d;
  }

  friend bool operator==(const BasicQbaf& l, const BasicQbaf& r) {
    if (l.labels_ != r.labels_ || l.edges_ != r.edges_) return false;
    return l.base_scores_.size() == r.base_scores_.size() &&
           (l.base_scores_.array() == r.base_scores_.array()).all();
  }

 private:
  ArgumentId checked(ArgumentId a) const {
    if (!contains(a)) throw Error(ErrorKind::UnknownArgument, "unknown argument #" + std::to_string(a + 1));
    return a;
  }

  std::vector<std::string> labels_;
  Vector<Scalar> base_scores_;
  std::vector<Edge<Scalar>> edges_;
  WeightMatrix weights_;
  std::unordered_map<std::string, ArgumentId> index_;
};

using Qbaf = BasicQbaf<double>;

template <class Scalar>
std::vector<ArgumentId> attackers(const BasicQbaf<Scalar>& q, ArgumentId a) {
  std::vector<ArgumentId> out;
  for (const auto& [b, w] : q.in_edges(a))
    if (w < Scalar(0)) out.push_back(b);
  return out;
}

template <class Scalar>
std::vector<ArgumentId> supporters(const BasicQbaf<Scalar>& q, ArgumentId a) {
  std::vector<ArgumentId> out;
  for (const auto& [b, w] : q.in_edges(a))
    if (w > Scalar(0)) out.push_back(b);
  return out;
}

namespace detail {

// Kahn's algorithm, smallest ready id first. Returns fewer than n ids when
// the graph has a cycle.
template <class Scalar>
std::vector<ArgumentId> kahn_order(const BasicQbaf<Scalar>& q) {
  const Index n = q.size();
  std::vector<Index> pending(n);
  std::vector<std::vector<ArgumentId>> children(n);
  for (const auto& e : q.edges()) {
    ++pending[e.target];
    children[e.source].push_back(e.target);
  }
  std::priority_queue<ArgumentId, std::vector<ArgumentId>, std::greater<>> ready;
  for (Index a = 0; a < n; ++a)
    if (pending[a] == 0) ready.push(a);
  std::vector<ArgumentId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto a = ready.top();
    ready.pop();
    order.push_back(a);
    for (auto c : children[a])
      if (--pending[c] == 0) ready.push(c);
  }
  return order;
}

}  // namespace detail

template <class Scalar>
bool is_acyclic(const BasicQbaf<Scalar>& q) {
  return static_cast<Index>(detail::kahn_order(q).size()) == q.size();
}

template <class Scalar>
std::vector<ArgumentId> topological_order(const BasicQbaf<Scalar>& q) {
  auto order = detail::kahn_order(q);
  if (static_cast<Index>(order.size()) != q.size()) throw Error(ErrorKind::CyclicGraph, "QBAF contains a cycle");
  return order;
}

// Strength per argument, or undefined (⊥).
template <class Scalar>
class Interpretation {
 public:
  Interpretation() = default;

  static Interpretation defined(Vector<Scalar> values) {
    Interpretation i;
    i.defined_.assign(values.size(), true);
    i.values_ = std::move(values);
    return i;
  }

  static Interpretation undefined(Index n) {
    Interpretation i;
    i.values_ = Vector<Scalar>::Constant(n, std::numeric_limits<Scalar>::quiet_NaN());
    i.defined_.assign(n, false);
    return i;
  }

  Index size() const { return values_.size(); }
  bool is_defined(ArgumentId a) const { return defined_.at(a); }
  bool is_fully_defined() const { return std::all_of(defined_.begin(), defined_.end(), [](bool d) { return d; }); }

  std::optional<Scalar> operator[](ArgumentId a) const {
    if (!is_defined(a)) return std::nullopt;
    return values_[a];
  }

  void set(ArgumentId a, Scalar value) {
    values_[a] = value;
    defined_.at(a) = true;
  }
  void set_undefined(ArgumentId a) {
    values_[a] = std::numeric_limits<Scalar>::quiet_NaN();
    defined_.at(a) = false;
  }

  // Throws PartialInterpretation unless every entry is defined.
  const Vector<Scalar>& values() const {
    if (!is_fully_defined()) throw Error(ErrorKind::PartialInterpretation, "interpretation is partial");
    return values_;
  }

 private:
  Vector<Scalar> values_;
  std::vector<bool> defined_;
};

enum class SolveStatus { Converged, Oscillating, MaxIterationsExceeded, MaxTimeExceeded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::Oscillating: return "Oscillating";
    case SolveStatus::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case SolveStatus::MaxTimeExceeded: return "MaxTimeExceeded";
  }
  return "?";
}

template <class Scalar>
struct TrajectoryPoint {
  Scalar at;  // iteration index (discrete) or time (continuous)
  Vector<Scalar> state;
};

template <class Scalar>
struct SolveReport {
  SolveStatus status = SolveStatus::MaxIterationsExceeded;
  Interpretation<Scalar> interpretation;
  Index steps = 0;
  Scalar residual = 0;
  std::optional<std::vector<TrajectoryPoint<Scalar>>> trajectory;

  bool converged() const { return status == SolveStatus::Converged; }
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BaseScoreOutOfRange: return "BaseScoreOutOfRange";
    case ErrorKind::ZeroWeightEdge: return "ZeroWeightEdge";
    case ErrorKind::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::DuplicateArgument: return "DuplicateArgument";
    case ErrorKind::UnknownArgument: return "UnknownArgument";
    case ErrorKind::CyclicGraph: return "CyclicGraph";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorKind::NonPositiveScale: return "NonPositiveScale";
    case ErrorKind::MissingInput: return "MissingInput";
    case ErrorKind::InputOutOfRange: return "InputOutOfRange";
    case ErrorKind::ExtremeBaseScore: return "ExtremeBaseScore";
    case ErrorKind::InvalidMlp: return "InvalidMlp";
    case ErrorKind::NonUnitWeights: return "NonUnitWeights";
    case ErrorKind::PartialInterpretation: return "PartialInterpretation";
    case ErrorKind::SinkUnavailable: return "SinkUnavailable";
  }
  return "?";
}

}  // namespace qbaf
