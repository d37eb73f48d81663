#pragma once

#include "qbaf/core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace qbaf {

struct MlpEdge {
  Index source;
  Index target;
  double weight;
  // Relay edges feed an identity node that copies its parent's value. They
  // carry skip-level QBAF edges across intermediate layers.
  bool relay = false;

  friend bool operator==(const MlpEdge&, const MlpEdge&) = default;
};

// Unchecked MLP description; `bias[v]` must be set exactly on non-input,
// non-relay nodes.
struct MlpDraft {
  std::vector<std::string> labels;
  std::vector<std::vector<Index>> layers;
  std::vector<MlpEdge> edges;
  std::vector<std::optional<double>> bias;

  Index add_node(std::size_t layer, std::optional<double> node_bias, std::string label = {});
  void add_edge(Index source, Index target, double weight, bool relay = false) {
    edges.push_back({source, target, weight, relay});
  }
  Index size() const { return static_cast<Index>(labels.size()); }
};

// Layered feed-forward network with logistic activation. Edges only join
// consecutive layers.
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(MlpDraft draft);

  Index size() const { return static_cast<Index>(labels_.size()); }
  Index depth() const { return static_cast<Index>(layers_.size()) - 2; }
  const std::vector<std::vector<Index>>& layers() const { return layers_; }
  const std::vector<Index>& inputs() const { return layers_.front(); }
  const std::vector<MlpEdge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index v) const { return labels_.at(v); }
  Index layer_of(Index v) const { return layer_of_.at(v); }
  bool is_relay(Index v) const { return relay_.at(v); }
  // Non-input, non-relay nodes only.
  double bias(Index v) const;
  std::optional<Index> find(std::string_view label) const;

  // Dense weight block from layer l-1 into layer l (rows follow layers()[l]).
  const Eigen::MatrixXd& layer_weights(std::size_t l) const { return blocks_.at(l - 1); }
  const Eigen::VectorXd& layer_bias(std::size_t l) const { return biases_.at(l - 1); }

  MlpDraft draft() const;

  friend bool operator==(const Mlp& l, const Mlp& r) {
    return l.labels_ == r.labels_ && l.layers_ == r.layers_ && l.edges_ == r.edges_ && l.bias_ == r.bias_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Index>> layers_;
  std::vector<MlpEdge> edges_;
  std::vector<std::optional<double>> bias_;
  std::vector<Index> layer_of_;
  std::vector<Index> position_;
  std::vector<bool> relay_;
  std::vector<Eigen::MatrixXd> blocks_;
  std::vector<Eigen::VectorXd> biases_;
};

// Values for the input layer, ordered as Mlp::inputs().
using InputAssignment = Eigen::VectorXd;

// Layer-by-layer forward propagation. Returns one value per node (indexed by
// node id); input nodes take the assignment.
Eigen::VectorXd forward(const Mlp& mlp, const InputAssignment& x);

// logit(beta); beta must lie strictly inside (0,1).
double base_to_bias(double beta);
// logistic(theta).
double bias_to_base(double theta);

// One argument per non-relay node, same ids and labels order. Relay chains are
// contracted back into the skip edge they carry.
Qbaf mlp_to_qbaf(const Mlp& mlp, const InputAssignment& x);

struct MlpTranslation {
  Mlp mlp;
  InputAssignment inputs;
  // node id of each original argument; relays come after all arguments.
  std::vector<Index> node_of_argument;
};

// Sources become inputs (x = beta); everything else is layered by longest
// path from the sources, with relay chains for edges that skip layers.
MlpTranslation qbaf_to_mlp(const Qbaf& q);

}  // namespace qbaf
