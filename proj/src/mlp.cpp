#include "qbaf/mlp.hpp"

#include "qbaf/discrete.hpp"

#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace qbaf {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidMlp, what); }

}  // namespace

Index MlpDraft::add_node(std::size_t layer, std::optional<double> node_bias, std::string label) {
  const auto id = size();
  if (label.empty()) label = std::to_string(id + 1);
  labels.push_back(std::move(label));
  bias.push_back(node_bias);
  if (layers.size() <= layer) layers.resize(layer + 1);
  layers[layer].push_back(id);
  return id;
}

Mlp::Mlp(MlpDraft draft) {
  const Index n = draft.size();
  if (static_cast<Index>(draft.bias.size()) != n) invalid("bias table does not match node count");
  if (draft.layers.empty()) invalid("an MLP needs at least an input layer");

  std::set<std::string> names;
  for (const auto& l : draft.labels)
    if (!names.insert(l).second) invalid("node '" + l + "' declared twice");

  layer_of_.assign(n, -1);
  position_.assign(n, -1);
  for (std::size_t l = 0; l < draft.layers.size(); ++l) {
    if (draft.layers[l].empty()) invalid("layer " + std::to_string(l) + " is empty");
    std::sort(draft.layers[l].begin(), draft.layers[l].end());
    for (std::size_t p = 0; p < draft.layers[l].size(); ++p) {
      const Index v = draft.layers[l][p];
      if (v < 0 || v >= n) invalid("layer " + std::to_string(l) + " lists an unknown node");
      if (layer_of_[v] != -1) invalid("node '" + draft.labels[v] + "' appears in two layers");
      layer_of_[v] = static_cast<Index>(l);
      position_[v] = static_cast<Index>(p);
    }
  }
  for (Index v = 0; v < n; ++v)
    if (layer_of_[v] == -1) invalid("node '" + draft.labels[v] + "' is not assigned to a layer");

  relay_.assign(n, false);
  std::vector<int> in_count(n, 0);
  std::set<std::pair<Index, Index>> seen;
  for (const auto& e : draft.edges) {
    if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n) invalid("edge references an unknown node");
    const auto where = draft.labels[e.source] + " -> " + draft.labels[e.target];
    if (layer_of_[e.target] != layer_of_[e.source] + 1) invalid("edge " + where + " does not join consecutive layers");
    if (!seen.emplace(e.source, e.target).second) invalid("edge " + where + " declared twice");
    if (!std::isfinite(e.weight)) invalid("edge " + where + " has a non-finite weight");
    if (e.relay) {
      if (e.weight != 1.0) invalid("relay edge " + where + " must have weight 1");
      relay_[e.target] = true;
    }
    ++in_count[e.target];
  }
  for (Index v = 0; v < n; ++v) {
    const bool input = layer_of_[v] == 0;
    if (relay_[v]) {
      if (in_count[v] != 1) invalid("relay node '" + draft.labels[v] + "' must have exactly one parent");
      if (draft.bias[v]) invalid("relay node '" + draft.labels[v] + "' must not carry a bias");
    } else if (input) {
      if (draft.bias[v]) invalid("input node '" + draft.labels[v] + "' must not carry a bias");
    } else {
      if (!draft.bias[v]) invalid("node '" + draft.labels[v] + "' has no bias");
      if (!std::isfinite(*draft.bias[v])) invalid("node '" + draft.labels[v] + "' has a non-finite bias");
    }
  }

  labels_ = std::move(draft.labels);
  layers_ = std::move(draft.layers);
  edges_ = std::move(draft.edges);
  bias_ = std::move(draft.bias);
  std::sort(edges_.begin(), edges_.end(), [](const MlpEdge& l, const MlpEdge& r) {
    return std::pair(l.source, l.target) < std::pair(r.source, r.target);
  });

  for (std::size_t l = 1; l < layers_.size(); ++l) {
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(layers_[l].size(), layers_[l - 1].size());
    Eigen::VectorXd b(layers_[l].size());
    for (std::size_t p = 0; p < layers_[l].size(); ++p) b[p] = bias_[layers_[l][p]].value_or(0.0);
    blocks_.push_back(std::move(block));
    biases_.push_back(std::move(b));
  }
  for (const auto& e : edges_) blocks_[layer_of_[e.target] - 1](position_[e.target], position_[e.source]) = e.weight;
}

double Mlp::bias(Index v) const {
  const auto& b = bias_.at(v);
  if (!b) throw Error(ErrorKind::InvalidMlp, "node '" + labels_.at(v) + "' has no bias");
  return *b;
}

std::optional<Index> Mlp::find(std::string_view label) const {
  for (Index v = 0; v < size(); ++v)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

MlpDraft Mlp::draft() const { return MlpDraft{labels_, layers_, edges_, bias_}; }

Eigen::VectorXd forward(const Mlp& mlp, const InputAssignment& x) {
  const auto& inputs = mlp.inputs();
  if (x.size() != static_cast<Index>(inputs.size())) {
    throw Error(ErrorKind::MissingInput, "expected " + std::to_string(inputs.size()) + " input values, got " +
                                             std::to_string(x.size()));
  }
  Eigen::VectorXd values(mlp.size());
  Eigen::VectorXd previous = x;
  for (std::size_t p = 0; p < inputs.size(); ++p) values[inputs[p]] = x[p];

  for (std::size_t l = 1; l < mlp.layers().size(); ++l) {
    const auto& layer = mlp.layers()[l];
    Eigen::VectorXd z = mlp.layer_weights(l) * previous + mlp.layer_bias(l);
    for (std::size_t p = 0; p < layer.size(); ++p) {
      if (!mlp.is_relay(layer[p])) z[p] = 1.0 / (1.0 + std::exp(-z[p]));
      values[layer[p]] = z[p];
    }
    previous = std::move(z);
  }
  return values;
}

double base_to_bias(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw Error(ErrorKind::ExtremeBaseScore, "base score " + std::to_string(beta) + " has no finite bias");
  }
  return std::log(beta) - std::log1p(-beta);
}

double bias_to_base(double theta) { return logistic(theta); }

Qbaf mlp_to_qbaf(const Mlp& mlp, const InputAssignment& x) {
  const auto& inputs = mlp.inputs();
  if (x.size() != static_cast<Index>(inputs.size())) throw Error(ErrorKind::MissingInput, "input assignment size mismatch");

  std::vector<Index> argument_of(mlp.size(), -1);
  QbafDraft<double> draft;
  std::unordered_map<Index, double> input_value;
  for (std::size_t p = 0; p < inputs.size(); ++p) {
    if (!(x[p] >= 0.0 && x[p] <= 1.0)) {
      throw Error(ErrorKind::InputOutOfRange,
                  "input '" + mlp.label(inputs[p]) + "' = " + std::to_string(x[p]) + " is outside [0,1]");
    }
    input_value[inputs[p]] = x[p];
  }
  for (Index v = 0; v < mlp.size(); ++v) {
    if (mlp.is_relay(v)) continue;
    const double beta = mlp.layer_of(v) == 0 ? input_value.at(v) : bias_to_base(mlp.bias(v));
    argument_of[v] = draft.add_argument(beta, mlp.label(v));
  }

  std::vector<Index> relay_parent(mlp.size(), -1);
  for (const auto& e : mlp.edges())
    if (e.relay) relay_parent[e.target] = e.source;

  // Parallel paths between the same pair sum, exactly as forward propagation does.
  std::map<std::pair<Index, Index>, double> merged;
  for (const auto& e : mlp.edges()) {
    if (e.relay) continue;
    Index origin = e.source;
    while (mlp.is_relay(origin)) origin = relay_parent[origin];
    merged[{argument_of[origin], argument_of[e.target]}] += e.weight;
  }
  for (const auto& [pair, w] : merged)
    if (w != 0.0) draft.add_edge(pair.first, pair.second, w);
  return Qbaf(std::move(draft));
}

MlpTranslation qbaf_to_mlp(const Qbaf& q) {
  const auto order = topological_order(q);
  const Index n = q.size();

  std::vector<Index> layer(n, 0);
  for (auto a : order)
    for (const auto& [b, w] : q.in_edges(a)) layer[a] = std::max(layer[a], layer[b] + 1);

  for (Index a = 0; a < n; ++a) {
    const double beta = q.base_score(a);
    if (layer[a] > 0 && (beta <= 0.0 || beta >= 1.0)) {
      throw Error(ErrorKind::ExtremeBaseScore,
                  "argument '" + q.label(a) + "' has parents and base score " + std::to_string(beta) +
                      ", which has no finite bias");
    }
  }

  MlpDraft draft;
  std::set<std::string> taken(q.labels().begin(), q.labels().end());
  for (Index a = 0; a < n; ++a) {
    std::optional<double> bias;
    if (layer[a] > 0) bias = base_to_bias(q.base_score(a));
    draft.add_node(static_cast<std::size_t>(layer[a]), bias, q.label(a));
  }

  // relay[(source, layer)] carries source's value into that layer.
  std::map<std::pair<Index, Index>, Index> relay;
  const auto carrier = [&](Index source, Index target_layer) {
    Index current = source;
    for (Index l = layer[source] + 1; l < target_layer; ++l) {
      auto [it, fresh] = relay.try_emplace({source, l}, -1);
      if (fresh) {
        std::string name = q.label(source) + "~" + std::to_string(l);
        while (!taken.insert(name).second) name += "~";
        it->second = draft.add_node(static_cast<std::size_t>(l), std::nullopt, name);
        draft.add_edge(current, it->second, 1.0, true);
      }
      current = it->second;
    }
    return current;
  };
  for (const auto& e : q.edges()) draft.add_edge(carrier(e.source, layer[e.target]), e.target, e.weight);

  MlpTranslation out;
  out.mlp = Mlp(std::move(draft));
  const auto& inputs = out.mlp.inputs();
  out.inputs.resize(static_cast<Index>(inputs.size()));
  for (std::size_t p = 0; p < inputs.size(); ++p) out.inputs[p] = q.base_score(inputs[p]);
  out.node_of_argument.resize(n);
  for (Index a = 0; a < n; ++a) out.node_of_argument[a] = a;
  return out;
}

}  // namespace qbaf
