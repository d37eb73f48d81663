#include "qbaf/io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

namespace qbaf {

ParseError::ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& what)
    : Error(kind, line == 0 ? what : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error(ErrorKind::SinkUnavailable, "cannot format number");
  return std::string(buf.data(), end);
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    auto raw = text.substr(start, stop - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      const auto begin = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i > begin) line.tokens.push_back({raw.substr(begin, i - begin), begin + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (stop == text.size()) break;
    start = stop + 1;
  }
  return lines;
}

[[noreturn]] void syntax(const Line& line, const Token& at, const std::string& what) {
  throw ParseError(ErrorKind::SyntaxError, line.number, at.column, what);
}

void expect_arity(const Line& line, std::size_t min, std::size_t max, const char* usage) {
  const auto n = line.tokens.size();
  if (n < min || n > max) {
    const auto& at = n > max ? line.tokens[max] : line.tokens.back();
    syntax(line, at, std::string("expected `") + usage + "`");
  }
}

// MLP node ids may also contain '~', which marks generated relay nodes.
std::string_view identifier(const Line& line, const Token& t, bool relay_names = false) {
  for (char c : t.text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && !(relay_names && c == '~')) {
      syntax(line, t, "invalid identifier '" + std::string(t.text) + "'");
    }
  }
  return t.text;
}

double number(const Line& line, const Token& t) {
  double value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) syntax(line, t, "invalid number '" + std::string(t.text) + "'");
  return value;
}

}  // namespace

Qbaf parse_qbaf(std::string_view text) {
  struct PendingEdge {
    const Line* line;
    std::string_view source, target;
    double weight;
  };

  QbafDraft<double> draft;
  std::map<std::string_view, Index> ids;
  std::vector<const Line*> arg_line;
  std::vector<PendingEdge> pending;
  const auto lines = tokenize(text);

  for (const auto& line : lines) {
    const auto& head = line.tokens.front();
    if (head.text == "arg") {
      expect_arity(line, 3, 3, "arg <id> <base_score>");
      const auto id = identifier(line, line.tokens[1]);
      if (ids.count(id)) syntax(line, line.tokens[1], "argument '" + std::string(id) + "' declared twice");
      ids.emplace(id, draft.add_argument(number(line, line.tokens[2]), std::string(id)));
      arg_line.push_back(&line);
    } else if (head.text == "edge") {
      expect_arity(line, 4, 4, "edge <src> <dst> <weight>");
      pending.push_back(
          {&line, identifier(line, line.tokens[1]), identifier(line, line.tokens[2]), number(line, line.tokens[3])});
    } else {
      syntax(line, head, "unknown record '" + std::string(head.text) + "'");
    }
  }

  std::vector<const Line*> edge_line;
  for (const auto& e : pending) {
    const auto src = ids.find(e.source);
    const auto dst = ids.find(e.target);
    if (src == ids.end() || dst == ids.end()) {
      const auto& missing = src == ids.end() ? e.source : e.target;
      const auto& tok = src == ids.end() ? e.line->tokens[1] : e.line->tokens[2];
      throw ParseError(ErrorKind::DanglingEndpoint, e.line->number, tok.column,
                       "edge references undeclared argument '" + std::string(missing) + "'");
    }
    draft.add_edge(src->second, dst->second, e.weight);
    edge_line.push_back(e.line);
  }

  const auto issues = validate(draft);
  if (!issues.empty()) {
    const auto& first = issues.front();
    const Line* where = first.argument ? arg_line[*first.argument] : first.edge ? edge_line[*first.edge] : nullptr;
    std::string message = first.message;
    for (std::size_t i = 1; i < issues.size(); ++i) message += "; " + issues[i].message;
    throw ParseError(first.kind, where ? where->number : 0, 1, message);
  }
  return Qbaf(std::move(draft));
}

std::string serialize_qbaf(const Qbaf& q) {
  std::string out;
  for (Index a = 0; a < q.size(); ++a) out += "arg " + q.label(a) + " " + format_double(q.base_score(a)) + "\n";
  for (const auto& e : q.edges())
    out += "edge " + q.label(e.source) + " " + q.label(e.target) + " " + format_double(e.weight) + "\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SyntaxError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Qbaf read_qbaf_file(const std::filesystem::path& path) { return parse_qbaf(read_text_file(path)); }

MlpDocument parse_mlp(std::string_view text) {
  const auto lines = tokenize(text);
  MlpDraft draft;
  std::map<std::string_view, Index> ids;
  std::size_t declared_layers = 0;

  // Node ids follow first appearance; a layer may span several `layer` lines.
  for (const auto& line : lines) {
    if (line.tokens.front().text != "layer") continue;
    expect_arity(line, 3, std::numeric_limits<std::size_t>::max(), "layer <k> <node ids...>");
    const double k = number(line, line.tokens[1]);
    if (k < 0 || k != std::floor(k) || k > 1e6) syntax(line, line.tokens[1], "layer index must be a natural number");
    const auto layer = static_cast<std::size_t>(k);
    declared_layers = std::max(declared_layers, layer + 1);
    for (std::size_t t = 2; t < line.tokens.size(); ++t) {
      const auto id = identifier(line, line.tokens[t], true);
      if (ids.count(id)) syntax(line, line.tokens[t], "node '" + std::string(id) + "' declared twice");
      ids.emplace(id, draft.add_node(layer, std::nullopt, std::string(id)));
    }
  }
  for (std::size_t l = 0; l < declared_layers; ++l) {
    if (draft.layers[l].empty()) {
      throw ParseError(ErrorKind::InvalidMlp, lines.back().number, 1, "layer " + std::to_string(l) + " is missing");
    }
  }

  const auto node = [&](const Line& line, const Token& t) {
    const auto it = ids.find(identifier(line, t, true));
    if (it == ids.end()) syntax(line, t, "unknown node '" + std::string(t.text) + "'");
    return it->second;
  };

  std::map<Index, double> inputs;
  for (const auto& line : lines) {
    const auto& head = line.tokens.front();
    if (head.text == "layer") continue;
    if (head.text == "bias") {
      expect_arity(line, 3, 3, "bias <node> <value>");
      const auto v = node(line, line.tokens[1]);
      if (draft.bias[v]) syntax(line, line.tokens[1], "bias declared twice");
      draft.bias[v] = number(line, line.tokens[2]);
    } else if (head.text == "edge") {
      expect_arity(line, 4, 5, "edge <src> <dst> <weight> [relay]");
      bool relay = false;
      if (line.tokens.size() == 5) {
        if (line.tokens[4].text != "relay") syntax(line, line.tokens[4], "expected `relay`");
        relay = true;
      }
      draft.add_edge(node(line, line.tokens[1]), node(line, line.tokens[2]), number(line, line.tokens[3]), relay);
    } else if (head.text == "input") {
      expect_arity(line, 3, 3, "input <node> <value>");
      const auto v = node(line, line.tokens[1]);
      if (!inputs.emplace(v, number(line, line.tokens[2])).second) syntax(line, line.tokens[1], "input declared twice");
    } else {
      syntax(line, head, "unknown record '" + std::string(head.text) + "'");
    }
  }

  MlpDocument doc;
  try {
    doc.mlp = Mlp(std::move(draft));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.kind(), 0, 0, e.what());
  }
  if (!inputs.empty()) {
    const auto& layer0 = doc.mlp.inputs();
    InputAssignment x(static_cast<Index>(layer0.size()));
    for (std::size_t p = 0; p < layer0.size(); ++p) {
      const auto it = inputs.find(layer0[p]);
      if (it == inputs.end()) {
        throw ParseError(ErrorKind::MissingInput, 0, 0, "no input value for '" + doc.mlp.label(layer0[p]) + "'");
      }
      x[static_cast<Index>(p)] = it->second;
      inputs.erase(it);
    }
    if (!inputs.empty()) {
      throw ParseError(ErrorKind::InvalidMlp, 0, 0,
                       "input value given for non-input node '" + doc.mlp.label(inputs.begin()->first) + "'");
    }
    doc.inputs = std::move(x);
  }
  return doc;
}

std::string serialize_mlp(const Mlp& mlp, const std::optional<InputAssignment>& inputs) {
  std::string out;
  // Consecutive ids sharing a layer go on one line, so parsing restores ids.
  for (Index v = 0; v < mlp.size();) {
    out += "layer " + std::to_string(mlp.layer_of(v));
    const auto layer = mlp.layer_of(v);
    for (; v < mlp.size() && mlp.layer_of(v) == layer; ++v) out += " " + mlp.label(v);
    out += "\n";
  }
  for (Index v = 0; v < mlp.size(); ++v)
    if (mlp.layer_of(v) > 0 && !mlp.is_relay(v)) out += "bias " + mlp.label(v) + " " + format_double(mlp.bias(v)) + "\n";
  for (const auto& e : mlp.edges()) {
    out += "edge " + mlp.label(e.source) + " " + mlp.label(e.target) + " " + format_double(e.weight);
    out += e.relay ? " relay\n" : "\n";
  }
  if (inputs) {
    const auto& layer0 = mlp.inputs();
    if (inputs->size() != static_cast<Index>(layer0.size())) throw Error(ErrorKind::MissingInput, "input size mismatch");
    for (std::size_t p = 0; p < layer0.size(); ++p)
      out += "input " + mlp.label(layer0[p]) + " " + format_double((*inputs)[static_cast<Index>(p)]) + "\n";
  }
  return out;
}

void write_trajectory(const SolveReport<double>& report, const std::vector<std::string>& labels, std::ostream& sink) {
  if (!report.trajectory) throw Error(ErrorKind::InvalidConfig, "report carries no trajectory");
  if (!sink) throw Error(ErrorKind::SinkUnavailable, "trajectory sink is not writable");
  sink << "step";
  for (const auto& l : labels) sink << ',' << l;
  sink << '\n';
  for (const auto& point : *report.trajectory) {
    sink << format_double(point.at);
    for (Index i = 0; i < point.state.size(); ++i) sink << ',' << format_double(point.state[i]);
    sink << '\n';
  }
  sink.flush();
  if (!sink) throw Error(ErrorKind::SinkUnavailable, "failed while writing trajectory");
}

void write_trajectory(const SolveReport<double>& report, const std::vector<std::string>& labels,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::SinkUnavailable, "cannot open '" + path.string() + "' for writing");
  write_trajectory(report, labels, out);
}

}  // namespace qbaf
