#pragma once

#include "qbaf/core.hpp"
#include "qbaf/mlp.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace qbaf {

// Parse/validation failure with the 1-based position of the offending record;
// line 0 means the file as a whole.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

// `.qbaf` text:
//   arg <id> <base_score>
//   edge <src> <dst> <weight>
//   # comment
// Ids are [A-Za-z0-9_]+ tokens numbered in order of their `arg` line; edges
// may reference arguments declared further down.
Qbaf parse_qbaf(std::string_view text);
std::string serialize_qbaf(const Qbaf& q);

Qbaf read_qbaf_file(const std::filesystem::path& path);

// `.mlp` text:
//   layer <k> <node ids...>
//   bias <node> <value>
//   edge <src> <dst> <weight> [relay]
//   input <node> <value>
// `input` records are optional; when present they must cover the whole input
// layer.
struct MlpDocument {
  Mlp mlp;
  std::optional<InputAssignment> inputs;
};

MlpDocument parse_mlp(std::string_view text);
std::string serialize_mlp(const Mlp& mlp, const std::optional<InputAssignment>& inputs = std::nullopt);

// CSV `step,<labels...>`, one row per trajectory point.
void write_trajectory(const SolveReport<double>& report, const std::vector<std::string>& labels, std::ostream& sink);
void write_trajectory(const SolveReport<double>& report, const std::vector<std::string>& labels,
                      const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qbaf
