#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gtsp {

/// A caller broke an operation's precondition (singleton cluster, ids from
/// the wrong clusters, m above a cap, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ParseErrorKind {
  malformed_header,
  dimension_mismatch,
  cluster_membership,
  negative_weight,
  asymmetric_matrix,
  unsupported_format,
  malformed_data,
};

const char* to_string(ParseErrorKind kind);

/// Input text does not follow the TSPLIB/GTSP grammar. `line()` is 1-based;
/// 0 means the problem was only detectable at end of input.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace gtsp
