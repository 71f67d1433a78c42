// The .oodn knowledge-base language: parsing and canonical serialization.
//
//   class A1 { prop p1: int = 1; prop p2: real = 2.5 /0.5; method f1(x: int) -> bool; }
//   object a : A1 { p1 = 7; }
//   relation association own a -> b /0.7;
//   A3 inherits A2 inherits A1;          // chain
//   A3 inherits A1, A2 (p1, f1/0.5);     // parallel, partial + weak selection
//
// A selection whose items all carry a degree below 1 is read as "everything,
// with these degrees", as in `(p1/0.5)`; otherwise it lists the
// only members taken. `all (...)` and `only (...)` force either reading.

#ifndef OODN_DSL_HPP_
#define OODN_DSL_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "oodn/model.hpp"

namespace oodn {

struct SourceSpan {
  std::string file;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;
  std::size_t offset = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseError {
  SourceSpan span;
  std::string expected;
  std::string found;

  /// "file:line:col: error: expected X, found Y"; validation errors leave
  /// `expected` empty and read "file:line:col: error: rule: message".
  std::string message() const;

  friend bool operator==(const ParseError&, const ParseError&) = default;
};

struct ParseResult {
  Network network;
  std::vector<ParseError> errors;
  /// Validation warnings of a successful parse (e.g. empty classes).
  std::vector<Violation> warnings;

  bool ok() const { return errors.empty(); }
};

/// Lexes, parses and validates. On failure `network` is unspecified.
ParseResult parse(std::string_view text, std::string file = "<input>");

/// Canonical text: classes and objects by name, relations and plans in
/// order, two-space indent, one member per line.
std::string serialize(const Network& net);

std::string format_value(const PropertyValue& v);
/// "prop p1: int = 1 /0.5 @A1;" The owner is printed when it differs from
/// `context`.
std::string format_member(const DegreedMember& m, const std::string& context = {});
std::string format_selection(const Selection& s);
std::string format_plan(const InheritancePlan& plan);
/// A heterogeneous class as an `hetclass` declaration.
std::string format_het(const HetClass& het);

/// Parses just a plan such as "A3 inherits A1, A2 (p1)". Throws
/// std::invalid_argument with the parse error message on failure.
InheritancePlan parse_plan(std::string_view text);

}  // namespace oodn

#endif  // OODN_DSL_HPP_
