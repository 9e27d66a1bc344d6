#pragma once
// Surface syntax parser.
//
// Grammar (loosest binding last):
//   unary:   ~ ! [] <>        (prefix)
//   |>                        (non-associative)
//   &                         (left-associative)
//   |                         (left-associative)
//   ->                        (right-associative)
//   <->                       (left-associative)
// Atoms: variables [a-z][a-zA-Z0-9_]*, constants true/false, ( ... ).
//
// All defined connectives are expanded into the core language as the input
// is read, so the result only contains Bot/Var/Imp/Box/Rhd nodes.

#include <stdexcept>
#include <string>
#include <string_view>

#include "veltman/formula.hpp"

namespace veltman {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected, const std::string& what)
      : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}
  // Byte offset of the offending token in the input.
  std::size_t offset() const { return offset_; }
  // Human-readable description of what would have been accepted here.
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

Formula parse(std::string_view text);

}  // namespace veltman
