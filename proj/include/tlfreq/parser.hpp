#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "tlfreq/error.hpp"
#include "tlfreq/formula.hpp"

namespace tlfreq {

/// Raised with code SyntaxError, EmptyInterval or NegativeBound.
class ParseError : public Error {
 public:
  ParseError(std::string code, std::size_t position, std::string expected, const std::string& message)
      : Error(std::move(code), message), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// Grammar:
///   formula    := or_expr
///   or_expr    := and_expr { "or" and_expr }
///   and_expr   := unary { "and" unary }
///   unary      := "not" unary | "once" interval unary | "hist" interval unary | since_expr
///   since_expr := primary [ "since" interval primary ]
///   primary    := "true" | IDENT | "(" formula ")"
///   interval   := "[" NUMBER "," NUMBER "]"
Formula parse_formula(std::string_view text);

}  // namespace tlfreq
