#include "tlfreq/parser.hpp"

#include <cctype>
#include <charconv>

namespace tlfreq {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

bool is_keyword(std::string_view w) {
  return w == "true" || w == "not" || w == "and" || w == "or" || w == "once" || w == "hist" ||
         w == "since";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = or_expr();
    skip_space();
    if (pos_ != text_.size()) fail("end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) found = "'" + std::string(peek_word()) + "'";
    throw ParseError("SyntaxError", pos_, expected,
                     "at position " + std::to_string(pos_) + ": expected " + expected + ", found " + found);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  std::string_view peek_word() const {
    std::size_t end = pos_;
    if (end < text_.size() && is_ident_start(text_[end])) {
      while (end < text_.size() && is_ident_char(text_[end])) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  bool accept_keyword(std::string_view kw) {
    skip_space();
    if (peek_word() == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  Formula or_expr() {
    Formula f = and_expr();
    while (accept_keyword("or")) f = Formula::disjunction(f, and_expr());
    return f;
  }

  Formula and_expr() {
    Formula f = unary();
    while (accept_keyword("and")) f = Formula::conjunction(f, unary());
    return f;
  }

  Formula unary() {
    if (accept_keyword("not")) return Formula::negation(unary());
    if (accept_keyword("once")) {
      const Interval i = interval();
      return Formula::once(i, unary());
    }
    if (accept_keyword("hist")) {
      const Interval i = interval();
      return Formula::hist(i, unary());
    }
    return since_expr();
  }

  Formula since_expr() {
    Formula lhs = primary();
    if (accept_keyword("since")) {
      const Interval i = interval();
      return Formula::since(i, lhs, primary());
    }
    return lhs;
  }

  Formula primary() {
    skip_space();
    if (accept('(')) {
      Formula f = or_expr();
      expect(')');
      return f;
    }
    const std::string_view word = peek_word();
    if (word == "true") {
      pos_ += word.size();
      return Formula::truth();
    }
    if (word.empty() || is_keyword(word)) fail("atom name, 'true' or '('");
    pos_ += word.size();
    return Formula::atom(std::string(word));
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) != 0 || text_[end] == '.' ||
            text_[end] == 'e' || text_[end] == 'E' || text_[end] == '-' || text_[end] == '+')) {
      ++end;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, v);
    if (end == start || ec != std::errc() || ptr != text_.data() + end) fail("number");
    pos_ = end;
    return v;
  }

  Interval interval() {
    skip_space();
    const std::size_t start = pos_;
    expect('[');
    const double lo = number();
    expect(',');
    const double hi = number();
    expect(']');
    if (lo < 0.0 || hi < 0.0) {
      throw ParseError("NegativeBound", start, "non-negative bounds",
                       "at position " + std::to_string(start) + ": interval bounds must be non-negative");
    }
    if (lo > hi) {
      throw ParseError("EmptyInterval", start, "lower bound <= upper bound",
                       "at position " + std::to_string(start) + ": interval [" +
                           std::string(text_.substr(start + 1, pos_ - start - 2)) + "] is empty");
    }
    return Interval{lo, hi};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace tlfreq
