#include <cctype>

#include "cartan/cli.hpp"
#include "cartan/error.hpp"

namespace cartan {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprTree parse() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    ExprTree e = expr();
    skip();
    if (pos_ != text_.size()) {
      if (starts_atom()) throw ParseError("implicit multiplication is not allowed", pos_);
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool starts_atom() {
    skip();
    if (pos_ == text_.size()) return false;
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  static ExprTree binary(ExprTree::Kind kind, ExprTree a, ExprTree b, std::size_t at) {
    ExprTree t;
    t.kind = kind;
    t.position = at;
    t.children.push_back(std::move(a));
    t.children.push_back(std::move(b));
    return t;
  }

  ExprTree expr() {
    ExprTree left = term();
    while (peek('+') || peek('-')) {
      std::size_t at = pos_;
      auto kind = text_[pos_++] == '+' ? ExprTree::Kind::Add : ExprTree::Kind::Sub;
      left = binary(kind, std::move(left), term(), at);
    }
    return left;
  }

  ExprTree term() {
    ExprTree left = factor();
    for (;;) {
      if (peek('*') || peek('/')) {
        std::size_t at = pos_;
        auto kind = text_[pos_++] == '*' ? ExprTree::Kind::Mul : ExprTree::Kind::Div;
        left = binary(kind, std::move(left), factor(), at);
      } else if (starts_atom()) {
        throw ParseError("implicit multiplication is not allowed", pos_);
      } else {
        return left;
      }
    }
  }

  ExprTree factor() {
    if (peek('-') || peek('+')) {
      std::size_t at = pos_;
      bool negate = text_[pos_++] == '-';
      ExprTree inner = factor();
      if (!negate) return inner;
      ExprTree t;
      t.kind = ExprTree::Kind::Neg;
      t.position = at;
      t.children.push_back(std::move(inner));
      return t;
    }
    ExprTree base = atom();
    if (peek('^')) {
      std::size_t at = pos_++;
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("exponent must be a nonnegative integer", start);
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4) throw ParseError("exponent too large", start);
      ExprTree t;
      t.kind = ExprTree::Kind::Pow;
      t.position = at;
      t.exponent = static_cast<unsigned>(std::stoul(digits));
      t.children.push_back(std::move(base));
      return t;
    }
    return base;
  }

  ExprTree atom() {
    skip();
    ExprTree t;
    t.position = pos_;
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      t = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        throw ParseError("implicit multiplication is not allowed", pos_);
      t.kind = ExprTree::Kind::Number;
      t.number = Rational(std::string(text_.substr(start, pos_ - start)));
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      t.kind = ExprTree::Kind::Name;
      t.name = std::string(text_.substr(start, pos_ - start));
      return t;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprTree parse_tree(std::string_view text) { return Parser(text).parse(); }

Expression parse_expression(std::string_view text, const ChartPtr& chart) {
  return normalize(parse_tree(text), chart);
}

}  // namespace cartan
