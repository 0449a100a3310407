#include "krein/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "krein/errors.hpp"
#include "krein/point_interaction.hpp"

namespace krein {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, std::vector<Expression::Node>& nodes) : s_(text), nodes_(nodes) {}

  int parse() {
    const int root = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression: " + what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Op op, cplx value = 0.0, int lhs = -1, int rhs = -1) {
    nodes_.push_back({op, value, lhs, rhs});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = push(Op::add, 0.0, lhs, term());
      } else if (accept('-')) {
        lhs = push(Op::sub, 0.0, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  int term() {
    int lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = push(Op::mul, 0.0, lhs, unary());
      } else if (accept('/')) {
        lhs = push(Op::div, 0.0, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  int unary() {
    if (accept('-')) return push(Op::neg, 0.0, unary());
    if (accept('+')) return unary();
    return primary();
  }

  int primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      const int inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return push(Op::constant, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string word = s_.substr(start, pos_ - start);
      if (word == "mu") return push(Op::variable);
      if (word == "i") return push(Op::constant, kI);
      if (word == "pi") return push(Op::constant, kPi);
      if (word == "sqrt") {
        if (!accept('(')) fail("expected '(' after sqrt");
        const int arg = expr();
        if (!accept(')')) fail("expected ')'");
        return push(Op::sqrt, 0.0, arg);
      }
      pos_ = start;
      fail("unknown identifier '" + word + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::vector<Expression::Node>& nodes_;
  std::size_t pos_ = 0;
};

Expression::Expression(const std::string& text) : text_(text) {
  ExpressionParser parser(text_, nodes_);
  root_ = parser.parse();
}

cplx Expression::operator()(cplx mu) const { return eval(root_, mu); }

cplx Expression::eval(int node, cplx mu) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return mu;
    case Op::add: return eval(n.lhs, mu) + eval(n.rhs, mu);
    case Op::sub: return eval(n.lhs, mu) - eval(n.rhs, mu);
    case Op::mul: return eval(n.lhs, mu) * eval(n.rhs, mu);
    case Op::div: return eval(n.lhs, mu) / eval(n.rhs, mu);
    case Op::neg: return -eval(n.lhs, mu);
    case Op::sqrt: return sqrt_upper(eval(n.lhs, mu));
  }
  return 0.0;
}

ExpressionWeylFn::ExpressionWeylFn(Expression expr, std::vector<Interval> real_domain)
    : expr_(std::move(expr)), domain_(std::move(real_domain)) {
  if (domain_.empty()) throw ConfigError("expression Weyl function needs a real domain");
}

double ExpressionWeylFn::boundary_eval(double r) const {
  const bool inside = std::any_of(domain_.begin(), domain_.end(), [&](const Interval& d) { return d.contains(r); });
  if (!inside) throw DomainError("r = " + std::to_string(r) + " is outside the declared real domain");
  const cplx v = expr_(cplx(r, 0.0));
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real()))) {
    throw DomainError("m(r) is not real at r = " + std::to_string(r));
  }
  return v.real();
}

}  // namespace krein
