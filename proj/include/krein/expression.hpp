#pragma once

#include <memory>
#include <string>
#include <vector>

#include "krein/weyl_spectral.hpp"

namespace krein {

/// Compiled arithmetic expression in the variable `mu`.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | primary
///   primary := number | 'i' | 'pi' | 'mu' | 'sqrt' '(' expr ')' | '(' expr ')'
///
/// sqrt takes the branch with Im >= 0. Parse errors throw ConfigError.
class Expression {
 public:
  explicit Expression(const std::string& text);

  cplx operator()(cplx mu) const;
  const std::string& text() const { return text_; }

 private:
  enum class Op { constant, variable, add, sub, mul, div, neg, sqrt };
  struct Node {
    Op op;
    cplx value;
    int lhs = -1;
    int rhs = -1;
  };

  friend class ExpressionParser;

  cplx eval(int node, cplx mu) const;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// User-supplied Weyl function m(mu) = expression, real on the declared domain.
class ExpressionWeylFn final : public WeylFn {
 public:
  ExpressionWeylFn(Expression expr, std::vector<Interval> real_domain);

  cplx eval(cplx mu) const override { return expr_(mu); }
  std::vector<Interval> real_domain() const override { return domain_; }
  /// Throws DomainError outside the declared domain or when m(r) has a
  /// non-negligible imaginary part there.
  double boundary_eval(double r) const override;
  std::string name() const override { return "expr:" + expr_.text(); }

 private:
  Expression expr_;
  std::vector<Interval> domain_;
};

}  // namespace krein
