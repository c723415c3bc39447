#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace gradflow {

/// Immutable expression tree in the single variable `x`.
///
/// Grammar (highest precedence first): `^` (right-assoc), unary `-`,
/// `* /`, `+ -` (left-assoc). Functions: exp sin cos tanh sqrt abs.
class Expr {
 public:
  enum class Kind { literal, variable, add, sub, mul, div, pow, neg, call };
  enum class Func { exp, sin, cos, tanh, sqrt, abs };

  struct Node;

  /// Throws ParseError or UnknownIdentifierError.
  static Expr parse(std::string_view source);

  static Expr literal(double value);
  static Expr variable();

  /// Throws NonFiniteError naming the innermost non-finite subexpression.
  double eval(double x) const;

  /// Canonical, fully parenthesised text; parse(print()) reproduces the tree.
  std::string print() const;

  bool operator==(const Expr& other) const;

  const Node& root() const { return *root_; }

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  std::shared_ptr<const Node> root_;

  friend class ExprParser;
};

struct Expr::Node {
  Kind kind;
  double value = 0.0;  // literal
  Func func = Func::exp;
  std::shared_ptr<const Node> lhs;  // unary operand or call argument
  std::shared_ptr<const Node> rhs;
};

std::string_view func_name(Expr::Func f);

}  // namespace gradflow
