#include "gradflow/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cctype>
#include <utility>

#include "gradflow/errors.hpp"

namespace gradflow {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

constexpr std::array<std::pair<std::string_view, Expr::Func>, 6> kFunctions{{
    {"exp", Expr::Func::exp},
    {"sin", Expr::Func::sin},
    {"cos", Expr::Func::cos},
    {"tanh", Expr::Func::tanh},
    {"sqrt", Expr::Func::sqrt},
    {"abs", Expr::Func::abs},
}};

NodePtr make_binary(Expr::Kind kind, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void print_node(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::literal:
      out += format_number(n.value);
      return;
    case Expr::Kind::variable:
      out += 'x';
      return;
    case Expr::Kind::neg:
      out += "(-";
      print_node(*n.lhs, out);
      out += ')';
      return;
    case Expr::Kind::call:
      out += func_name(n.func);
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
    default:
      break;
  }
  char op = '+';
  switch (n.kind) {
    case Expr::Kind::sub: op = '-'; break;
    case Expr::Kind::mul: op = '*'; break;
    case Expr::Kind::div: op = '/'; break;
    case Expr::Kind::pow: op = '^'; break;
    default: break;
  }
  out += '(';
  print_node(*n.lhs, out);
  out += ' ';
  out += op;
  out += ' ';
  print_node(*n.rhs, out);
  out += ')';
}

std::string node_text(const Expr::Node& n) {
  std::string s;
  print_node(n, s);
  return s;
}

double apply_func(Expr::Func f, double a) {
  switch (f) {
    case Expr::Func::exp: return std::exp(a);
    case Expr::Func::sin: return std::sin(a);
    case Expr::Func::cos: return std::cos(a);
    case Expr::Func::tanh: return std::tanh(a);
    case Expr::Func::sqrt: return std::sqrt(a);
    case Expr::Func::abs: return std::abs(a);
  }
  return a;
}

double eval_node(const Expr::Node& n, double x) {
  double r = 0.0;
  switch (n.kind) {
    case Expr::Kind::literal: return n.value;
    case Expr::Kind::variable: r = x; break;
    case Expr::Kind::neg: r = -eval_node(*n.lhs, x); break;
    case Expr::Kind::call: r = apply_func(n.func, eval_node(*n.lhs, x)); break;
    case Expr::Kind::add: r = eval_node(*n.lhs, x) + eval_node(*n.rhs, x); break;
    case Expr::Kind::sub: r = eval_node(*n.lhs, x) - eval_node(*n.rhs, x); break;
    case Expr::Kind::mul: r = eval_node(*n.lhs, x) * eval_node(*n.rhs, x); break;
    case Expr::Kind::div: r = eval_node(*n.lhs, x) / eval_node(*n.rhs, x); break;
    case Expr::Kind::pow: r = std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x)); break;
  }
  if (!std::isfinite(r)) throw NonFiniteError(node_text(n), x);
  return r;
}

bool nodes_equal(const Expr::Node* a, const Expr::Node* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::literal: return a->value == b->value;
    case Expr::Kind::variable: return true;
    case Expr::Kind::call:
      return a->func == b->func && nodes_equal(a->lhs.get(), b->lhs.get());
    case Expr::Kind::neg: return nodes_equal(a->lhs.get(), b->lhs.get());
    default:
      return nodes_equal(a->lhs.get(), b->lhs.get()) && nodes_equal(a->rhs.get(), b->rhs.get());
  }
}

}  // namespace

// Recursive descent over the byte string; offsets in errors are byte offsets.
class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  Expr run() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError(pos_, "expression");
    NodePtr root = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(pos_, "operator or end of input");
    return Expr(std::move(root));
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Expr::Kind::add, lhs, parse_product());
      } else if (accept('-')) {
        lhs = make_binary(Expr::Kind::sub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Expr::Kind::mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = make_binary(Expr::Kind::div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) {
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Kind::neg;
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  // Exponent may carry its own unary minus: 2^-x.
  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make_binary(Expr::Kind::pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "number, 'x', function or '('");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      if (!accept(')')) throw ParseError(pos_, "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(pos_, "number, 'x', function or '('");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    double value = 0.0;
    auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc{}) throw ParseError(start, "number");
    pos_ = static_cast<std::size_t>(end - src_.data());
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::literal;
    n->value = value;
    return n;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") {
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Kind::variable;
      return n;
    }
    for (const auto& [fname, f] : kFunctions) {
      if (fname != name) continue;
      if (!accept('(')) throw ParseError(pos_, "'(' after function name");
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Kind::call;
      n->func = f;
      n->lhs = parse_sum();
      if (!accept(')')) throw ParseError(pos_, "')'");
      return n;
    }
    throw UnknownIdentifierError(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string_view func_name(Expr::Func f) {
  for (const auto& [name, g] : kFunctions) {
    if (g == f) return name;
  }
  return "?";
}

Expr Expr::parse(std::string_view source) { return ExprParser(source).run(); }

Expr Expr::literal(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::literal;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  return Expr(std::move(n));
}

double Expr::eval(double x) const { return eval_node(*root_, x); }

std::string Expr::print() const { return node_text(*root_); }

bool Expr::operator==(const Expr& other) const {
  return nodes_equal(root_.get(), other.root_.get());
}

}  // namespace gradflow
