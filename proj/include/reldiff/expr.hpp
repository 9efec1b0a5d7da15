#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "reldiff/jet.hpp"

namespace reldiff {

/// Named-constant bindings, e.g. {"r", 1.0}.
using Bindings = std::map<std::string, double, std::less<>>;

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };
enum class Function { kNeg, kSin, kCos, kExp, kLn, kSqrt, kAbs };

/// Closed-form scalar expression in the surface parameters u1, u2.
///
/// Text grammar (whitespace-insensitive):
///
///     expr    := term   (('+' | '-') term)*
///     term    := unary  (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?            right associative
///     primary := number | name | func '(' expr ')' | '(' expr ')'
///     func    := sin | cos | exp | ln | log | sqrt | abs
///
/// Names `u1` and `u2` are the parameters, `pi` is built in, and any other
/// name is a named constant bound at evaluation time.
class Expr {
 public:
  struct Node;

  Expr();  // the constant 0
  static Expr parse(std::string_view text);
  static Expr constant(double v);
  static Expr variable(int axis);
  static Expr named(std::string name);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr apply(Function fn, Expr arg);

  /// True when the expression references u1 or u2.
  bool depends_on_parameters() const;
  std::set<std::string> named_constants() const;
  /// Fully parenthesised text that parses back to the same tree.
  std::string to_string() const;

  const Node& node() const { return *node_; }

  friend Expr operator+(Expr a, Expr b) { return binary(BinaryOp::kAdd, std::move(a), std::move(b)); }
  friend Expr operator-(Expr a, Expr b) { return binary(BinaryOp::kSub, std::move(a), std::move(b)); }
  friend Expr operator*(Expr a, Expr b) { return binary(BinaryOp::kMul, std::move(a), std::move(b)); }
  friend Expr operator/(Expr a, Expr b) { return binary(BinaryOp::kDiv, std::move(a), std::move(b)); }
  friend Expr operator-(Expr a) { return apply(Function::kNeg, std::move(a)); }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr pow(Expr base, Expr exponent);
Expr sin(Expr e);
Expr cos(Expr e);
Expr exp(Expr e);
Expr ln(Expr e);
Expr sqrt(Expr e);
Expr abs(Expr e);

struct Expr::Node {
  enum class Kind { kConstant, kVariable, kNamed, kBinary, kFunction };
  Kind kind = Kind::kConstant;
  double value = 0.0;
  int axis = 0;
  std::string name;
  BinaryOp op = BinaryOp::kAdd;
  Function fn = Function::kNeg;
  bool parametric = false;  // references u1 or u2 somewhere below
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

/// Jet of e(u1, u2) where u1 and u2 are themselves jets of equal order.
Jet2 jet_apply(const Expr& e, const Jet2& u1, const Jet2& u2, const Bindings& bindings = {});

/// Plain real evaluation. Raises the same DomainError / DivisionByZero
/// conditions as jet_apply.
double evaluate(const Expr& e, double u1, double u2, const Bindings& bindings = {});

namespace detail {

inline double value_of(const Jet2& j) { return j.value(); }
template <class T>
double value_of(const T& t) {
  return static_cast<double>(t);
}

inline Jet2 lift(const Jet2& like, double v) { return Jet2(like.order(), v); }
template <class T>
T lift(const T&, double v) {
  return T(v);
}

double bound_value(const Expr::Node& n, const Bindings& bindings);
[[noreturn]] void fail_domain(const char* what, double at);
[[noreturn]] void fail_division(double at);

inline Jet2 power(const Jet2& base, double p) { return reldiff::pow(base, p); }
template <class T>
T power(const T& base, double p) {
  using std::pow;
  const double b0 = value_of(base);
  const bool integral = std::floor(p) == p;
  if (integral && p < 0 && b0 == 0.0) fail_division(b0);
  if (!integral && !(b0 > 0.0)) fail_domain("non-integer power", b0);
  return pow(base, T(p));
}

}  // namespace detail

/// Walks the tree over any scalar type with the elementary functions found by
/// argument-dependent lookup (double, Jet2, multiprecision floats).
template <class T>
T evaluate_generic(const Expr::Node& n, const T& u1, const T& u2, const Bindings& bindings) {
  using std::abs;
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  using Kind = Expr::Node::Kind;
  switch (n.kind) {
    case Kind::kConstant:
      return detail::lift(u1, n.value);
    case Kind::kVariable:
      return n.axis == 1 ? u1 : u2;
    case Kind::kNamed:
      return detail::lift(u1, detail::bound_value(n, bindings));
    case Kind::kBinary: {
      if (n.op == BinaryOp::kPow && !n.rhs->parametric) {
        const double p = evaluate_generic<double>(*n.rhs, 0.0, 0.0, bindings);
        return detail::power(evaluate_generic(*n.lhs, u1, u2, bindings), p);
      }
      T a = evaluate_generic(*n.lhs, u1, u2, bindings);
      T b = evaluate_generic(*n.rhs, u1, u2, bindings);
      switch (n.op) {
        case BinaryOp::kAdd: return a + b;
        case BinaryOp::kSub: return a - b;
        case BinaryOp::kMul: return a * b;
        case BinaryOp::kDiv:
          if (detail::value_of(b) == 0.0) detail::fail_division(0.0);
          return a / b;
        case BinaryOp::kPow:
          if (!(detail::value_of(a) > 0.0)) detail::fail_domain("variable power", detail::value_of(a));
          return exp(b * log(a));
      }
      break;
    }
    case Kind::kFunction: {
      T a = evaluate_generic(*n.lhs, u1, u2, bindings);
      const double a0 = detail::value_of(a);
      switch (n.fn) {
        case Function::kNeg: return -a;
        case Function::kSin: return sin(a);
        case Function::kCos: return cos(a);
        case Function::kExp: return exp(a);
        case Function::kLn:
          if (!(a0 > 0.0)) detail::fail_domain("ln", a0);
          return log(a);
        case Function::kSqrt:
          if (!(a0 > 0.0)) detail::fail_domain("sqrt", a0);
          return sqrt(a);
        case Function::kAbs:
          if (a0 == 0.0) detail::fail_domain("abs", a0);
          return a0 > 0.0 ? a : T(-a);
      }
      break;
    }
  }
  return detail::lift(u1, 0.0);
}

template <class T>
T evaluate_generic(const Expr& e, const T& u1, const T& u2, const Bindings& bindings) {
  return evaluate_generic(e.node(), u1, u2, bindings);
}

}  // namespace reldiff
