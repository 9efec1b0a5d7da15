#include "reldiff/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "reldiff/errors.hpp"

namespace reldiff {
namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kConstant;
  n->value = v;
  return n;
}

const NodePtr& zero_node() {
  static const NodePtr z = make_constant(0.0);
  return z;
}

struct FunctionName {
  std::string_view name;
  Function fn;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Function::kSin},   {"cos", Function::kCos}, {"exp", Function::kExp},
    {"ln", Function::kLn},     {"log", Function::kLn},  {"sqrt", Function::kSqrt},
    {"abs", Function::kAbs},
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_term();
      } else if (accept('-')) {
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return reldiff::pow(std::move(base), parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return Expr::constant(v);
  }

  Expr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      for (const auto& f : kFunctions) {
        if (f.name == name) {
          ++pos_;
          Expr arg = parse_expr();
          if (!accept(')')) fail("expected ')' after argument of " + std::string(name));
          return Expr::apply(f.fn, std::move(arg));
        }
      }
      fail("unknown function '" + std::string(name) + "'");
    }
    if (name == "u1") return Expr::variable(1);
    if (name == "u2") return Expr::variable(2);
    if (name == "pi") return Expr::constant(std::numbers::pi);
    return Expr::named(std::string(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_names(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::kNamed) out.insert(n.name);
  if (n.lhs) collect_names(*n.lhs, out);
  if (n.rhs) collect_names(*n.rhs, out);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const Node& n) {
  switch (n.kind) {
    case Node::Kind::kConstant:
      return n.value < 0 ? "(" + format_number(n.value) + ")" : format_number(n.value);
    case Node::Kind::kVariable:
      return n.axis == 1 ? "u1" : "u2";
    case Node::Kind::kNamed:
      return n.name;
    case Node::Kind::kBinary: {
      static constexpr const char* kOps = "+-*/^";
      return "(" + render(*n.lhs) + kOps[static_cast<int>(n.op)] + render(*n.rhs) + ")";
    }
    case Node::Kind::kFunction:
      if (n.fn == Function::kNeg) return "(-" + render(*n.lhs) + ")";
      for (const auto& f : kFunctions) {
        if (f.fn == n.fn) return std::string(f.name) + "(" + render(*n.lhs) + ")";
      }
  }
  return "0";
}

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::parse(std::string_view text) { return Parser(text).parse(); }

Expr Expr::constant(double v) { return Expr(make_constant(v)); }

Expr Expr::variable(int axis) {
  if (axis != 1 && axis != 2) throw PreconditionError("parameter axis must be 1 or 2");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kVariable;
  n->axis = axis;
  n->parametric = true;
  return Expr(std::move(n));
}

Expr Expr::named(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kNamed;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kBinary;
  n->op = op;
  n->parametric = lhs.node_->parametric || rhs.node_->parametric;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

Expr Expr::apply(Function fn, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kFunction;
  n->fn = fn;
  n->parametric = arg.node_->parametric;
  n->lhs = std::move(arg.node_);
  return Expr(std::move(n));
}

bool Expr::depends_on_parameters() const { return node_->parametric; }

std::set<std::string> Expr::named_constants() const {
  std::set<std::string> out;
  collect_names(*node_, out);
  return out;
}

std::string Expr::to_string() const { return render(*node_); }

Expr pow(Expr base, Expr exponent) {
  return Expr::binary(BinaryOp::kPow, std::move(base), std::move(exponent));
}
Expr sin(Expr e) { return Expr::apply(Function::kSin, std::move(e)); }
Expr cos(Expr e) { return Expr::apply(Function::kCos, std::move(e)); }
Expr exp(Expr e) { return Expr::apply(Function::kExp, std::move(e)); }
Expr ln(Expr e) { return Expr::apply(Function::kLn, std::move(e)); }
Expr sqrt(Expr e) { return Expr::apply(Function::kSqrt, std::move(e)); }
Expr abs(Expr e) { return Expr::apply(Function::kAbs, std::move(e)); }

Jet2 jet_apply(const Expr& e, const Jet2& u1, const Jet2& u2, const Bindings& bindings) {
  if (u1.order() != u2.order()) {
    throw OrderError("jet_apply arguments have orders " + std::to_string(u1.order()) + " and " +
                     std::to_string(u2.order()));
  }
  return evaluate_generic<Jet2>(e, u1, u2, bindings);
}

double evaluate(const Expr& e, double u1, double u2, const Bindings& bindings) {
  return evaluate_generic<double>(e, u1, u2, bindings);
}

namespace detail {

double bound_value(const Expr::Node& n, const Bindings& bindings) {
  auto it = bindings.find(n.name);
  if (it == bindings.end()) throw UnboundConstantError("unbound constant '" + n.name + "'");
  return it->second;
}

void fail_domain(const char* what, double at) {
  std::ostringstream os;
  os << what << " undefined at argument value " << at;
  throw DomainError(os.str());
}

void fail_division(double at) {
  std::ostringstream os;
  os << "division by a quantity with value " << at;
  throw DivisionByZero(os.str());
}

}  // namespace detail

}  // namespace reldiff
