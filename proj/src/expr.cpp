#include "duhamel/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>

#include "duhamel/error.hpp"

namespace duhamel {

enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func };
enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt, Tanh, Sinh, Cosh, Asinh, Abs };

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;
  Var var = Var::X;
  Fn fn = Fn::Sin;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct FnName {
  const char* name;
  Fn fn;
};
constexpr FnName kFunctions[] = {{"sin", Fn::Sin},   {"cos", Fn::Cos},     {"tan", Fn::Tan},
                                 {"exp", Fn::Exp},   {"log", Fn::Log},     {"ln", Fn::Log},
                                 {"sqrt", Fn::Sqrt}, {"tanh", Fn::Tanh},   {"sinh", Fn::Sinh},
                                 {"cosh", Fn::Cosh}, {"asinh", Fn::Asinh}, {"abs", Fn::Abs}};

const char* fn_name(Fn f) {
  for (const auto& e : kFunctions) {
    if (e.fn == f) return e.name;
  }
  return "?";
}

NodePtr make_const(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodePtr make_var(Var v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Var;
  n->var = v;
  return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }
bool is_const(const NodePtr& n) { return n->op == Op::Const; }

double apply_fn(Fn f, double x) {
  switch (f) {
    case Fn::Sin: return std::sin(x);
    case Fn::Cos: return std::cos(x);
    case Fn::Tan: return std::tan(x);
    case Fn::Exp: return std::exp(x);
    case Fn::Log: return std::log(x);
    case Fn::Sqrt: return std::sqrt(x);
    case Fn::Tanh: return std::tanh(x);
    case Fn::Sinh: return std::sinh(x);
    case Fn::Cosh: return std::cosh(x);
    case Fn::Asinh: return std::asinh(x);
    case Fn::Abs: return std::fabs(x);
  }
  return 0.0;
}

double binary(Op op, double x, double y) {
  switch (op) {
    case Op::Add: return x + y;
    case Op::Sub: return x - y;
    case Op::Mul: return x * y;
    case Op::Div: return x / y;
    case Op::Pow: return std::pow(x, y);
    default: return 0.0;
  }
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(binary(op, a->value, b->value));
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) return a;
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Div:
      if (is_const(a, 0.0)) return make_const(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Pow:
      if (is_const(b, 0.0)) return make_const(1.0);
      if (is_const(b, 1.0)) return a;
      break;
    default:
      break;
  }
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_neg(NodePtr a) {
  if (is_const(a)) return make_const(-a->value);
  if (a->op == Op::Neg) return a->a;
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Neg;
  n->a = std::move(a);
  return n;
}

NodePtr make_fn(Fn f, NodePtr a) {
  if (is_const(a)) return make_const(apply_fn(f, a->value));
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::Func;
  n->fn = f;
  n->a = std::move(a);
  return n;
}

double eval_node(const Expr::Node& n, const double* vars) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return vars[static_cast<int>(n.var)];
    case Op::Neg: return -eval_node(*n.a, vars);
    case Op::Func: return apply_fn(n.fn, eval_node(*n.a, vars));
    case Op::Pow: {
      const double base = eval_node(*n.a, vars);
      if (n.b->op == Op::Const) {
        const double e = n.b->value;
        if (e == 2.0) return base * base;
        if (e == 3.0) return base * base * base;
      }
      return std::pow(base, eval_node(*n.b, vars));
    }
    default: return binary(n.op, eval_node(*n.a, vars), eval_node(*n.b, vars));
  }
}

bool depends(const Expr::Node& n, Var v) {
  switch (n.op) {
    case Op::Const: return false;
    case Op::Var: return n.var == v;
    case Op::Neg:
    case Op::Func: return depends(*n.a, v);
    default: return depends(*n.a, v) || depends(*n.b, v);
  }
}

NodePtr diff(const NodePtr& n, Var v) {
  if (!depends(*n, v)) return make_const(0.0);
  const auto& a = n->a;
  const auto& b = n->b;
  switch (n->op) {
    case Op::Const: return make_const(0.0);
    case Op::Var: return make_const(1.0);
    case Op::Neg: return make_neg(diff(a, v));
    case Op::Add: return make_binary(Op::Add, diff(a, v), diff(b, v));
    case Op::Sub: return make_binary(Op::Sub, diff(a, v), diff(b, v));
    case Op::Mul:
      return make_binary(Op::Add, make_binary(Op::Mul, diff(a, v), b),
                         make_binary(Op::Mul, a, diff(b, v)));
    case Op::Div:
      return make_binary(Op::Div,
                         make_binary(Op::Sub, make_binary(Op::Mul, diff(a, v), b),
                                     make_binary(Op::Mul, a, diff(b, v))),
                         make_binary(Op::Mul, b, b));
    case Op::Pow:
      if (!depends(*b, v)) {
        // d(a^c) = c a^(c-1) a'
        return make_binary(Op::Mul,
                           make_binary(Op::Mul, b,
                                       make_binary(Op::Pow, a, make_binary(Op::Sub, b, make_const(1.0)))),
                           diff(a, v));
      }
      // d(a^b) = a^b (b' ln a + b a'/a)
      return make_binary(
          Op::Mul, n,
          make_binary(Op::Add, make_binary(Op::Mul, diff(b, v), make_fn(Fn::Log, a)),
                      make_binary(Op::Div, make_binary(Op::Mul, b, diff(a, v)), a)));
    case Op::Func: {
      NodePtr outer;
      switch (n->fn) {
        case Fn::Sin: outer = make_fn(Fn::Cos, a); break;
        case Fn::Cos: outer = make_neg(make_fn(Fn::Sin, a)); break;
        case Fn::Tan: {
          auto c = make_fn(Fn::Cos, a);
          outer = make_binary(Op::Div, make_const(1.0), make_binary(Op::Mul, c, c));
          break;
        }
        case Fn::Exp: outer = n; break;
        case Fn::Log: outer = make_binary(Op::Div, make_const(1.0), a); break;
        case Fn::Sqrt: outer = make_binary(Op::Div, make_const(0.5), n); break;
        case Fn::Tanh: outer = make_binary(Op::Sub, make_const(1.0), make_binary(Op::Mul, n, n)); break;
        case Fn::Sinh: outer = make_fn(Fn::Cosh, a); break;
        case Fn::Cosh: outer = make_fn(Fn::Sinh, a); break;
        case Fn::Asinh:
          outer = make_binary(Op::Div, make_const(1.0),
                              make_fn(Fn::Sqrt, make_binary(Op::Add, make_binary(Op::Mul, a, a),
                                                            make_const(1.0))));
          break;
        case Fn::Abs: outer = make_binary(Op::Div, a, n); break;
      }
      return make_binary(Op::Mul, outer, diff(a, v));
    }
  }
  return make_const(0.0);
}

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

void print(std::ostringstream& os, const Expr::Node& n) {
  auto child = [&](const Expr::Node& c, int min_prec) {
    const bool paren = precedence(c.op) < min_prec || (c.op == Op::Const && c.value < 0);
    if (paren) os << '(';
    print(os, c);
    if (paren) os << ')';
  };
  switch (n.op) {
    case Op::Const: os << n.value; break;
    case Op::Var: os << "xyzt"[static_cast<int>(n.var)]; break;
    case Op::Neg: os << '-'; child(*n.a, 4); break;
    case Op::Func: os << fn_name(n.fn) << '('; print(os, *n.a); os << ')'; break;
    case Op::Add: child(*n.a, 1); os << " + "; child(*n.b, 2); break;
    case Op::Sub: child(*n.a, 1); os << " - "; child(*n.b, 2); break;
    case Op::Mul: child(*n.a, 2); os << "*"; child(*n.b, 3); break;
    case Op::Div: child(*n.a, 2); os << "/"; child(*n.b, 3); break;
    case Op::Pow: child(*n.a, 5); os << "^"; child(*n.b, 4); break;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("expression '" + std::string(s_) + "': " + msg + " at position " +
                      std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) {
        n = make_binary(Op::Add, n, term());
      } else if (accept('-')) {
        n = make_binary(Op::Sub, n, term());
      } else {
        return n;
      }
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) {
        n = make_binary(Op::Mul, n, unary());
      } else if (accept('/')) {
        n = make_binary(Op::Div, n, unary());
      } else {
        return n;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("bad number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view id = s_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (id == f.name) {
        if (!accept('(')) fail("expected '(' after function name");
        NodePtr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return make_fn(f.fn, arg);
      }
    }
    if (id == "x" || id == "x1") return make_var(Var::X);
    if (id == "y" || id == "x2") return make_var(Var::Y);
    if (id == "z" || id == "x3") return make_var(Var::Z);
    if (id == "t") return make_var(Var::T);
    if (id == "pi") return make_const(std::numbers::pi);
    if (id == "e") return make_const(std::numbers::e);
    pos_ = start;
    fail("unknown identifier '" + std::string(id) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr::Expr() : node_(make_const(0.0)) {}
Expr Expr::parse(std::string_view text) { return Expr(Parser(text).parse()); }
Expr Expr::constant(double v) { return Expr(make_const(v)); }
Expr Expr::variable(Var v) { return Expr(make_var(v)); }

double Expr::eval(double x, double y, double z, double t) const {
  const double vars[4] = {x, y, z, t};
  return eval_node(*node_, vars);
}

Expr Expr::derivative(Var v) const { return Expr(diff(node_, v)); }
bool Expr::depends_on(Var v) const { return depends(*node_, v); }
bool Expr::is_constant() const { return node_->op == Op::Const; }

double Expr::constant_value() const {
  if (!is_constant()) throw ConfigError("expression is not constant: " + str());
  return node_->value;
}

std::string Expr::str() const {
  std::ostringstream os;
  os.precision(17);
  print(os, *node_);
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_binary(Op::Add, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_binary(Op::Sub, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_binary(Op::Mul, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_binary(Op::Div, a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(make_neg(a.node_)); }
Expr pow(const Expr& a, const Expr& b) { return Expr(make_binary(Op::Pow, a.node_, b.node_)); }
Expr exp(const Expr& a) { return Expr(make_fn(Fn::Exp, a.node_)); }
Expr log(const Expr& a) { return Expr(make_fn(Fn::Log, a.node_)); }
Expr sin(const Expr& a) { return Expr(make_fn(Fn::Sin, a.node_)); }
Expr cos(const Expr& a) { return Expr(make_fn(Fn::Cos, a.node_)); }
Expr sqrt(const Expr& a) { return Expr(make_fn(Fn::Sqrt, a.node_)); }

}  // namespace duhamel
