#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/geometry.hpp"

namespace cauchy {

enum class NodeKind { Constant, Variable, Add, Sub, Mul, Div, Pow, Call };
enum class Builtin { Exp, Sin, Cos };

/// Immutable expression tree over one complex variable. Subtrees are shared,
/// so copies are cheap. Variable-free subtrees are folded to constants on
/// construction whenever the folded value is finite.
class Expr {
 public:
  static Expr constant(Complex c) { return Expr(make(NodeKind::Constant, c)); }
  static Expr variable() { return Expr(make(NodeKind::Variable)); }

  /// Raw binary node: only variable-free folding, no algebraic identities.
  static Expr binary(NodeKind kind, const Expr& lhs, const Expr& rhs) {
    auto n = make(kind);
    n->lhs = lhs.node_;
    n->rhs = rhs.node_;
    return finish(std::move(n));
  }
  static Expr power(const Expr& base, unsigned exponent) {
    auto n = make(NodeKind::Pow);
    n->lhs = base.node_;
    n->exponent = exponent;
    return finish(std::move(n));
  }
  static Expr call(Builtin fn, const Expr& arg) {
    auto n = make(NodeKind::Call);
    n->fn = fn;
    n->lhs = arg.node_;
    return finish(std::move(n));
  }

  NodeKind kind() const noexcept { return node_->kind; }
  Complex value() const noexcept { return node_->value; }
  unsigned exponent() const noexcept { return node_->exponent; }
  Builtin builtin() const noexcept { return node_->fn; }
  Expr lhs() const { return Expr(node_->lhs); }
  Expr rhs() const { return Expr(node_->rhs); }

  bool is_constant() const noexcept { return node_->kind == NodeKind::Constant; }
  bool is_constant(Complex c) const noexcept { return is_constant() && node_->value == c; }
  bool depends_on_variable() const noexcept { return node_->has_var; }

  /// Plain recursive evaluation; no singularity or range checks.
  Complex evaluate(Complex z) const noexcept { return eval_node(*node_, z); }

  /// Fully parenthesized infix text accepted back by `parse`.
  std::string to_string(std::string_view var = "z") const {
    std::string out;
    print(*node_, var, out);
    return out;
  }

 private:
  struct Node {
    NodeKind kind = NodeKind::Constant;
    Complex value{};
    unsigned exponent = 0;
    Builtin fn = Builtin::Exp;
    bool has_var = false;
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(NodeKind kind, Complex value = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->value = value;
    n->has_var = kind == NodeKind::Variable;
    return n;
  }

  static Expr finish(std::shared_ptr<Node> n) {
    n->has_var = (n->lhs && n->lhs->has_var) || (n->rhs && n->rhs->has_var);
    if (!n->has_var) {
      const Complex v = eval_node(*n, Complex{});
      if (is_finite(v)) return constant(v);
    }
    return Expr(std::move(n));
  }

  static Complex ipow(Complex base, unsigned n) noexcept {
    Complex result{1.0, 0.0};
    while (n) {
      if (n & 1u) result *= base;
      n >>= 1u;
      if (n) base *= base;
    }
    return result;
  }

  static Complex call_builtin(Builtin fn, Complex w) noexcept {
    const double x = w.real(), y = w.imag();
    switch (fn) {
      case Builtin::Exp: {
        const double r = std::exp(x);
        return {r * std::cos(y), r * std::sin(y)};
      }
      case Builtin::Sin:
        return {std::sin(x) * std::cosh(y), std::cos(x) * std::sinh(y)};
      case Builtin::Cos:
        return {std::cos(x) * std::cosh(y), -std::sin(x) * std::sinh(y)};
    }
    return {};
  }

  static Complex eval_node(const Node& n, Complex z) noexcept {
    switch (n.kind) {
      case NodeKind::Constant: return n.value;
      case NodeKind::Variable: return z;
      case NodeKind::Add: return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
      case NodeKind::Sub: return eval_node(*n.lhs, z) - eval_node(*n.rhs, z);
      case NodeKind::Mul: return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
      case NodeKind::Div: return eval_node(*n.lhs, z) / eval_node(*n.rhs, z);
      case NodeKind::Pow: return ipow(eval_node(*n.lhs, z), n.exponent);
      case NodeKind::Call: return call_builtin(n.fn, eval_node(*n.lhs, z));
    }
    return {};
  }

  static void print_real(double x, std::string& out) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    if (std::signbit(x)) {
      out += '(';
      out += buf;
      out += ')';
    } else {
      out += buf;
    }
  }

  static void print(const Node& n, std::string_view var, std::string& out) {
    auto infix = [&](const char* op) {
      out += '(';
      print(*n.lhs, var, out);
      out += op;
      print(*n.rhs, var, out);
      out += ')';
    };
    switch (n.kind) {
      case NodeKind::Constant:
        if (n.value.imag() == 0.0) {
          print_real(n.value.real(), out);
        } else {
          out += '(';
          print_real(n.value.real(), out);
          out += " + ";
          print_real(n.value.imag(), out);
          out += "*i)";
        }
        return;
      case NodeKind::Variable: out += var; return;
      case NodeKind::Add: infix(" + "); return;
      case NodeKind::Sub: infix(" - "); return;
      case NodeKind::Mul: infix(" * "); return;
      case NodeKind::Div: infix(" / "); return;
      case NodeKind::Pow:
        out += '(';
        print(*n.lhs, var, out);
        out += ")^";
        out += std::to_string(n.exponent);
        return;
      case NodeKind::Call:
        out += n.fn == Builtin::Exp ? "exp(" : n.fn == Builtin::Sin ? "sin(" : "cos(";
        print(*n.lhs, var, out);
        out += ')';
        return;
    }
  }

  std::shared_ptr<const Node> node_;
};

// Builders with local simplification (x + 0, x * 1, x * 0, x^1, ...).

inline Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::binary(NodeKind::Add, a, b);
}
inline Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  return Expr::binary(NodeKind::Sub, a, b);
}
inline Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return Expr::binary(NodeKind::Mul, a, b);
}
inline Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  return Expr::binary(NodeKind::Div, a, b);
}
inline Expr operator-(const Expr& a) { return Expr::constant(-1.0) * a; }
inline Expr pow(const Expr& base, unsigned n) {
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return base;
  return Expr::power(base, n);
}
inline Expr exp(const Expr& a) { return Expr::call(Builtin::Exp, a); }
inline Expr sin(const Expr& a) { return Expr::call(Builtin::Sin, a); }
inline Expr cos(const Expr& a) { return Expr::call(Builtin::Cos, a); }

/// Symbolic derivative by the sum, product, quotient, integer power and chain
/// rules. Quotients keep their squared denominators unsimplified.
inline Expr derivative(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::Constant: return Expr::constant(0.0);
    case NodeKind::Variable: return Expr::constant(1.0);
    case NodeKind::Add: return derivative(e.lhs()) + derivative(e.rhs());
    case NodeKind::Sub: return derivative(e.lhs()) - derivative(e.rhs());
    case NodeKind::Mul:
      return derivative(e.lhs()) * e.rhs() + e.lhs() * derivative(e.rhs());
    case NodeKind::Div:
      return (derivative(e.lhs()) * e.rhs() - e.lhs() * derivative(e.rhs())) /
             pow(e.rhs(), 2);
    case NodeKind::Pow: {
      const unsigned n = e.exponent();
      if (n == 0) return Expr::constant(0.0);
      return Expr::constant(static_cast<double>(n)) * pow(e.lhs(), n - 1) *
             derivative(e.lhs());
    }
    case NodeKind::Call: {
      const Expr u = e.lhs();
      switch (e.builtin()) {
        case Builtin::Exp: return exp(u) * derivative(u);
        case Builtin::Sin: return cos(u) * derivative(u);
        case Builtin::Cos: return -sin(u) * derivative(u);
      }
    }
  }
  return Expr::constant(0.0);
}

/// Poles read off syntactically: every denominator of the shape z, z - c,
/// c - z, z + c or c + z (optionally raised to a positive power) with c free
/// of the variable contributes its root.
inline std::vector<Complex> detect_poles(const Expr& e) {
  std::vector<Complex> poles;
  auto add = [&](Complex c) {
    if (std::find(poles.begin(), poles.end(), c) == poles.end()) poles.push_back(c);
  };
  auto visit = [&](auto&& self, const Expr& n) -> void {
    switch (n.kind()) {
      case NodeKind::Constant:
      case NodeKind::Variable: return;
      case NodeKind::Pow:
      case NodeKind::Call: self(self, n.lhs()); return;
      default: break;
    }
    self(self, n.lhs());
    self(self, n.rhs());
    if (n.kind() != NodeKind::Div) return;
    Expr d = n.rhs();
    if (d.kind() == NodeKind::Pow && d.exponent() > 0) d = d.lhs();
    if (d.kind() == NodeKind::Variable) {
      add(0.0);
    } else if (d.kind() == NodeKind::Sub || d.kind() == NodeKind::Add) {
      const Expr l = d.lhs(), r = d.rhs();
      const bool minus = d.kind() == NodeKind::Sub;
      if (l.kind() == NodeKind::Variable && r.is_constant())
        add(minus ? r.value() : -r.value());
      else if (r.kind() == NodeKind::Variable && l.is_constant())
        add(minus ? l.value() : -l.value());
    }
  };
  visit(visit, e);
  return poles;
}

/// An evaluable complex function with its declared finite singularity set.
class FunctionSpec {
 public:
  explicit FunctionSpec(Expr body, std::vector<Complex> singularities = {})
      : body_(std::move(body)) {
    for (Complex s : singularities) add_singularity(s);
  }

  const Expr& body() const noexcept { return body_; }
  std::span<const Complex> singularities() const noexcept { return singularities_; }

  FunctionSpec with_singularities(std::span<const Complex> extra) const {
    FunctionSpec out = *this;
    for (Complex s : extra) out.add_singularity(s);
    return out;
  }

  Complex operator()(Complex z) const {
    for (Complex s : singularities_)
      if (z == s)
        throw Error(ErrorCode::EvalAtSingularity,
                    "evaluation at declared singularity " + detail::fmt_num(s.real()) + "," +
                        detail::fmt_num(s.imag()));
    const Complex v = body_.evaluate(z);
    if (!is_finite(v))
      throw Error(ErrorCode::Range, "non-finite value at " + detail::fmt_num(z.real()) + "," +
                                        detail::fmt_num(z.imag()));
    return v;
  }

  std::string to_string(std::string_view var = "z") const { return body_.to_string(var); }

 private:
  void add_singularity(Complex s) {
    if (!is_finite(s)) throw Error(ErrorCode::InvalidArgument, "singularity must be finite");
    if (std::find(singularities_.begin(), singularities_.end(), s) == singularities_.end())
      singularities_.push_back(s);
  }

  Expr body_;
  std::vector<Complex> singularities_;
};

inline Complex eval(const FunctionSpec& f, Complex z) { return f(z); }

inline FunctionSpec differentiate(const FunctionSpec& f) {
  return FunctionSpec(derivative(f.body()),
                      std::vector<Complex>(f.singularities().begin(), f.singularities().end()));
}

namespace detail {

// Recursive descent over
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' nonneg_int)*        (right associative)
//   atom  := number | 'i' | 'pi' | var | ident '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

  Expr parse() {
    skip_ws();
    if (pos_ == src_.size()) fail("empty expression");
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::Syntax) const {
    throw SyntaxError(code, msg, pos_);
  }

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
  bool at_digit() const {
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = Expr::binary(NodeKind::Add, e, term());
      else if (accept('-'))
        e = Expr::binary(NodeKind::Sub, e, term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*'))
        e = Expr::binary(NodeKind::Mul, e, unary());
      else if (accept('/'))
        e = Expr::binary(NodeKind::Div, e, unary());
      else
        return e;
    }
  }

  Expr unary() {
    if (accept('-')) {
      Expr operand = unary();
      if (operand.is_constant()) return Expr::constant(-operand.value());
      return Expr::binary(NodeKind::Sub, Expr::constant(0.0), operand);
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    skip_ws();
    if (!accept('^')) return base;
    return Expr::power(base, exponent_chain());
  }

  unsigned exponent_chain() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '-')
      fail("negative exponent", ErrorCode::BadExponent);
    if (!at_digit()) fail("exponent must be a nonnegative integer literal", ErrorCode::BadExponent);
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
      pos_ = start;
      fail("non-integer exponent", ErrorCode::BadExponent);
    }
    const std::string digits(src_.substr(start, pos_ - start));
    unsigned long n = digits.size() > 6 ? kMaxExponent + 1 : std::stoul(digits);
    if (accept('^')) {
      const unsigned tail = exponent_chain();
      unsigned long r = 1;
      for (unsigned k = 0; k < tail && r <= kMaxExponent; ++k) r *= n;
      n = tail == 0 ? 1 : r;
    }
    if (n > kMaxExponent) {
      pos_ = start;
      fail("exponent too large", ErrorCode::BadExponent);
    }
    return static_cast<unsigned>(n);
  }

  Expr atom() {
    skip_ws();
    if (pos_ == src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      skip_ws();
      const bool is_call = pos_ < src_.size() && src_[pos_] == '(';
      if (is_call) {
        Builtin fn;
        if (id == "exp")
          fn = Builtin::Exp;
        else if (id == "sin")
          fn = Builtin::Sin;
        else if (id == "cos")
          fn = Builtin::Cos;
        else {
          pos_ = start;
          fail("unknown function '" + std::string(id) + "'");
        }
        ++pos_;
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::call(fn, arg);
      }
      if (id == var_) return Expr::variable();
      if (id == "i") return Expr::constant({0.0, 1.0});
      if (id == "pi") return Expr::constant(std::numbers::pi);
      pos_ = start;
      fail("unknown identifier '" + std::string(id) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (at_digit()) ++pos_;
    }
    if (pos_ == start + 1 && src_[start] == '.') {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (at_digit()) ++pos_;
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    const double v = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    return Expr::constant(v);
  }

  static constexpr unsigned long kMaxExponent = 4096;

  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `src` over the named variable and declares the syntactically
/// detectable poles. `i` is the imaginary unit and `pi` is available as a
/// numeric constant.
inline FunctionSpec parse(std::string_view src, std::string_view variable = "z") {
  if (variable == "i" || variable == "pi" || variable.empty())
    throw Error(ErrorCode::InvalidArgument, "reserved variable name");
  Expr body = detail::Parser(src, variable).parse();
  auto poles = detect_poles(body);
  return FunctionSpec(std::move(body), std::move(poles));
}

}  // namespace cauchy
