#include "framelift/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace framelift {

struct Expr::Node {
  ExprKind kind;
  double value = 0.0;            // Constant
  int coord = -1;                // Coordinate
  ExprFn fn = ExprFn::Sin;       // Call
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(ExprKind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

const char* expr_fn_name(ExprFn fn) {
  switch (fn) {
    case ExprFn::Sin: return "sin";
    case ExprFn::Cos: return "cos";
    case ExprFn::Tan: return "tan";
    case ExprFn::Exp: return "exp";
    case ExprFn::Log: return "log";
    case ExprFn::Sqrt: return "sqrt";
    case ExprFn::Abs: return "abs";
  }
  return "?";
}

Expr::Expr() : Expr(constant(0.0).node_) {}

Expr Expr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Constant;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::coordinate(int index) {
  if (index < 0) throw DimensionError("negative coordinate index");
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Coordinate;
  n->coord = index;
  return Expr(std::move(n));
}

Expr Expr::call(ExprFn fn, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Call;
  n->fn = fn;
  n->a = std::move(arg.node_);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::constant_value() const { return node_->value; }
int Expr::coordinate_index() const { return node_->coord; }
ExprFn Expr::fn() const { return node_->fn; }

Expr Expr::child(int i) const { return Expr(i == 0 ? node_->a : node_->b); }

int Expr::child_count() const {
  if (!node_->a) return 0;
  return node_->b ? 2 : 1;
}

bool Expr::is_constant(double v) const {
  return node_->kind == ExprKind::Constant && node_->value == v;
}

int Expr::max_coordinate() const {
  switch (node_->kind) {
    case ExprKind::Constant: return -1;
    case ExprKind::Coordinate: return node_->coord;
    default: {
      int m = Expr(node_->a).max_coordinate();
      if (node_->b) {
        int mb = Expr(node_->b).max_coordinate();
        if (mb > m) m = mb;
      }
      return m;
    }
  }
}

Expr operator-(Expr a) { return Expr(make_node(ExprKind::Neg, std::move(a.node_))); }
Expr operator+(Expr a, Expr b) {
  return Expr(make_node(ExprKind::Add, std::move(a.node_), std::move(b.node_)));
}
Expr operator-(Expr a, Expr b) {
  return Expr(make_node(ExprKind::Sub, std::move(a.node_), std::move(b.node_)));
}
Expr operator*(Expr a, Expr b) {
  return Expr(make_node(ExprKind::Mul, std::move(a.node_), std::move(b.node_)));
}
Expr operator/(Expr a, Expr b) {
  return Expr(make_node(ExprKind::Div, std::move(a.node_), std::move(b.node_)));
}
Expr pow(Expr base, Expr exponent) {
  return Expr(make_node(ExprKind::Pow, std::move(base.node_), std::move(exponent.node_)));
}

// ---------------------------------------------------------------------------
// Evaluation (doubles and jets share the structure; kept separate because the
// double path is the hot one and stays allocation-free).
// ---------------------------------------------------------------------------

namespace {

double eval_double(const Expr::Node* n, std::span<const double> p) {
  switch (n->kind) {
    case ExprKind::Constant: return n->value;
    case ExprKind::Coordinate:
      if (n->coord >= static_cast<int>(p.size()))
        throw DimensionError("point has too few coordinates for expression");
      return p[n->coord];
    case ExprKind::Neg: return -eval_double(n->a.get(), p);
    case ExprKind::Add: return eval_double(n->a.get(), p) + eval_double(n->b.get(), p);
    case ExprKind::Sub: return eval_double(n->a.get(), p) - eval_double(n->b.get(), p);
    case ExprKind::Mul: return eval_double(n->a.get(), p) * eval_double(n->b.get(), p);
    case ExprKind::Div: {
      double num = eval_double(n->a.get(), p);
      double den = eval_double(n->b.get(), p);
      if (den == 0.0) throw DomainError("division by zero");
      return num / den;
    }
    case ExprKind::Pow: {
      double base = eval_double(n->a.get(), p);
      double ex = eval_double(n->b.get(), p);
      bool integral = n->b->kind == ExprKind::Constant && ex == std::floor(ex);
      if (integral) {
        if (base == 0.0 && ex < 0.0) throw DomainError("zero raised to negative power");
        return std::pow(base, ex);
      }
      if (base <= 0.0) throw DomainError("non-integer power of non-positive base");
      return std::pow(base, ex);
    }
    case ExprKind::Call: {
      double u = eval_double(n->a.get(), p);
      switch (n->fn) {
        case ExprFn::Sin: return std::sin(u);
        case ExprFn::Cos: return std::cos(u);
        case ExprFn::Tan: return std::tan(u);
        case ExprFn::Exp: return std::exp(u);
        case ExprFn::Log:
          if (u <= 0.0) throw DomainError("log of non-positive argument");
          return std::log(u);
        case ExprFn::Sqrt:
          if (u < 0.0) throw DomainError("sqrt of negative argument");
          return std::sqrt(u);
        case ExprFn::Abs: return std::fabs(u);
      }
    }
  }
  throw Error("corrupt expression node");
}

Jet eval_jet(const Expr::Node* n, std::span<const Jet> p) {
  switch (n->kind) {
    case ExprKind::Constant: {
      return Jet::constant(p[0].dim, p[0].order, n->value);
    }
    case ExprKind::Coordinate:
      if (n->coord >= static_cast<int>(p.size()))
        throw DimensionError("point has too few coordinates for expression");
      return p[n->coord];
    case ExprKind::Neg: return -eval_jet(n->a.get(), p);
    case ExprKind::Add: return eval_jet(n->a.get(), p) + eval_jet(n->b.get(), p);
    case ExprKind::Sub: return eval_jet(n->a.get(), p) - eval_jet(n->b.get(), p);
    case ExprKind::Mul: return eval_jet(n->a.get(), p) * eval_jet(n->b.get(), p);
    case ExprKind::Div: return eval_jet(n->a.get(), p) / eval_jet(n->b.get(), p);
    case ExprKind::Pow: {
      Jet base = eval_jet(n->a.get(), p);
      if (n->b->kind == ExprKind::Constant) return pow(base, n->b->value);
      return pow(base, eval_jet(n->b.get(), p));
    }
    case ExprKind::Call: {
      Jet u = eval_jet(n->a.get(), p);
      switch (n->fn) {
        case ExprFn::Sin: return sin(u);
        case ExprFn::Cos: return cos(u);
        case ExprFn::Tan: return tan(u);
        case ExprFn::Exp: return exp(u);
        case ExprFn::Log: return log(u);
        case ExprFn::Sqrt: return sqrt(u);
        case ExprFn::Abs: return abs(u);
      }
    }
  }
  throw Error("corrupt expression node");
}

}  // namespace

double Expr::evaluate(std::span<const double> point) const {
  return eval_double(node_.get(), point);
}

Jet Expr::evaluate(std::span<const Jet> point) const {
  if (point.empty()) throw DimensionError("empty jet point");
  return eval_jet(node_.get(), point);
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr Expr::differentiate(int coordinate) const {
  const Node* n = node_.get();
  switch (n->kind) {
    case ExprKind::Constant: return constant(0.0);
    case ExprKind::Coordinate: return constant(n->coord == coordinate ? 1.0 : 0.0);
    case ExprKind::Neg: return -Expr(n->a).differentiate(coordinate);
    case ExprKind::Add:
      return Expr(n->a).differentiate(coordinate) + Expr(n->b).differentiate(coordinate);
    case ExprKind::Sub:
      return Expr(n->a).differentiate(coordinate) - Expr(n->b).differentiate(coordinate);
    case ExprKind::Mul: {
      Expr u(n->a), v(n->b);
      return u.differentiate(coordinate) * v + u * v.differentiate(coordinate);
    }
    case ExprKind::Div: {
      Expr u(n->a), v(n->b);
      return (u.differentiate(coordinate) * v - u * v.differentiate(coordinate)) / (v * v);
    }
    case ExprKind::Pow: {
      Expr u(n->a), v(n->b);
      if (n->b->kind == ExprKind::Constant) {
        double c = n->b->value;
        if (c == 0.0) return constant(0.0);
        return constant(c) * pow(u, constant(c - 1.0)) * u.differentiate(coordinate);
      }
      // d(u^v) = u^v * (v' log u + v u' / u), via the exp(v log u) reading.
      return pow(u, v) * (v.differentiate(coordinate) * call(ExprFn::Log, u) +
                          v * u.differentiate(coordinate) / u);
    }
    case ExprKind::Call: {
      Expr u(n->a);
      Expr du = u.differentiate(coordinate);
      switch (n->fn) {
        case ExprFn::Sin: return call(ExprFn::Cos, u) * du;
        case ExprFn::Cos: return -(call(ExprFn::Sin, u) * du);
        case ExprFn::Tan:
          return du / (call(ExprFn::Cos, u) * call(ExprFn::Cos, u));
        case ExprFn::Exp: return call(ExprFn::Exp, u) * du;
        case ExprFn::Log: return du / u;
        case ExprFn::Sqrt:
          return du / (constant(2.0) * call(ExprFn::Sqrt, u));
        case ExprFn::Abs:
          // sign(u) u' written as (u / |u|) u'; evaluation at u = 0 reports
          // the non-differentiable point as a DomainError.
          return u * du / call(ExprFn::Abs, u);
      }
    }
  }
  throw Error("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Simplification: constant folding plus the unit/zero identities, applied
// bottom-up to fixpoint.
// ---------------------------------------------------------------------------

namespace {

bool all_constant(const Expr& e) {
  if (e.kind() == ExprKind::Constant) return true;
  if (e.kind() == ExprKind::Coordinate) return false;
  for (int i = 0; i < e.child_count(); ++i)
    if (!all_constant(e.child(i))) return false;
  return true;
}

}  // namespace

Expr Expr::simplified() const {
  const Node* n = node_.get();
  if (n->kind == ExprKind::Constant || n->kind == ExprKind::Coordinate) return *this;

  Expr a = Expr(n->a).simplified();
  Expr b = n->b ? Expr(n->b).simplified() : Expr();

  Expr out = *this;
  switch (n->kind) {
    case ExprKind::Neg: out = -a; break;
    case ExprKind::Add: out = a + b; break;
    case ExprKind::Sub: out = a - b; break;
    case ExprKind::Mul: out = a * b; break;
    case ExprKind::Div: out = a / b; break;
    case ExprKind::Pow: out = pow(a, b); break;
    case ExprKind::Call: out = call(n->fn, a); break;
    default: break;
  }

  // Constant folding; leave the node alone if folding hits a domain issue.
  if (all_constant(out)) {
    try {
      double v = out.evaluate(std::span<const double>{});
      if (std::isfinite(v)) return constant(v);
    } catch (const Error&) {
    }
    return out;
  }

  switch (out.kind()) {
    case ExprKind::Add:
      if (a.is_constant(0.0)) return b;
      if (b.is_constant(0.0)) return a;
      break;
    case ExprKind::Sub:
      if (b.is_constant(0.0)) return a;
      if (a.is_constant(0.0)) return (-b).simplified();
      break;
    case ExprKind::Mul:
      if (a.is_constant(0.0) || b.is_constant(0.0)) return constant(0.0);
      if (a.is_constant(1.0)) return b;
      if (b.is_constant(1.0)) return a;
      if (a.is_constant(-1.0)) return (-b).simplified();
      if (b.is_constant(-1.0)) return (-a).simplified();
      break;
    case ExprKind::Div:
      if (a.is_constant(0.0)) return constant(0.0);
      if (b.is_constant(1.0)) return a;
      break;
    case ExprKind::Pow:
      if (b.is_constant(1.0)) return a;
      break;
    case ExprKind::Neg:
      if (a.kind() == ExprKind::Neg) return a.child(0);
      break;
    default: break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_node(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Constant: {
      double v = e.constant_value();
      if (v < 0.0) {
        out += "(-" + format_double(-v) + ")";
      } else {
        out += format_double(v);
      }
      return;
    }
    case ExprKind::Coordinate:
      out += "x" + std::to_string(e.coordinate_index());
      return;
    case ExprKind::Neg:
      out += "(-";
      print_node(e.child(0), out);
      out += ")";
      return;
    case ExprKind::Call:
      out += expr_fn_name(e.fn());
      out += "(";
      print_node(e.child(0), out);
      out += ")";
      return;
    default: {
      const char* op = "?";
      switch (e.kind()) {
        case ExprKind::Add: op = " + "; break;
        case ExprKind::Sub: op = " - "; break;
        case ExprKind::Mul: op = " * "; break;
        case ExprKind::Div: op = " / "; break;
        case ExprKind::Pow: op = " ^ "; break;
        default: break;
      }
      out += "(";
      print_node(e.child(0), out);
      out += op;
      print_node(e.child(1), out);
      out += ")";
    }
  }
}

}  // namespace

std::string Expr::str() const {
  std::string out;
  print_node(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  while (i < n) {
    char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ++i;
      while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) ++i;
      if (i < n && source[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) ++i;
      }
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t mark = i;
        ++i;
        if (i < n && (source[i] == '+' || source[i] == '-')) ++i;
        if (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
          while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) ++i;
        } else {
          i = mark;  // trailing 'e' belongs to an identifier, not this number
        }
      }
      tokens.push_back({Token::Kind::Number, std::string(source.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      ++i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(source[i])) || source[i] == '_')) ++i;
      tokens.push_back({Token::Kind::Identifier, std::string(source.substr(start, i - start)), start});
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      tokens.push_back({Token::Kind::Operator, std::string(1, c), start});
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      tokens.push_back({Token::Kind::Paren, std::string(1, c), start});
      ++i;
      continue;
    }
    if (c == ',') {
      tokens.push_back({Token::Kind::Comma, std::string(1, c), start});
      ++i;
      continue;
    }
    throw LexError(start, std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
// Precedence, loosest to tightest: add/sub, mul/div, unary minus, pow.
// Unary minus binds looser than ^, so "-x^2" parses as -(x^2); pow is
// right-associative and its exponent admits a leading sign ("x^-2").
// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::span<const Token> tokens, const ParseScope& scope)
      : tokens_(tokens), scope_(scope) {}

  Expr run() {
    Expr e = parse_sum();
    if (pos_ < tokens_.size()) throw ParseError(tokens_[pos_].position, "end of input");
    return e;
  }

 private:
  std::span<const Token> tokens_;
  const ParseScope& scope_;
  std::size_t pos_ = 0;

  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  bool accept_op(char op) {
    const Token* t = peek();
    if (t && t->kind == Token::Kind::Operator && t->lexeme[0] == op) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_paren(char p) {
    const Token* t = peek();
    if (t && t->kind == Token::Kind::Paren && t->lexeme[0] == p) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t here() const {
    return pos_ < tokens_.size() ? tokens_[pos_].position
                                 : (tokens_.empty() ? 0 : tokens_.back().position + tokens_.back().lexeme.size());
  }

  Expr parse_sum() {
    Expr e = parse_product();
    for (;;) {
      if (accept_op('+')) {
        e = std::move(e) + parse_product();
      } else if (accept_op('-')) {
        e = std::move(e) - parse_product();
      } else {
        return e;
      }
    }
  }

  Expr parse_product() {
    Expr e = parse_unary();
    for (;;) {
      if (accept_op('*')) {
        e = std::move(e) * parse_unary();
      } else if (accept_op('/')) {
        e = std::move(e) / parse_unary();
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (accept_op('-')) return -parse_unary();
    if (accept_op('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept_op('^')) {
      // right-associative; allow a signed exponent
      return pow(std::move(base), parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    const Token* t = peek();
    if (!t) throw ParseError(here(), "expression");
    if (t->kind == Token::Kind::Number) {
      ++pos_;
      return Expr::constant(std::strtod(t->lexeme.c_str(), nullptr));
    }
    if (t->kind == Token::Kind::Paren && t->lexeme[0] == '(') {
      ++pos_;
      Expr e = parse_sum();
      if (!accept_paren(')')) throw ParseError(here(), "')'");
      return e;
    }
    if (t->kind == Token::Kind::Identifier) {
      ++pos_;
      const Token* next = peek();
      bool is_call = next && next->kind == Token::Kind::Paren && next->lexeme[0] == '(';
      if (is_call) {
        std::optional<ExprFn> fn = function_by_name(t->lexeme);
        if (!fn) throw UnknownIdentifier(t->position, t->lexeme);
        ++pos_;  // '('
        const Token* inner = peek();
        if (inner && inner->kind == Token::Kind::Paren && inner->lexeme[0] == ')')
          throw ParseError(inner->position, "expression");
        Expr arg = parse_sum();
        if (!accept_paren(')')) throw ParseError(here(), "')'");
        return Expr::call(*fn, std::move(arg));
      }
      if (auto it = scope_.coordinates.find(t->lexeme); it != scope_.coordinates.end())
        return Expr::coordinate(it->second);
      if (auto it = scope_.constants.find(t->lexeme); it != scope_.constants.end())
        return Expr::constant(it->second);
      throw UnknownIdentifier(t->position, t->lexeme);
    }
    throw ParseError(t->position, "expression");
  }

  static std::optional<ExprFn> function_by_name(const std::string& name) {
    if (name == "sin") return ExprFn::Sin;
    if (name == "cos") return ExprFn::Cos;
    if (name == "tan") return ExprFn::Tan;
    if (name == "exp") return ExprFn::Exp;
    if (name == "log") return ExprFn::Log;
    if (name == "sqrt") return ExprFn::Sqrt;
    if (name == "abs") return ExprFn::Abs;
    return std::nullopt;
  }
};

}  // namespace

ParseScope ParseScope::cartesian(int dim) {
  ParseScope s;
  for (int i = 0; i < dim; ++i) s.coordinates["x" + std::to_string(i)] = i;
  return s;
}

ParseScope ParseScope::with_names(const std::vector<std::string>& names) {
  ParseScope s;
  for (std::size_t i = 0; i < names.size(); ++i) s.coordinates[names[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string alias = "x" + std::to_string(i);
    if (!s.coordinates.count(alias)) s.coordinates[alias] = static_cast<int>(i);
  }
  return s;
}

Expr parse(std::span<const Token> tokens, const ParseScope& scope) {
  return Parser(tokens, scope).run();
}

Expr parse(std::string_view source, const ParseScope& scope) {
  auto tokens = tokenize(source);
  return parse(std::span<const Token>(tokens), scope);
}

// ---------------------------------------------------------------------------
// CompiledField
// ---------------------------------------------------------------------------

CompiledField::CompiledField(Expr e, int dim) : expr_(std::move(e)), dim_(dim) {
  if (expr_.max_coordinate() >= dim)
    throw DimensionError("expression references coordinates beyond field dimension");
}

const std::vector<Expr>& CompiledField::gradient() const {
  std::call_once(grad_once_, [this] {
    grad_.reserve(dim_);
    for (int i = 0; i < dim_; ++i) grad_.push_back(expr_.differentiate(i).simplified());
  });
  return grad_;
}

const std::vector<Expr>& CompiledField::hessian() const {
  std::call_once(hess_once_, [this] {
    const auto& g = gradient();
    hess_.reserve(dim_ * dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) hess_.push_back(g[i].differentiate(j).simplified());
  });
  return hess_;
}

std::vector<double> CompiledField::gradient_at(std::span<const double> p) const {
  const auto& g = gradient();
  std::vector<double> out(dim_);
  for (int i = 0; i < dim_; ++i) out[i] = g[i].evaluate(p);
  return out;
}

std::vector<double> CompiledField::hessian_at(std::span<const double> p) const {
  const auto& h = hessian();
  std::vector<double> out(dim_ * dim_);
  for (int i = 0; i < dim_ * dim_; ++i) out[i] = h[i].evaluate(p);
  return out;
}

}  // namespace framelift
