#ifndef FRAMELIFT_EXPR_HPP
#define FRAMELIFT_EXPR_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framelift/errors.hpp"
#include "framelift/jet.hpp"

namespace framelift {

// ---------------------------------------------------------------------------
// Immutable expression trees over named chart coordinates. These carry every
// closed-form field in the library (frames, vector fields, potentials) and
// support exact symbolic differentiation.
// ---------------------------------------------------------------------------

enum class ExprKind { Constant, Coordinate, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class ExprFn { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

const char* expr_fn_name(ExprFn fn);

class Expr {
 public:
  struct Node;  // implementation detail, defined in expr.cpp

  Expr();  // constant 0

  static Expr constant(double v);
  static Expr coordinate(int index);
  static Expr call(ExprFn fn, Expr arg);

  ExprKind kind() const;
  double constant_value() const;  // Constant nodes only
  int coordinate_index() const;   // Coordinate nodes only
  ExprFn fn() const;              // Call nodes only
  Expr child(int i) const;
  int child_count() const;

  bool is_constant(double v) const;

  // Highest coordinate index appearing in the tree, or -1 for closed terms.
  int max_coordinate() const;

  double evaluate(std::span<const double> point) const;
  Jet evaluate(std::span<const Jet> point) const;

  Expr differentiate(int coordinate) const;
  Expr simplified() const;

  // Fully parenthesized infix form; coordinates print as x0, x1, ...
  std::string str() const;

  friend Expr operator-(Expr a);
  friend Expr operator+(Expr a, Expr b);
  friend Expr operator-(Expr a, Expr b);
  friend Expr operator*(Expr a, Expr b);
  friend Expr operator/(Expr a, Expr b);
  friend Expr pow(Expr base, Expr exponent);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline Expr operator+(Expr a, double b) { return std::move(a) + Expr::constant(b); }
inline Expr operator*(double a, Expr b) { return Expr::constant(a) * std::move(b); }

// ---------------------------------------------------------------------------
// Tokenizer / parser
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { Number, Identifier, Operator, Paren, Comma };
  Kind kind;
  std::string lexeme;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view source);

// Binds identifiers while parsing. Coordinates map names to indices; constants
// are substituted as literals at parse time.
struct ParseScope {
  std::map<std::string, int, std::less<>> coordinates;
  std::map<std::string, double, std::less<>> constants;

  // Scope for x0..x{m-1} only.
  static ParseScope cartesian(int dim);
  // Adds x0..x{m-1} aliases on top of the named coordinates.
  static ParseScope with_names(const std::vector<std::string>& names);
};

Expr parse(std::span<const Token> tokens, const ParseScope& scope);
Expr parse(std::string_view source, const ParseScope& scope);

// ---------------------------------------------------------------------------
// A field with lazily materialized exact gradient and Hessian expressions.
// ---------------------------------------------------------------------------

class CompiledField {
 public:
  CompiledField(Expr e, int dim);

  const Expr& expr() const { return expr_; }
  int dim() const { return dim_; }

  const std::vector<Expr>& gradient() const;
  const std::vector<Expr>& hessian() const;  // row-major dim x dim

  double value(std::span<const double> p) const { return expr_.evaluate(p); }
  std::vector<double> gradient_at(std::span<const double> p) const;
  std::vector<double> hessian_at(std::span<const double> p) const;

 private:
  Expr expr_;
  int dim_;
  mutable std::once_flag grad_once_, hess_once_;
  mutable std::vector<Expr> grad_, hess_;
};

}  // namespace framelift

#endif
