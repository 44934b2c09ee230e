#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace poincare::expr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised when evaluation leaves the real domain (log of a nonpositive
/// number, division by zero, ...) or overflows.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Exp, Log, Sin, Cos, Sqrt, Abs, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Literal {
  double value;
};
struct Variable {};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  std::vector<NodePtr> args;
};

struct Node {
  std::variant<Literal, Variable, Negate, Binary, Call> form;
};

/// Immutable expression in the single variable `t`.
///
/// Grammar, loosest to tightest: `+ -` (left), `* /` (left), unary `-`,
/// `^` (right; its exponent may carry a unary sign), then literals, `t`,
/// calls and parentheses. Functions: exp log sin cos sqrt abs (one argument)
/// and pow (two arguments). Copies share the tree.
class Expression {
 public:
  Expression();  // the literal 0
  explicit Expression(NodePtr root);

  double evaluate(double t) const;
  /// Canonical text; parsing it back yields a structurally equal tree.
  std::string to_string() const;
  const Node& root() const { return *root_; }
  /// True when the tree is a single literal zero.
  bool is_zero_literal() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  NodePtr root_;
};

Expression parse_expression(std::string_view source);
double evaluate_expression(const Expression& e, double t);

std::string_view function_name(Function fn);

}  // namespace poincare::expr
