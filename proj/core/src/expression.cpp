#include "poincare/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "poincare/number_format.hpp"

namespace poincare::expr {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

struct FunctionInfo {
  std::string_view name;
  Function fn;
  std::size_t arity;
};

constexpr std::array<FunctionInfo, 7> kFunctions{{
    {"exp", Function::Exp, 1},
    {"log", Function::Log, 1},
    {"sin", Function::Sin, 1},
    {"cos", Function::Cos, 1},
    {"sqrt", Function::Sqrt, 1},
    {"abs", Function::Abs, 1},
    {"pow", Function::Pow, 2},
}};

NodePtr make(auto form) { return std::make_shared<const Node>(Node{std::move(form)}); }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = parse_sum();
    skip_space();
    if (pos_ != src_.size()) {
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) {
        throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make(Binary{BinaryOp::Add, lhs, parse_product()});
      } else if (accept('-')) {
        lhs = make(Binary{BinaryOp::Sub, lhs, parse_product()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Binary{BinaryOp::Mul, lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make(Binary{BinaryOp::Div, lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Negate{parse_unary()});
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Binary{BinaryOp::Pow, base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        // not an exponent after all; leave "e" for the identifier check
        pos_ = save;
      }
    }
    double value = 0.0;
    const auto text = src_.substr(start, pos_ - start);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw ParseError("malformed number '" + std::string(text) + "'", start);
    }
    return make(Literal{value});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const auto name = src_.substr(start, pos_ - start);
    if (name == "t") return make(Variable{});
    for (const auto& info : kFunctions) {
      if (info.name != name) continue;
      expect('(');
      std::vector<NodePtr> args;
      args.push_back(parse_sum());
      while (accept(',')) args.push_back(parse_sum());
      expect(')');
      if (args.size() != info.arity) {
        throw ParseError(std::string(name) + " takes " + std::to_string(info.arity) +
                             " argument(s), got " + std::to_string(args.size()),
                         start);
      }
      return make(Call{info.fn, std::move(args)});
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double checked(double value, const char* what) {
  if (std::isnan(value)) throw EvalError(std::string("domain error in ") + what);
  if (std::isinf(value)) throw EvalError(std::string("overflow in ") + what);
  return value;
}

double power(double base, double exponent) {
  if (base == 0.0 && exponent == 0.0) return 1.0;
  if (base == 0.0 && exponent < 0.0) throw EvalError("domain error in ^: zero to a negative power");
  if (base < 0.0 && std::trunc(exponent) != exponent) {
    throw EvalError("domain error in ^: negative base with non-integer exponent");
  }
  return checked(std::pow(base, exponent), "^");
}

double eval(const Node& node, double t) {
  return std::visit(
      [t](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return t;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval(*n.operand, t);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval(*n.lhs, t);
          const double b = eval(*n.rhs, t);
          switch (n.op) {
            case BinaryOp::Add: return checked(a + b, "+");
            case BinaryOp::Sub: return checked(a - b, "-");
            case BinaryOp::Mul: return checked(a * b, "*");
            case BinaryOp::Div:
              if (b == 0.0) throw EvalError("domain error in /: division by zero");
              return checked(a / b, "/");
            case BinaryOp::Pow: return power(a, b);
          }
          return 0.0;
        } else {
          const double x = eval(*n.args[0], t);
          switch (n.fn) {
            case Function::Exp: return checked(std::exp(x), "exp");
            case Function::Log:
              if (x <= 0.0) throw EvalError("domain error in log: nonpositive argument");
              return std::log(x);
            case Function::Sin: return std::sin(x);
            case Function::Cos: return std::cos(x);
            case Function::Sqrt:
              if (x < 0.0) throw EvalError("domain error in sqrt: negative argument");
              return std::sqrt(x);
            case Function::Abs: return std::abs(x);
            case Function::Pow: return power(x, eval(*n.args[1], t));
          }
          return 0.0;
        }
      },
      node.form);
}

// Binding strength used by the printer: sum 1, product 2, negation 3,
// power 4, atoms 5.
int strength(const Node& node) {
  if (const auto* b = std::get_if<Binary>(&node.form)) {
    switch (b->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return 1;
      case BinaryOp::Mul:
      case BinaryOp::Div: return 2;
      case BinaryOp::Pow: return 4;
    }
  }
  if (std::holds_alternative<Negate>(node.form)) return 3;
  return 5;
}

void print(const Node& node, int min_strength, std::string& out);

void print_child(const Node& node, int min_strength, std::string& out) {
  if (strength(node) < min_strength) {
    out += '(';
    print(node, 0, out);
    out += ')';
  } else {
    print(node, min_strength, out);
  }
}

void print(const Node& node, int, std::string& out) {
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          out += format_double(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += 't';
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += '-';
          print_child(*n.operand, 3, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          switch (n.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
              print_child(*n.lhs, 1, out);
              out += n.op == BinaryOp::Add ? " + " : " - ";
              print_child(*n.rhs, 2, out);
              break;
            case BinaryOp::Mul:
            case BinaryOp::Div:
              print_child(*n.lhs, 2, out);
              out += n.op == BinaryOp::Mul ? "*" : "/";
              print_child(*n.rhs, 3, out);
              break;
            case BinaryOp::Pow:
              print_child(*n.lhs, 5, out);
              out += '^';
              print_child(*n.rhs, 3, out);
              break;
          }
        } else {
          out += function_name(n.fn);
          out += '(';
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) out += ", ";
            print(*n.args[i], 0, out);
          }
          out += ')';
        }
      },
      node.form);
}

bool same(const Node& a, const Node& b) {
  if (a.form.index() != b.form.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.form);
        if constexpr (std::is_same_v<T, Literal>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return same(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && same(*x.lhs, *y.lhs) && same(*x.rhs, *y.rhs);
        } else {
          if (x.fn != y.fn || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (!same(*x.args[i], *y.args[i])) return false;
          }
          return true;
        }
      },
      a.form);
}

}  // namespace

std::string_view function_name(Function fn) {
  for (const auto& info : kFunctions) {
    if (info.fn == fn) return info.name;
  }
  return "?";
}

Expression::Expression() : root_(make(Literal{0.0})) {}

Expression::Expression(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("Expression: null root");
}

double Expression::evaluate(double t) const {
  if (!std::isfinite(t)) throw EvalError("evaluation point is not finite");
  return eval(*root_, t);
}

std::string Expression::to_string() const {
  std::string out;
  print(*root_, 0, out);
  return out;
}

bool Expression::is_zero_literal() const {
  const auto* lit = std::get_if<Literal>(&root_->form);
  return lit != nullptr && lit->value == 0.0;
}

bool operator==(const Expression& a, const Expression& b) { return same(*a.root_, *b.root_); }

Expression parse_expression(std::string_view source) { return Expression(Parser(source).parse()); }

double evaluate_expression(const Expression& e, double t) { return e.evaluate(t); }

}  // namespace poincare::expr
