#pragma once

#include "isodirac/numerics.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace isodirac::expr {

// Grammar (whitespace insignificant):
//
//   sum     ::= product { ("+" | "-") product }
//   product ::= unary { ("*" | "/") unary }
//   unary   ::= "-" unary | power
//   power   ::= primary [ "^" unary ]          (right associative)
//   primary ::= number | "x" | func "(" sum ")" | "(" sum ")"
//   func    ::= tanh | cosh | sinh | sech | exp | sqrt | abs
//
// Unary minus binds looser than "^", so -x^2 == -(x^2) and 2^-1 == 0.5.

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Func { tanh, cosh, sinh, sech, exp, sqrt, abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
    double value;
};
struct Variable {};
struct Negate {
    NodePtr operand;
};
struct Binary {
    char op;  // one of + - * / ^
    NodePtr lhs;
    NodePtr rhs;
};
struct Call {
    Func func;
    NodePtr arg;
};

struct Node {
    std::variant<Number, Variable, Negate, Binary, Call> data;
};

/// Immutable parsed expression in the single variable x.
class Expr {
public:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    const Node& root() const { return *root_; }

private:
    NodePtr root_;
};

Expr parse(std::string_view source);

/// Throws EvalError naming the offending subexpression on a non-finite result.
double eval(const Expr& expr, double x);

/// Canonical fully parenthesized form; parse(to_string(e)) == e.
std::string to_string(const Expr& expr);

bool operator==(const Expr& a, const Expr& b);

/// Pointwise evaluation over the grid; EvalError messages carry the grid index.
SampledFunction sample(const Expr& expr, const Grid& grid);

}  // namespace isodirac::expr
