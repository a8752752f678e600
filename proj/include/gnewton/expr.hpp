#pragma once

// Arithmetic expressions over x1..xn: parse, evaluate (real or complex),
// differentiate symbolically, print.

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "gnewton/error.hpp"

namespace gnewton {

enum class NodeKind { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Exp, Sinh, Cosh, Tan, Ln };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double value = 0.0;     // Constant
  std::size_t index = 0;  // Variable, 0-based
  Expr lhs;               // unary operand / left child
  Expr rhs;               // right child
};

Expr constant(double v);
Expr variable(std::size_t index);
Expr make_unary(NodeKind kind, Expr arg);
Expr make_binary(NodeKind kind, Expr lhs, Expr rhs);

/// Parses one right-hand side. `line` and `column_offset` only shift error positions.
Expr parse_expression(std::string_view text, std::size_t n, int line = 1, int column_offset = 0);

/// d(e)/d(x_{index+1}), with constant folding of 0 and 1 factors.
Expr differentiate(const Expr& e, std::size_t index);

/// Fully parenthesised where precedence needs it; reparses to an equivalent tree.
std::string to_string(const Expr& e);

namespace detail {

template <class T>
T ipow(T base, long long k) {
  if (k < 0) return T{1} / ipow(base, -k);
  T result{1};
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

inline bool is_small_integer(double v) {
  return std::floor(v) == v && std::abs(v) <= 64.0;
}

}  // namespace detail

/// Evaluates with x[i] bound to x_{i+1}. T is double or std::complex<double>.
template <class T, class Vec>
T evaluate(const Node& e, const Vec& x) {
  switch (e.kind) {
    case NodeKind::Constant: return T{e.value};
    case NodeKind::Variable: return x[e.index];
    case NodeKind::Neg: return -evaluate<T>(*e.lhs, x);
    case NodeKind::Add: return evaluate<T>(*e.lhs, x) + evaluate<T>(*e.rhs, x);
    case NodeKind::Sub: return evaluate<T>(*e.lhs, x) - evaluate<T>(*e.rhs, x);
    case NodeKind::Mul: return evaluate<T>(*e.lhs, x) * evaluate<T>(*e.rhs, x);
    case NodeKind::Div: return evaluate<T>(*e.lhs, x) / evaluate<T>(*e.rhs, x);
    case NodeKind::Pow: {
      const T base = evaluate<T>(*e.lhs, x);
      if (e.rhs->kind == NodeKind::Constant && detail::is_small_integer(e.rhs->value)) {
        return detail::ipow(base, static_cast<long long>(e.rhs->value));
      }
      return std::pow(base, evaluate<T>(*e.rhs, x));
    }
    case NodeKind::Exp: return std::exp(evaluate<T>(*e.lhs, x));
    case NodeKind::Sinh: return std::sinh(evaluate<T>(*e.lhs, x));
    case NodeKind::Cosh: return std::cosh(evaluate<T>(*e.lhs, x));
    case NodeKind::Tan: return std::tan(evaluate<T>(*e.lhs, x));
    case NodeKind::Ln: return std::log(evaluate<T>(*e.lhs, x));
  }
  return T{};
}

}  // namespace gnewton
