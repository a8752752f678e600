#include "gnewton/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace gnewton {

Expr constant(double v) { return std::make_shared<const Node>(Node{NodeKind::Constant, v, 0, {}, {}}); }

Expr variable(std::size_t index) {
  return std::make_shared<const Node>(Node{NodeKind::Variable, 0.0, index, {}, {}});
}

Expr make_unary(NodeKind kind, Expr arg) {
  return std::make_shared<const Node>(Node{kind, 0.0, 0, std::move(arg), {}});
}

Expr make_binary(NodeKind kind, Expr lhs, Expr rhs) {
  return std::make_shared<const Node>(Node{kind, 0.0, 0, std::move(lhs), std::move(rhs)});
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, int line, int column_offset)
      : text_(text), n_(n), line_(line), offset_(column_offset) {}

  Expr parse() {
    Expr e = parse_sum();
    skip_space();
    if (pos_ < text_.size()) fail(ErrorKind::ParseError, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    throw ParseError(kind, msg, line_, offset_ + static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_sum() {
    Expr e = parse_product();
    for (;;) {
      if (accept('+')) e = make_binary(NodeKind::Add, e, parse_product());
      else if (accept('-')) e = make_binary(NodeKind::Sub, e, parse_product());
      else return e;
    }
  }

  Expr parse_product() {
    Expr e = parse_unary();
    for (;;) {
      if (accept('*')) e = make_binary(NodeKind::Mul, e, parse_unary());
      else if (accept('/')) e = make_binary(NodeKind::Div, e, parse_unary());
      else return e;
    }
  }

  // Unary minus binds looser than ^, so -x^2 is -(x^2).
  Expr parse_unary() {
    if (accept('-')) {
      Expr operand = parse_unary();
      // fold so that x^-2 keeps the integer-power path
      if (operand->kind == NodeKind::Constant) return constant(-operand->value);
      return make_unary(NodeKind::Neg, std::move(operand));
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (accept('^')) return make_binary(NodeKind::Pow, base, parse_unary());
    return base;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail(ErrorKind::ParseError, "unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      if (!accept(')')) fail(ErrorKind::ParseError, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(ErrorKind::ParseError, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    // strtod rather than from_chars: libstdc++ 11 lacks the double overload on some targets.
    const std::string token(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      pos_ = start;
      fail(ErrorKind::ParseError, "malformed number '" + token + "'");
    }
    return constant(v);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name.size() > 1 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
      std::size_t idx = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (idx < 1 || idx > n_) {
        pos_ = start;
        fail(ErrorKind::UnknownIdentifier, "variable '" + std::string(name) + "' outside x1..x" + std::to_string(n_));
      }
      return variable(idx - 1);
    }
    NodeKind kind;
    if (name == "exp") kind = NodeKind::Exp;
    else if (name == "sinh") kind = NodeKind::Sinh;
    else if (name == "cosh") kind = NodeKind::Cosh;
    else if (name == "tan") kind = NodeKind::Tan;
    else if (name == "ln") kind = NodeKind::Ln;
    else {
      pos_ = start;
      fail(ErrorKind::UnknownIdentifier, "unknown identifier '" + std::string(name) + "'");
    }
    if (!accept('(')) fail(ErrorKind::ParseError, "expected '(' after " + std::string(name));
    Expr arg = parse_sum();
    if (accept(',')) fail(ErrorKind::ArityError, std::string(name) + " takes one argument");
    if (!accept(')')) fail(ErrorKind::ParseError, "expected ')'");
    return make_unary(kind, std::move(arg));
  }

  std::string_view text_;
  std::size_t n_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
};

bool is_const(const Expr& e, double v) { return e->kind == NodeKind::Constant && e->value == v; }

Expr add(Expr a, Expr b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return make_binary(NodeKind::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return make_unary(NodeKind::Neg, std::move(b));
  return make_binary(NodeKind::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (is_const(a, 0) || is_const(b, 0)) return constant(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (a->kind == NodeKind::Constant && b->kind == NodeKind::Constant) return constant(a->value * b->value);
  return make_binary(NodeKind::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  if (is_const(a, 0)) return constant(0);
  if (is_const(b, 1)) return a;
  return make_binary(NodeKind::Div, std::move(a), std::move(b));
}

Expr neg(Expr a) {
  if (a->kind == NodeKind::Constant) return constant(-a->value);
  return make_unary(NodeKind::Neg, std::move(a));
}

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Expr parse_expression(std::string_view text, std::size_t n, int line, int column_offset) {
  return Parser(text, n, line, column_offset).parse();
}

Expr differentiate(const Expr& e, std::size_t index) {
  switch (e->kind) {
    case NodeKind::Constant: return constant(0);
    case NodeKind::Variable: return constant(e->index == index ? 1 : 0);
    case NodeKind::Neg: return neg(differentiate(e->lhs, index));
    case NodeKind::Add: return add(differentiate(e->lhs, index), differentiate(e->rhs, index));
    case NodeKind::Sub: return sub(differentiate(e->lhs, index), differentiate(e->rhs, index));
    case NodeKind::Mul:
      return add(mul(differentiate(e->lhs, index), e->rhs), mul(e->lhs, differentiate(e->rhs, index)));
    case NodeKind::Div: {
      Expr num = sub(mul(differentiate(e->lhs, index), e->rhs), mul(e->lhs, differentiate(e->rhs, index)));
      return div(num, make_binary(NodeKind::Pow, e->rhs, constant(2)));
    }
    case NodeKind::Pow: {
      const Expr& u = e->lhs;
      const Expr& v = e->rhs;
      Expr du = differentiate(u, index);
      if (v->kind == NodeKind::Constant) {
        if (v->value == 0) return constant(0);
        Expr lowered = v->value == 1 ? constant(1) : make_binary(NodeKind::Pow, u, constant(v->value - 1));
        return mul(mul(constant(v->value), lowered), du);
      }
      // u^v · (v'·ln u + v·u'/u)
      Expr dv = differentiate(v, index);
      Expr inner = add(mul(dv, make_unary(NodeKind::Ln, u)), div(mul(v, du), u));
      return mul(e, inner);
    }
    case NodeKind::Exp: return mul(e, differentiate(e->lhs, index));
    case NodeKind::Sinh: return mul(make_unary(NodeKind::Cosh, e->lhs), differentiate(e->lhs, index));
    case NodeKind::Cosh: return mul(make_unary(NodeKind::Sinh, e->lhs), differentiate(e->lhs, index));
    case NodeKind::Tan: {
      // sec² = 1 + tan²
      Expr sec2 = add(constant(1), make_binary(NodeKind::Pow, e, constant(2)));
      return mul(sec2, differentiate(e->lhs, index));
    }
    case NodeKind::Ln: return div(differentiate(e->lhs, index), e->lhs);
  }
  return constant(0);
}

std::string to_string(const Expr& e) {
  auto wrap = [](const Expr& child, bool need) {
    const std::string s = to_string(child);
    return need ? "(" + s + ")" : s;
  };
  const int p = precedence(e->kind);
  switch (e->kind) {
    case NodeKind::Constant: {
      const std::string s = format_number(e->value);
      return e->value < 0 ? "(" + s + ")" : s;
    }
    case NodeKind::Variable: return "x" + std::to_string(e->index + 1);
    case NodeKind::Neg: return "-" + wrap(e->lhs, precedence(e->lhs->kind) < 4);
    case NodeKind::Add:
    case NodeKind::Mul:
      return wrap(e->lhs, precedence(e->lhs->kind) < p) + (e->kind == NodeKind::Add ? " + " : " * ") +
             wrap(e->rhs, precedence(e->rhs->kind) <= p);
    case NodeKind::Sub:
    case NodeKind::Div:
      return wrap(e->lhs, precedence(e->lhs->kind) < p) + (e->kind == NodeKind::Sub ? " - " : " / ") +
             wrap(e->rhs, precedence(e->rhs->kind) <= p);
    case NodeKind::Pow: return wrap(e->lhs, precedence(e->lhs->kind) <= p) + "^" + wrap(e->rhs, precedence(e->rhs->kind) < p);
    case NodeKind::Exp: return "exp(" + to_string(e->lhs) + ")";
    case NodeKind::Sinh: return "sinh(" + to_string(e->lhs) + ")";
    case NodeKind::Cosh: return "cosh(" + to_string(e->lhs) + ")";
    case NodeKind::Tan: return "tan(" + to_string(e->lhs) + ")";
    case NodeKind::Ln: return "ln(" + to_string(e->lhs) + ")";
  }
  return {};
}

}  // namespace gnewton
