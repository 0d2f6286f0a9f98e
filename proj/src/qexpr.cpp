#include "qlv/qexpr.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "qlv/qseries.hpp"

namespace qlv::qexpr {

ExprPtr make_atom(Kind kind, std::int64_t mult) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->mult = mult;
  return n;
}

ExprPtr make_const(const Rational& value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::RationalConst;
  n->value = value;
  return n;
}

ExprPtr make_pow(ExprPtr base, std::int64_t exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->a = std::move(base);
  return n;
}

ExprPtr make_neg(ExprPtr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Neg;
  n->a = std::move(operand);
  return n;
}

ExprPtr make_binary(Kind kind, ExprPtr lhs, ExprPtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return n;
}

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

namespace {

struct Token {
  enum Type { Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::size_t pos;
  std::string text;     // Ident
  std::int64_t value;   // Int
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.pos = pos_;
    if (pos_ >= text_.size()) {
      tok_.type = Token::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        int d = text_[pos_] - '0';
        if (v > (INT64_MAX - d) / 10) throw ParseError("integer literal too large", start);
        v = v * 10 + d;
        ++pos_;
      }
      tok_.type = Token::Int;
      tok_.value = v;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      tok_.type = Token::Ident;
      tok_.text.assign(text_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    switch (c) {
      case '+': tok_.type = Token::Plus; return;
      case '-': tok_.type = Token::Minus; return;
      case '*': tok_.type = Token::Star; return;
      case '/': tok_.type = Token::Slash; return;
      case '^': tok_.type = Token::Caret; return;
      case '(': tok_.type = Token::LParen; return;
      case ')': tok_.type = Token::RParen; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tok_.pos);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token tok_;
};

struct Factor {
  ExprPtr node;
  bool int_literal = false;  // bare (possibly negated) integer constant, no '^'
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    if (lex_.peek().type != Token::End)
      throw ParseError("unexpected trailing input", lex_.peek().pos);
    return e;
  }

 private:
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (lex_.peek().type == Token::Plus || lex_.peek().type == Token::Minus) {
      Token op = lex_.take();
      ExprPtr rhs = parse_term();
      lhs = make_binary(op.type == Token::Plus ? Kind::Add : Kind::Sub, lhs, rhs);
    }
    return lhs;
  }

  ExprPtr parse_term() {
    Factor lhs = parse_factor();
    while (lex_.peek().type == Token::Star || lex_.peek().type == Token::Slash) {
      Token op = lex_.take();
      Factor rhs = parse_factor();
      if (op.type == Token::Slash && lhs.int_literal && rhs.int_literal &&
          denominator(lhs.node->value) == 1 && rhs.node->value > 0) {
        // INT '/' INT is a single rational literal
        lhs = {make_const(lhs.node->value / rhs.node->value), false};
        continue;
      }
      lhs = {make_binary(op.type == Token::Star ? Kind::Mul : Kind::Div, lhs.node, rhs.node),
             false};
    }
    return lhs.node;
  }

  Factor parse_factor() {
    if (lex_.peek().type == Token::Minus) {
      lex_.take();
      Factor f = parse_factor();
      if (f.int_literal)  // fold sign into the literal
        return {make_const(-f.node->value), true};
      return {make_neg(f.node), false};
    }
    Factor atom = parse_atom();
    if (lex_.peek().type == Token::Caret) {
      lex_.take();
      bool neg = false;
      if (lex_.peek().type == Token::Minus) {
        lex_.take();
        neg = true;
      }
      if (lex_.peek().type != Token::Int)
        throw ParseError("expected integer exponent after '^'", lex_.peek().pos);
      Token e = lex_.take();
      return {make_pow(atom.node, neg ? -e.value : e.value), false};
    }
    return atom;
  }

  Factor parse_atom() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case Token::Int: {
        Token v = lex_.take();
        return {make_const(Rational(v.value)), true};
      }
      case Token::LParen: {
        lex_.take();
        ExprPtr e = parse_expr();
        expect(Token::RParen, "expected ')'");
        return {e, false};
      }
      case Token::Ident: {
        Token id = lex_.take();
        Kind kind;
        if (id.text == "eta") kind = Kind::Eta;
        else if (id.text == "theta2") kind = Kind::Theta2;
        else if (id.text == "theta3") kind = Kind::Theta3;
        else if (id.text == "theta4") kind = Kind::Theta4;
        else if (id.text == "L") kind = Kind::EisensteinL;
        else throw ParseError("unknown function '" + id.text + "'", id.pos);
        expect(Token::LParen, "expected '(' after function name");
        Token q = lex_.peek();
        if (q.type != Token::Ident || q.text != "q")
          throw ParseError("expected 'q' as function argument", q.pos);
        lex_.take();
        std::int64_t mult = 1;
        if (lex_.peek().type == Token::Caret) {
          lex_.take();
          if (lex_.peek().type != Token::Int)
            throw ParseError("expected integer multiplier after 'q^'", lex_.peek().pos);
          Token m = lex_.take();
          if (m.value < 1) throw ParseError("multiplier must be >= 1", m.pos);
          mult = m.value;
        }
        expect(Token::RParen, "expected ')'");
        return {make_atom(kind, mult), false};
      }
      default:
        throw ParseError("expected expression", t.pos);
    }
  }

  void expect(Token::Type type, const char* message) {
    if (lex_.peek().type != type) throw ParseError(message, lex_.peek().pos);
    lex_.take();
  }

  Lexer lex_;
};

int precedence(Kind k) {
  switch (k) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    default: return 5;
  }
}

// A printed rational literal is only re-fused by the parser when its '/' is
// seen before any other factor, and a leading '-' folds like unary minus; so
// "p/q" renders with Div precedence and negative integers with Neg precedence.
int const_precedence(const Rational& v) {
  if (denominator(v) != 1) return 2;
  if (v < 0) return 3;
  return 5;
}

std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

void print_node(const ExprPtr& e, int min_prec, std::string& out) {
  const int prec = (e->kind == Kind::RationalConst) ? const_precedence(e->value)
                                                    : precedence(e->kind);
  const bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (e->kind) {
    case Kind::Eta:
    case Kind::Theta2:
    case Kind::Theta3:
    case Kind::Theta4:
    case Kind::EisensteinL: {
      const char* name = e->kind == Kind::Eta      ? "eta"
                         : e->kind == Kind::Theta2 ? "theta2"
                         : e->kind == Kind::Theta3 ? "theta3"
                         : e->kind == Kind::Theta4 ? "theta4"
                                                   : "L";
      out += name;
      out += "(q";
      if (e->mult != 1) out += "^" + std::to_string(e->mult);
      out += ")";
      break;
    }
    case Kind::RationalConst:
      out += rational_str(e->value);
      break;
    case Kind::Neg:
      out += "-";
      print_node(e->a, precedence(Kind::Neg), out);
      break;
    case Kind::Pow:
      print_node(e->a, 5, out);
      out += "^" + std::to_string(e->exponent);
      break;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      const char* op = e->kind == Kind::Add   ? " + "
                       : e->kind == Kind::Sub ? " - "
                       : e->kind == Kind::Mul ? " * "
                                              : " / ";
      print_node(e->a, prec, out);
      out += op;
      print_node(e->b, prec + 1, out);  // left associative
      break;
    }
  }
  if (parens) out += ")";
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const ExprPtr& e) {
  std::string out;
  print_node(e, 0, out);
  return out;
}

bool equal(const ExprPtr& x, const ExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Eta:
    case Kind::Theta2:
    case Kind::Theta3:
    case Kind::Theta4:
    case Kind::EisensteinL:
      return x->mult == y->mult;
    case Kind::RationalConst:
      return x->value == y->value;
    case Kind::Pow:
      return x->exponent == y->exponent && equal(x->a, y->a);
    case Kind::Neg:
      return equal(x->a, y->a);
    default:
      return equal(x->a, y->a) && equal(x->b, y->b);
  }
}

namespace {

// Laurent view: value = q^{shift/24} * body, body.low24() == 0 when nonzero.
struct Laurent {
  FormalSeries body;
  std::int64_t shift = 0;
};

Laurent normalized(FormalSeries s, std::int64_t shift) {
  if (!s.is_zero() && s.low24() > 0) {
    std::int64_t l = s.low24();
    s = series_shift(s, -l);
    shift += l;
  }
  return {std::move(s), shift};
}

Laurent eval_node(const ExprPtr& e, std::int64_t leaf_order) {
  switch (e->kind) {
    case Kind::Eta:
      return normalized(eta(e->mult, leaf_order), 0);
    case Kind::Theta2:
      return normalized(theta(2, e->mult, leaf_order), 0);
    case Kind::Theta3:
      return normalized(theta(3, e->mult, leaf_order), 0);
    case Kind::Theta4:
      return normalized(theta(4, e->mult, leaf_order), 0);
    case Kind::EisensteinL:
      return normalized(eisenstein_l(e->mult, leaf_order), 0);
    case Kind::RationalConst:
      return {FormalSeries::constant(e->value, leaf_order), 0};
    case Kind::Neg: {
      Laurent v = eval_node(e->a, leaf_order);
      return {series_scale(-1, v.body), v.shift};
    }
    case Kind::Pow: {
      Laurent v = eval_node(e->a, leaf_order);
      std::int64_t n = e->exponent;
      if (n == 0) return {FormalSeries::constant(1, v.body.order24()), 0};
      if (v.body.is_zero() && n < 0)
        throw std::domain_error("negative power of a zero series");
      FormalSeries b =
          (n > 0) ? series_pow(v.body, n) : series_pow(series_reciprocal(v.body), -n);
      return normalized(std::move(b), v.shift * n);
    }
    case Kind::Add:
    case Kind::Sub: {
      Laurent x = eval_node(e->a, leaf_order);
      Laurent y = eval_node(e->b, leaf_order);
      std::int64_t sh = std::min(x.shift, y.shift);
      FormalSeries xa = series_shift(x.body, x.shift - sh);
      FormalSeries yb = series_shift(y.body, y.shift - sh);
      FormalSeries r = (e->kind == Kind::Add) ? series_add(xa, yb) : series_sub(xa, yb);
      return normalized(std::move(r), sh);
    }
    case Kind::Mul: {
      Laurent x = eval_node(e->a, leaf_order);
      Laurent y = eval_node(e->b, leaf_order);
      return normalized(series_mul(x.body, y.body), x.shift + y.shift);
    }
    case Kind::Div: {
      Laurent x = eval_node(e->a, leaf_order);
      Laurent y = eval_node(e->b, leaf_order);
      if (y.body.is_zero())
        throw std::domain_error("division by a series with no nonzero coefficient");
      FormalSeries r = series_mul(x.body, series_reciprocal(y.body));
      return normalized(std::move(r), x.shift - y.shift);
    }
  }
  throw std::logic_error("eval_expr: unhandled node kind");
}

FormalSeries materialize(const Laurent& v) {
  if (!v.body.is_zero() && v.body.low24() + v.shift < 0)
    throw std::domain_error("expression expands to negative powers of q");
  return series_shift(v.body, v.shift);
}

}  // namespace

FormalSeries eval_expr(const ExprPtr& e, std::int64_t order24) {
  if (!e) throw std::invalid_argument("eval_expr: null expression");
  if (order24 < 1) throw std::invalid_argument("eval_expr: order must be >= 1");
  if (order24 > 200'000'000) throw std::overflow_error("eval_expr: order overflow");

  // Division and negative powers can lose truncation order; the loss is
  // structural, so one re-evaluation with padded leaves restores it exactly.
  std::int64_t leaf_order = order24;
  for (int pass = 0; pass < 3; ++pass) {
    FormalSeries r = materialize(eval_node(e, leaf_order));
    if (r.order24() >= order24) return r.truncated(order24);
    leaf_order += order24 - r.order24();
  }
  throw std::logic_error("eval_expr: failed to reach requested order");
}

}  // namespace qlv::qexpr
