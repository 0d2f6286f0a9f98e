#ifndef QLV_QEXPR_HPP
#define QLV_QEXPR_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qlv/formal_series.hpp"

namespace qlv::qexpr {

// Textual DSL for eta/theta/Eisenstein product expressions:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | atom ['^' ['-'] INT]
//   atom   := ident '(' 'q' ['^' INT] ')' | INT ['/' INT] | '(' expr ')'
//   ident  := 'eta' | 'theta2' | 'theta3' | 'theta4' | 'L'
//
// Whitespace is insignificant; multiplication is always explicit.  An INT
// followed by '/' and a bare INT forms a single rational literal (so "1/4"
// is one constant, while "1/4^2" divides by 4^2).  Precedence is
// ^  >  unary -  >  * /  >  + -, binary operators associate left.
enum class Kind {
  Eta,
  Theta2,
  Theta3,
  Theta4,
  EisensteinL,
  RationalConst,
  Mul,
  Div,
  Pow,
  Add,
  Sub,
  Neg,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Kind kind;
  std::int64_t mult = 0;      // Eta / Theta* / EisensteinL: argument is q^mult
  Rational value;             // RationalConst
  std::int64_t exponent = 0;  // Pow
  ExprPtr a, b;               // operands; Pow and Neg use a only
};

ExprPtr make_atom(Kind kind, std::int64_t mult);
ExprPtr make_const(const Rational& value);
ExprPtr make_pow(ExprPtr base, std::int64_t exponent);
ExprPtr make_neg(ExprPtr operand);
ExprPtr make_binary(Kind kind, ExprPtr lhs, ExprPtr rhs);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses DSL text; throws ParseError with the byte offset on bad input.
ExprPtr parse(std::string_view text);

/// Canonical rendering; print(parse(t)) reparses to an identical tree.
std::string print(const ExprPtr& e);

bool equal(const ExprPtr& x, const ExprPtr& y);

/// Evaluates to a series truncated at exactly order24.  Throws
/// std::domain_error for division by a zero series or when the expression
/// expands to negative powers of q.
FormalSeries eval_expr(const ExprPtr& e, std::int64_t order24);

}  // namespace qlv::qexpr

#endif
