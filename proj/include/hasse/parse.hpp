#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hasse/error.hpp"
#include "hasse/perfect_closure.hpp"
#include "hasse/prime_field.hpp"
#include "hasse/trunc_series.hpp"

namespace hasse {

// Syntax tree for the literal grammar shared by series, Laurent series,
// tower elements and polynomials in t:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | primary ('^' exponent)*
//   exponent:= ['-'] int | '(' ['-'] int ')' | '(' '1' '/' root ')'
//   root    := 'p' '^' int | int '^' int | int
//   primary := int | ident | '(' expr ')'
//
// `t^(1/p^m)` is the tower generator t_m; the denominator is resolved
// against the characteristic when the tree is evaluated.
struct Expr {
  enum class Kind { Number, Var, Root, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Number;
  std::int64_t number = 0;        // Number; Pow exponent
  std::string name;               // Var, Root
  std::uint64_t root_base = 0;    // Root: 0 means the literal "p"
  std::uint64_t root_exp = 1;     // Root: denominator root_base^root_exp
  std::vector<std::unique_ptr<Expr>> args;
};

std::unique_ptr<Expr> parse_expr(std::string_view text);

// Tower level m with p^m equal to the parsed denominator.
std::uint32_t resolve_root_level(const Expr& root, std::uint32_t p);

// Evaluates a tree through an algebra supplying:
//   number(int64), var(name), root(name, level), add, sub, mul, div, neg,
//   pow(value, int64)
template <class Alg>
typename Alg::Value evaluate(const Expr& e, const Alg& alg) {
  switch (e.kind) {
    case Expr::Kind::Number: return alg.number(e.number);
    case Expr::Kind::Var: return alg.var(e.name);
    case Expr::Kind::Root: return alg.root(e.name, resolve_root_level(e, alg.characteristic()));
    case Expr::Kind::Add: return alg.add(evaluate(*e.args[0], alg), evaluate(*e.args[1], alg));
    case Expr::Kind::Sub: return alg.sub(evaluate(*e.args[0], alg), evaluate(*e.args[1], alg));
    case Expr::Kind::Mul: return alg.mul(evaluate(*e.args[0], alg), evaluate(*e.args[1], alg));
    case Expr::Kind::Div: return alg.div(evaluate(*e.args[0], alg), evaluate(*e.args[1], alg));
    case Expr::Kind::Neg: return alg.neg(evaluate(*e.args[0], alg));
    case Expr::Kind::Pow: return alg.pow(evaluate(*e.args[0], alg), e.number);
  }
  throw MathError(ErrorKind::ParseError, "malformed expression");
}

// Integer-coefficient polynomial in X1..Xn (or X when n = 1), reduced mod p.
TruncSeries<PrimeField> parse_series(std::string_view text, const PrimeField& field, std::size_t nvars,
                                     std::uint32_t prec);

// Rational function in t and t^(1/p^m) over F_p.
PerfClosureElem parse_perf_closure(std::string_view text, const PerfectClosure& field);

// Highest variable index k such that Xk occurs (1 for a bare X; 0 if none).
std::size_t max_variable_index(std::string_view text);

}  // namespace hasse
