#include "hasse/parse.hpp"

#include <cctype>
#include <charconv>

namespace hasse {

namespace {

struct Token {
  enum class Kind { Number, Ident, Op, End };
  Kind kind;
  std::string text;
  std::int64_t value = 0;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Token t{Token::Kind::Number, std::string(s.substr(i, j - i)), 0, i};
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, t.value);
      if (ec != std::errc()) throw MathError(ErrorKind::ParseError, "integer literal out of range at " + std::to_string(i));
      out.push_back(std::move(t));
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, std::string(s.substr(i, j - i)), 0, i});
      i = j;
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Op, std::string(1, c), 0, i});
      ++i;
    } else {
      throw MathError(ErrorKind::ParseError, std::string("unexpected character '") + c + "' at " + std::to_string(i));
    }
  }
  out.push_back({Token::Kind::End, "", 0, s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::unique_ptr<Expr> parse() {
    auto e = expr();
    if (peek().kind != Token::Kind::End) fail("trailing input");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* op) const { return peek().kind == Token::Kind::Op && peek().text == op; }
  bool accept(const char* op) {
    if (!is_op(op)) return false;
    ++pos_;
    return true;
  }
  void expect(const char* op) {
    if (!accept(op)) fail(std::string("expected '") + op + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw MathError(ErrorKind::ParseError, msg + " at position " + std::to_string(peek().pos));
  }

  static std::unique_ptr<Expr> node(Expr::Kind k, std::unique_ptr<Expr> a, std::unique_ptr<Expr> b = nullptr) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->args.push_back(std::move(a));
    if (b) e->args.push_back(std::move(b));
    return e;
  }

  std::unique_ptr<Expr> expr() {
    std::unique_ptr<Expr> lhs;
    if (accept("-")) {
      lhs = node(Expr::Kind::Neg, term());
    } else {
      accept("+");
      lhs = term();
    }
    while (true) {
      if (accept("+")) {
        lhs = node(Expr::Kind::Add, std::move(lhs), term());
      } else if (accept("-")) {
        lhs = node(Expr::Kind::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Expr> term() {
    auto lhs = factor();
    while (true) {
      if (accept("*")) {
        lhs = node(Expr::Kind::Mul, std::move(lhs), factor());
      } else if (accept("/")) {
        lhs = node(Expr::Kind::Div, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Expr> factor() {
    if (accept("-")) return node(Expr::Kind::Neg, factor());
    auto base = primary();
    while (accept("^")) base = exponent(std::move(base));
    return base;
  }

  std::int64_t integer() {
    if (peek().kind != Token::Kind::Number) fail("expected integer");
    return toks_[pos_++].value;
  }

  std::unique_ptr<Expr> pow_node(std::unique_ptr<Expr> base, std::int64_t e) {
    auto n = node(Expr::Kind::Pow, std::move(base));
    n->number = e;
    return n;
  }

  std::unique_ptr<Expr> exponent(std::unique_ptr<Expr> base) {
    if (accept("-")) return pow_node(std::move(base), -integer());
    if (!accept("(")) return pow_node(std::move(base), integer());
    if (accept("-")) {
      auto e = -integer();
      expect(")");
      return pow_node(std::move(base), e);
    }
    const auto first = integer();
    if (!accept("/")) {
      expect(")");
      return pow_node(std::move(base), first);
    }
    if (first != 1) fail("fractional exponents must be 1/p^m");
    if (base->kind != Expr::Kind::Var) fail("fractional exponent on a non-variable");
    auto root = std::make_unique<Expr>();
    root->kind = Expr::Kind::Root;
    root->name = base->name;
    if (peek().kind == Token::Kind::Ident && peek().text == "p") {
      ++pos_;
      root->root_base = 0;
      root->root_exp = 1;
      if (accept("^")) root->root_exp = static_cast<std::uint64_t>(integer());
    } else {
      root->root_base = static_cast<std::uint64_t>(integer());
      root->root_exp = 1;
      if (accept("^")) root->root_exp = static_cast<std::uint64_t>(integer());
    }
    expect(")");
    return root;
  }

  std::unique_ptr<Expr> primary() {
    const auto& t = peek();
    if (t.kind == Token::Kind::Number) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = t.value;
      ++pos_;
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::Var;
      e->name = t.text;
      ++pos_;
      return e;
    }
    if (accept("(")) {
      auto e = expr();
      expect(")");
      return e;
    }
    fail("unexpected token '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::size_t variable_index(const std::string& name, std::size_t nvars) {
  if (name == "X") return 0;
  if (name.size() >= 2 && name[0] == 'X') {
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
    if (ec == std::errc() && ptr == name.data() + name.size() && k >= 1 && k <= nvars) return k - 1;
  }
  throw MathError(ErrorKind::ParseError, "unknown variable '" + name + "'");
}

class SeriesAlgebra {
 public:
  using Value = TruncSeries<PrimeField>;
  SeriesAlgebra(const PrimeField& f, std::size_t n, std::uint32_t prec) : f_(f), n_(n), prec_(prec) {}

  std::uint32_t characteristic() const { return f_.characteristic(); }
  Value number(std::int64_t v) const { return Value::constant(f_, n_, prec_, f_.from_int(v)); }
  Value var(const std::string& name) const { return Value::variable(f_, n_, prec_, variable_index(name, n_)); }
  Value root(const std::string& name, std::uint32_t) const {
    throw MathError(ErrorKind::ParseError, "tower root of '" + name + "' in a series literal");
  }
  Value add(const Value& a, const Value& b) const { return hasse::add(a, b); }
  Value sub(const Value& a, const Value& b) const { return hasse::sub(a, b); }
  Value mul(const Value& a, const Value& b) const { return hasse::mul(a, b); }
  Value neg(const Value& a) const { return hasse::neg(a); }
  Value div(const Value& a, const Value& b) const {
    if (b.size() > 1 || (b.size() == 1 && b.terms().front().deg != 0)) {
      throw MathError(ErrorKind::ParseError, "series literals may only divide by constants");
    }
    return scale(a, f_.inv(b.constant_term()));
  }
  Value pow(const Value& a, std::int64_t e) const {
    if (e < 0) throw MathError(ErrorKind::ParseError, "negative exponent in a series literal");
    return hasse::pow(a, static_cast<std::uint64_t>(e));
  }

 private:
  PrimeField f_;
  std::size_t n_;
  std::uint32_t prec_;
};

class PerfAlgebra {
 public:
  using Value = PerfClosureElem;
  explicit PerfAlgebra(const PerfectClosure& k) : k_(k) {}

  std::uint32_t characteristic() const { return k_.characteristic(); }
  Value number(std::int64_t v) const { return k_.from_int(v); }
  Value var(const std::string& name) const {
    if (name != "t") throw MathError(ErrorKind::ParseError, "unknown symbol '" + name + "' in a tower element");
    return k_.t(0);
  }
  Value root(const std::string& name, std::uint32_t m) const {
    if (name != "t") throw MathError(ErrorKind::ParseError, "unknown symbol '" + name + "' in a tower element");
    return k_.t(m);
  }
  Value add(const Value& a, const Value& b) const { return k_.add(a, b); }
  Value sub(const Value& a, const Value& b) const { return k_.sub(a, b); }
  Value mul(const Value& a, const Value& b) const { return k_.mul(a, b); }
  Value div(const Value& a, const Value& b) const { return k_.div(a, b); }
  Value neg(const Value& a) const { return k_.neg(a); }
  Value pow(const Value& a, std::int64_t e) const { return k_.pow(a, e); }

 private:
  PerfectClosure k_;
};

}  // namespace

std::unique_ptr<Expr> parse_expr(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::uint32_t resolve_root_level(const Expr& root, std::uint32_t p) {
  if (root.root_base == 0) return static_cast<std::uint32_t>(root.root_exp);
  // Denominator given numerically: base^exp must be a power of p.
  std::uint64_t d = 1;
  for (std::uint64_t i = 0; i < root.root_exp; ++i) {
    if (d > (std::uint64_t{1} << 40)) throw MathError(ErrorKind::ParseError, "tower denominator too large");
    d *= root.root_base;
  }
  std::uint32_t m = 0;
  while (d % p == 0) {
    d /= p;
    ++m;
  }
  if (d != 1) throw MathError(ErrorKind::ParseError, "root denominator is not a power of p = " + std::to_string(p));
  return m;
}

TruncSeries<PrimeField> parse_series(std::string_view text, const PrimeField& field, std::size_t nvars,
                                     std::uint32_t prec) {
  auto e = parse_expr(text);
  return evaluate(*e, SeriesAlgebra(field, nvars, prec));
}

PerfClosureElem parse_perf_closure(std::string_view text, const PerfectClosure& field) {
  auto e = parse_expr(text);
  return evaluate(*e, PerfAlgebra(field));
}

std::size_t max_variable_index(std::string_view text) {
  std::size_t best = 0;
  for (const auto& t : tokenize(text)) {
    if (t.kind != Token::Kind::Ident || t.text.empty() || t.text[0] != 'X') continue;
    if (t.text == "X") {
      best = std::max<std::size_t>(best, 1);
      continue;
    }
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), k);
    if (ec == std::errc() && ptr == t.text.data() + t.text.size()) best = std::max(best, k);
  }
  return best;
}

}  // namespace hasse
