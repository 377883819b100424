#include "ultracl/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ultracl {

namespace {

const std::set<std::string, std::less<>> kReserved = {"abs", "V", "and", "or", "not", "diff",
                                                      "universe", "empty"};

enum class Tok { End, Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Lt, Le, Gt, Ge };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '<':
      case '>':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back({c == '<' ? Tok::Le : Tok::Ge, std::string(s.substr(i, 2)), start});
          i += 2;
          continue;
        }
        k = c == '<' ? Tok::Lt : Tok::Gt;
        break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : toks_(tokenize(text)), vars_(vars) {}

  Poly poly_only() {
    Poly p = poly();
    expect_end();
    return p;
  }

  SetExpr set_only() {
    SetExpr e = set();
    expect_end();
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.kind == Tok::End ? " (end of input)" : ", found '" + t.text + "'"), t.pos);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++i_;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected trailing input");
  }

  std::size_t n() const { return vars_.size(); }

  // ------------------------------------------------------------- polynomials
  Poly poly() {
    Poly acc(n());
    bool negative = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) negative = next().kind == Tok::Minus;
    Poly t = term();
    acc += negative ? -t : t;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      Poly u = term();
      acc += minus ? -u : u;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = next();
      const std::size_t at = peek().pos;
      Poly rhs = factor();
      if (op.kind == Tok::Star) {
        acc = acc * rhs;
      } else {
        if (!rhs.is_constant() || rhs.is_zero()) {
          throw ParseError("division only by a nonzero constant", at);
        }
        acc *= Rational(1 / rhs.constant_term());
      }
    }
    return acc;
  }

  Poly factor() {
    if (peek().kind == Tok::Minus) {
      next();
      return -factor();
    }
    Poly b = base();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Number) fail("expected integer exponent");
      const Token& e = next();
      if (e.text.size() > 6) throw ParseError("exponent too large", e.pos);
      b = b.pow(static_cast<std::uint32_t>(std::stoul(e.text)));
    }
    return b;
  }

  Poly base() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        return Poly::constant(n(), Rational(Integer(t.text)));
      }
      case Tok::Ident: {
        auto it = std::find(vars_.begin(), vars_.end(), t.text);
        if (it == vars_.end()) throw ParseError("undeclared variable '" + t.text + "'", t.pos);
        next();
        return Poly::variable(n(), static_cast<std::size_t>(it - vars_.begin()));
      }
      case Tok::LParen: {
        next();
        Poly p = poly();
        expect(Tok::RParen, "')'");
        return p;
      }
      default: fail("expected number, variable or '('");
    }
  }

  // -------------------------------------------------------------------- sets
  SetExpr set() {
    SetExpr acc = diff_level();
    while (at_keyword("or")) {
      next();
      acc = SetExpr::make_union(acc, diff_level());
    }
    return acc;
  }

  SetExpr diff_level() {
    SetExpr acc = and_level();
    while (at_keyword("diff")) {
      next();
      acc = SetExpr::make_difference(acc, and_level());
    }
    return acc;
  }

  SetExpr and_level() {
    SetExpr acc = unary();
    while (at_keyword("and")) {
      next();
      acc = SetExpr::make_intersection(acc, unary());
    }
    return acc;
  }

  SetExpr unary() {
    if (at_keyword("not")) {
      next();
      return SetExpr::make_complement(unary());
    }
    return primary();
  }

  Poly abs_arg() {
    if (!at_keyword("abs")) fail("expected 'abs('");
    next();
    expect(Tok::LParen, "'('");
    Poly p = poly();
    expect(Tok::RParen, "')'");
    return p;
  }

  SetExpr primary() {
    if (at_keyword("universe")) {
      next();
      return SetExpr::universe(n());
    }
    if (at_keyword("empty")) {
      next();
      return SetExpr::empty(n());
    }
    if (at_keyword("V")) {
      next();
      expect(Tok::LParen, "'('");
      std::vector<Poly> gens{poly()};
      while (peek().kind == Tok::Comma) {
        next();
        gens.push_back(poly());
      }
      expect(Tok::RParen, "')'");
      return SetExpr::analytic(std::move(gens));
    }
    if (at_keyword("abs")) {
      Poly f = abs_arg();
      Comparison cmp;
      switch (peek().kind) {
        case Tok::Lt: cmp = Comparison::Lt; break;
        case Tok::Le: cmp = Comparison::Le; break;
        case Tok::Gt: cmp = Comparison::Gt; break;
        case Tok::Ge: cmp = Comparison::Ge; break;
        default: fail("expected comparison operator");
      }
      next();
      Poly g = abs_arg();
      return SetExpr::atom(std::move(f), cmp, std::move(g));
    }
    if (peek().kind == Tok::LParen) {
      next();
      SetExpr e = set();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("expected set expression");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const std::vector<std::string>& vars_;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).poly_only();
}

SetExpr parse_set(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text, vars).set_only();
}

std::vector<std::string> parse_var_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view raw = text.substr(start, comma - start);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
    while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
    const bool ok = !raw.empty() &&
                    (std::isalpha(static_cast<unsigned char>(raw.front())) || raw.front() == '_') &&
                    std::all_of(raw.begin(), raw.end(), [](char c) {
                      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                    });
    if (!ok) throw ParseError("invalid variable name '" + std::string(raw) + "'", start);
    if (kReserved.contains(raw)) throw ParseError("reserved word used as variable '" + std::string(raw) + "'", start);
    if (std::find(out.begin(), out.end(), raw) != out.end()) {
      throw ParseError("duplicate variable '" + std::string(raw) + "'", start);
    }
    out.emplace_back(raw);
    start = comma + 1;
  }
  return out;
}

}  // namespace ultracl
