#pragma once

// Lexer and recursive-descent parsers for groups, class expressions and power series.

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chernbord/chern.hpp"
#include "chernbord/expr.hpp"
#include "chernbord/rewrite.hpp"

namespace chernbord {

struct ParseOptions {
  std::size_t coeff_gens = kDefaultCoeffGenerators;
};

namespace parse_detail {

enum class Tok { Int, Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t s = 0; s < n; ++s, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char ch = static_cast<unsigned char>(src[i]);
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    Token t;
    t.span = {line, col};
    std::size_t j = i;
    if (std::isdigit(ch)) {
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
    } else if (std::isalpha(ch) || ch == '_') {
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::string_view("()[],+-*^@=").find(static_cast<char>(ch)) != std::string_view::npos) {
      j = i + 1;
      t.kind = Tok::Punct;
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + src[i] + "'");
    }
    t.text = std::string(src.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  Token end;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

inline std::optional<std::size_t> digits_after(const std::string& s, std::size_t from) {
  if (from >= s.size()) return std::nullopt;
  for (std::size_t i = from; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  if (s.size() - from > 6) return std::nullopt;
  return std::stoul(s.substr(from));
}

// Index of `a3` / `a_3`.
inline std::optional<std::size_t> generator_index(const std::string& s) {
  if (s.size() < 2 || s[0] != 'a') return std::nullopt;
  return digits_after(s, s[1] == '_' ? 2 : 1);
}

class Cursor {
 public:
  explicit Cursor(std::string_view src) : toks_(lex(src)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_.at(std::min(pos_ + ahead, toks_.size() - 1)); }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(std::string_view punct_or_ident) const {
    return peek().kind != Tok::End && peek().kind != Tok::Int && peek().text == punct_or_ident;
  }
  Token take() { return toks_.at(pos_ < toks_.size() - 1 ? pos_++ : pos_); }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    throw ParseError(peek().span.line, peek().span.column, message, std::move(expected));
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    fail(at_end() ? "unexpected end of input" : "unexpected '" + peek().text + "'", std::move(expected));
  }

  Token expect(std::string_view text) {
    if (!is(text)) unexpected({"'" + std::string(text) + "'"});
    return take();
  }
  long expect_int(long min_value = 0) {
    if (peek().kind != Tok::Int) unexpected({"integer"});
    const Token t = take();
    if (t.text.size() > 6) throw RangeError(detail::at(t.span) + "integer " + t.text + " is too large here");
    const long v = std::stol(t.text);
    if (v < min_value)
      throw RangeError(detail::at(t.span) + "expected an integer >= " + std::to_string(min_value));
    return v;
  }
  void expect_end() {
    if (!at_end()) unexpected({"end of input"});
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline GroupDescriptor parse_group(Cursor& c) {
  if (c.peek().kind == Tok::Int && c.peek().text == "1") {
    c.take();
    return GroupDescriptor::trivial();
  }
  if (c.is("T")) {
    c.take();
    c.expect("(");
    const long m = c.expect_int(0);
    c.expect(")");
    return GroupDescriptor::torus(static_cast<int>(m));
  }
  if (c.is("U")) {
    c.take();
    c.expect("(");
    std::vector<int> blocks{static_cast<int>(c.expect_int(0))};
    while (c.is(",")) {
      c.take();
      blocks.push_back(static_cast<int>(c.expect_int(0)));
    }
    c.expect(")");
    return canonical_block(blocks).group;
  }
  c.unexpected({"'U'", "'T'", "'1'"});
}

class ExprParser {
 public:
  ExprParser(std::string_view src, ParseOptions options) : c_(src), options_(options) {}

  Expr parse_all() {
    Expr e = sum();
    c_.expect_end();
    return e;
  }

 private:
  Expr sum() {
    const SourceSpan start = c_.peek().span;
    std::vector<Expr> terms;
    if (c_.is("-")) {
      const SourceSpan s = c_.take().span;
      terms.push_back(ast::neg(product(), s));
    } else {
      terms.push_back(product());
    }
    while (c_.is("+") || c_.is("-")) {
      const Token op = c_.take();
      Expr t = product();
      terms.push_back(op.text == "-" ? ast::neg(std::move(t), op.span) : std::move(t));
    }
    if (terms.size() == 1) return terms.front();
    return ast::sum(std::move(terms), start);
  }

  Expr product() {
    Expr left = power();
    std::optional<std::string> op;
    while (c_.is("*") || c_.is("x")) {
      const Token t = c_.take();
      if (op && *op != t.text)
        throw ParseError(t.span.line, t.span.column, "'*' and 'x' cannot be mixed without parentheses");
      op = t.text;
      Expr right = power();
      left = t.text == "*" ? ast::mul(std::move(left), std::move(right), t.span)
                           : ast::ext(std::move(left), std::move(right), t.span);
    }
    return left;
  }

  Expr power() {
    Expr base = primary();
    if (c_.is("^")) {
      const SourceSpan s = c_.take().span;
      const long e = c_.expect_int(0);
      return ast::power(std::move(base), static_cast<unsigned>(e), s);
    }
    return base;
  }

  Expr primary() {
    const Token& t = c_.peek();
    const SourceSpan s = t.span;
    if (t.kind == Tok::Int) {
      const Token lit = c_.take();
      if (c_.is("(")) {
        if (lit.text != "1")
          throw ParseError(s.line, s.column, "only 1(m) denotes a unit class", {"'*'", "'+'"});
        c_.take();
        const long m = c_.expect_int(1);
        c_.expect(")");
        return ast::unit(static_cast<int>(m), s);
      }
      return ast::integer(Integer(lit.text), s);
    }
    if (c_.is("(")) {
      c_.take();
      Expr inner = sum();
      c_.expect(")");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      const std::string name = t.text;
      if (name == "e" || name == "t") {
        c_.take();
        c_.expect("(");
        const long v = c_.expect_int(1);
        c_.expect(")");
        return name == "e" ? ast::euler(static_cast<int>(v), s) : ast::opaque(static_cast<int>(v), s);
      }
      if (name == "c") {
        c_.take();
        c_.expect("(");
        const long k = c_.expect_int(0);
        c_.expect(",");
        if (c_.is("rep")) {
          const RepDescriptor rep = representation();
          c_.expect(")");
          return ast::from_class(chern_of_rep(rep, static_cast<int>(k)));
        }
        const long m = c_.expect_int(1);
        c_.expect(")");
        return ast::chern(static_cast<int>(k), static_cast<int>(m), s);
      }
      if (name == "tr") {
        c_.take();
        c_.expect("[");
        GroupDescriptor h = parse_group(c_);
        c_.expect(",");
        GroupDescriptor g = parse_group(c_);
        c_.expect("]");
        c_.expect("(");
        Expr inner = sum();
        c_.expect(")");
        return ast::tr(std::move(h), std::move(g), std::move(inner), s);
      }
      if (name == "res") return restriction(s);
      if (auto index = generator_index(name)) {
        c_.take();
        if (*index < 1 || *index > options_.coeff_gens)
          throw UnknownSymbol(detail::at(s) + "unknown symbol '" + name + "': declared generators are a1..a" +
                              std::to_string(options_.coeff_gens));
        return ast::generator(*index, s);
      }
      if (name.size() > 1 && name[0] == 'x' && digits_after(name, 1))
        throw UnknownSymbol(detail::at(s) + "unknown symbol '" + name +
                            "' (series variables are not classes; write ' x ' with spaces for the external product)");
      throw UnknownSymbol(detail::at(s) + "unknown symbol '" + name + "'");
    }
    c_.unexpected({"integer", "'('", "'e'", "'t'", "'c'", "'tr'", "'res'", "generator"});
  }

  // rep[G](V(1) + chi(0,1) + 2): tautological factors, characters and trivial summands.
  RepDescriptor representation() {
    const SourceSpan s = c_.take().span;
    c_.expect("[");
    RepDescriptor rep(parse_group(c_));
    c_.expect("]");
    c_.expect("(");
    try {
      for (;;) {
        if (c_.peek().kind == Tok::Int) {
          rep.add_trivial(static_cast<int>(c_.expect_int(0)));
        } else if (c_.is("V")) {
          c_.take();
          c_.expect("(");
          const SourceSpan fs = c_.peek().span;
          const long i = c_.expect_int(1);
          if (static_cast<std::size_t>(i) > rep.group().size())
            throw DimensionError(detail::at(fs) + "dimension mismatch: " + rep.group().to_string() + " has no factor " +
                                 std::to_string(i));
          c_.expect(")");
          rep.tautological(static_cast<std::size_t>(i - 1));
        } else if (c_.is("chi")) {
          c_.take();
          c_.expect("(");
          const SourceSpan cs = c_.peek().span;
          std::vector<int> exps{signed_int()};
          while (c_.is(",")) {
            c_.take();
            exps.push_back(signed_int());
          }
          c_.expect(")");
          if (exps.size() != rep.group().size())
            throw DimensionError(detail::at(cs) + "dimension mismatch: a character of " + rep.group().to_string() +
                                 " needs " + std::to_string(rep.group().size()) + " exponents");
          rep.character(std::move(exps));
        } else {
          c_.unexpected({"integer", "'V'", "'chi'"});
        }
        if (!c_.is("+")) break;
        c_.take();
      }
      chern_of_rep(rep, 1);
    } catch (const UnsupportedRepresentation& e) {
      throw UnsupportedRepresentation(detail::at(s) + e.what());
    }
    c_.expect(")");
    return rep;
  }

  int signed_int() {
    const bool negative = c_.is("-");
    if (negative) c_.take();
    const long v = c_.expect_int(0);
    return static_cast<int>(negative ? -v : v);
  }

  Expr restriction(SourceSpan s) {
    c_.take();
    c_.expect("[");
    GroupDescriptor g = parse_group(c_);
    c_.expect(",");
    const SourceSpan ks = c_.peek().span;
    GroupDescriptor k = parse_group(c_);
    std::optional<std::vector<std::size_t>> projection;
    if (c_.is("@")) {
      c_.take();
      projection.emplace();
      projection->push_back(static_cast<std::size_t>(c_.expect_int(1) - 1));
      while (c_.is(",")) {
        c_.take();
        projection->push_back(static_cast<std::size_t>(c_.expect_int(1) - 1));
      }
    }
    c_.expect("]");
    c_.expect("(");
    Expr inner = sum();
    c_.expect(")");
    std::optional<SubgroupArrow> arrow;
    try {
      if (projection) {
        arrow = SubgroupArrow::projection(k, *projection);
        if (!(arrow->target() == g))
          throw DimensionError("the selected factors of " + k.to_string() + " form " + arrow->target().to_string() +
                               ", not " + g.to_string());
      } else {
        arrow = infer_arrow(g, k);
      }
    } catch (const UnsupportedArrow& e) {
      throw DimensionError(detail::at(ks) + "dimension mismatch: " + e.what());
    } catch (const DimensionError& e) {
      throw DimensionError(detail::at(ks) + "dimension mismatch: " + e.what());
    }
    return ast::res(std::move(*arrow), std::move(inner), std::move(projection), s);
  }

  Cursor c_;
  ParseOptions options_;
};

class SeriesParser {
 public:
  SeriesParser(std::string_view src, AlgebraPtr alg, ParseOptions options)
      : c_(src), alg_(std::move(alg)), options_(options) {}

  PowerSeries parse_all() {
    PowerSeries f = sum();
    c_.expect_end();
    return f;
  }

 private:
  PowerSeries sum() {
    PowerSeries acc(alg_);
    bool negate = false;
    if (c_.is("-")) {
      c_.take();
      negate = true;
    }
    for (;;) {
      PowerSeries t = product();
      acc = negate ? acc - t : acc + t;
      if (!(c_.is("+") || c_.is("-"))) break;
      negate = c_.take().text == "-";
    }
    return acc;
  }

  PowerSeries product() {
    PowerSeries acc = power();
    while (c_.is("*")) {
      c_.take();
      acc = acc * power();
    }
    return acc;
  }

  PowerSeries power() {
    PowerSeries base = primary();
    if (c_.is("^")) {
      c_.take();
      return base.pow(static_cast<unsigned>(c_.expect_int(0)));
    }
    return base;
  }

  PowerSeries primary() {
    const Token& t = c_.peek();
    const SourceSpan s = t.span;
    if (t.kind == Tok::Int) return PowerSeries::constant(alg_, GradedCoefficient(Integer(c_.take().text)));
    if (c_.is("(")) {
      c_.take();
      PowerSeries inner = sum();
      c_.expect(")");
      return inner;
    }
    if (t.kind != Tok::Ident) c_.unexpected({"integer", "'('", "variable", "generator", "'cf'"});
    std::string name = c_.take().text;
    if (name == "cf") return conner_floyd(s);
    if (auto index = generator_index(name)) {
      if (*index < 1 || *index > options_.coeff_gens)
        throw UnknownSymbol(detail::at(s) + "unknown symbol '" + name + "': declared generators are a1..a" +
                            std::to_string(options_.coeff_gens));
      return PowerSeries::constant(alg_, GradedCoefficient::generator(*index));
    }
    if (name.size() > 2 && name[1] == '_') name.erase(1, 1);
    if (c_.is("[")) {
      c_.take();
      name += "[" + std::to_string(c_.expect_int(1)) + "]";
      c_.expect("]");
    }
    auto index = alg_->find(name);
    if (!index) throw UnknownSymbol(detail::at(s) + "unknown symbol '" + name + "' in " + alg_->describe());
    return PowerSeries::variable(alg_, *index);
  }

  // cf(k,m): the Conner-Floyd class c_k of a single-block Chern algebra of rank m.
  PowerSeries conner_floyd(SourceSpan s) {
    c_.expect("(");
    const long k = c_.expect_int(0);
    c_.expect(",");
    const long m = c_.expect_int(1);
    c_.expect(")");
    if (alg_->kind() != SeriesKind::Chern || alg_->blocks().size() != 1 || alg_->blocks()[0] != m)
      throw DimensionError(detail::at(s) + "dimension mismatch: cf(" + std::to_string(k) + "," + std::to_string(m) +
                           ") does not live in " + alg_->describe());
    if (k == 0) return PowerSeries::constant(alg_, 1);
    if (k > m) return PowerSeries(alg_);
    return PowerSeries::variable(alg_, *alg_->chern_variable(0, static_cast<int>(k)));
  }

  Cursor c_;
  AlgebraPtr alg_;
  ParseOptions options_;
};

}  // namespace parse_detail

/// Parses `U(2,1)`, `T(3)` or `1`.
inline GroupDescriptor parse_group(std::string_view text) {
  parse_detail::Cursor c(text);
  GroupDescriptor g = parse_detail::parse_group(c);
  c.expect_end();
  return g;
}

/// Parses a class expression into its (unelaborated) syntax tree.
inline Expr parse_expression(std::string_view text, const ParseOptions& options = {}) {
  return parse_detail::ExprParser(text, options).parse_all();
}

/// Parses and type-checks a class expression.
inline Expr parse_typed(std::string_view text, const ParseOptions& options = {},
                        const std::optional<GroupDescriptor>& expected = std::nullopt) {
  return elaborate(parse_expression(text, options), expected);
}

/// Parses and normalizes a class expression.
inline ClassExpression parse_class(std::string_view text, const ParseOptions& options = {},
                                   const NormalizeOptions& normalize_options = {}) {
  return normalize(parse_typed(text, options), normalize_options);
}

/// Parses a power series over the given algebra.
inline PowerSeries parse_series(std::string_view text, const AlgebraPtr& alg, const ParseOptions& options = {}) {
  return parse_detail::SeriesParser(text, alg, options).parse_all();
}

/// True when the text looks like a series (uses x-variables, c-variables or cf).
inline bool looks_like_series(std::string_view text) {
  for (const auto& t : parse_detail::lex(text)) {
    if (t.kind != parse_detail::Tok::Ident) continue;
    if (t.text == "cf") return true;
    if (t.text.size() > 1 && (t.text[0] == 'x' || t.text[0] == 'c') &&
        (std::isdigit(static_cast<unsigned char>(t.text[1])) || t.text[1] == '_'))
      return true;
  }
  return false;
}

/// Splits `A = B` at its single top-level `=`.
inline std::pair<std::string, std::string> split_equation(std::string_view text) {
  std::size_t depth = 0, line = 1, col = 1;
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < text.size(); ++i, ++col) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 0;
    } else if (ch == '(' || ch == '[') {
      ++depth;
    } else if ((ch == ')' || ch == ']') && depth > 0) {
      --depth;
    } else if (ch == '=' && depth == 0) {
      if (at) throw ParseError(line, col, "more than one '=' in an equation");
      at = i;
    }
  }
  if (!at) throw ParseError(line, col, "expected an equation", {"'='"});
  return {std::string(text.substr(0, *at)), std::string(text.substr(*at + 1))};
}

}  // namespace chernbord
