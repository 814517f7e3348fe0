#pragma once

// Graded coefficient ring: integer polynomials in formal generators a_1, a_2, ...
// with deg a_i = -2i (cohomological grading). No relations are imposed.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "chernbord/error.hpp"

namespace chernbord {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Number of coefficient generators declared when nothing else is configured.
inline constexpr std::size_t kDefaultCoeffGenerators = 4;

/// Cohomological degree of the generator a_index (1-based).
constexpr int generator_degree(std::size_t index) { return -2 * static_cast<int>(index); }

/// Monomial a_1^{e_1} a_2^{e_2} ... with trailing zero exponents trimmed.
class CoeffMonomial {
 public:
  CoeffMonomial() = default;
  explicit CoeffMonomial(std::vector<unsigned> exponents) : exps_(std::move(exponents)) { trim(); }

  static CoeffMonomial generator(std::size_t index, unsigned power = 1) {
    if (index == 0) throw RangeError("coefficient generators are indexed from 1");
    std::vector<unsigned> e(index, 0);
    e[index - 1] = power;
    return CoeffMonomial(std::move(e));
  }

  const std::vector<unsigned>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  unsigned exponent(std::size_t index) const {
    return index >= 1 && index <= exps_.size() ? exps_[index - 1] : 0;
  }

  /// Sum of i * e_i; the degree is -2 times this.
  long weight() const {
    long w = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) w += static_cast<long>(i + 1) * exps_[i];
    return w;
  }
  int degree() const { return static_cast<int>(-2 * weight()); }

  CoeffMonomial operator*(const CoeffMonomial& other) const {
    std::vector<unsigned> e(std::max(exps_.size(), other.exps_.size()), 0);
    for (std::size_t i = 0; i < exps_.size(); ++i) e[i] += exps_[i];
    for (std::size_t i = 0; i < other.exps_.size(); ++i) e[i] += other.exps_[i];
    return CoeffMonomial(std::move(e));
  }

  bool operator==(const CoeffMonomial&) const = default;

  // Lower weight first; within a weight, lexicographically larger exponents first.
  std::strong_ordering operator<=>(const CoeffMonomial& other) const {
    if (auto c = weight() <=> other.weight(); c != 0) return c;
    return other.exps_ <=> exps_;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "a" + std::to_string(i + 1);
      if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
    }
    return out;
  }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }

  std::vector<unsigned> exps_;
};

/// Result of asking for the degree of a coefficient.
struct CoeffDegree {
  enum class Kind { Homogeneous, Zero, Inhomogeneous };
  Kind kind = Kind::Zero;
  int value = 0;

  bool homogeneous() const { return kind == Kind::Homogeneous; }
  bool operator==(const CoeffDegree&) const = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::Zero:
        return "zero";
      case Kind::Inhomogeneous:
        return "inhomogeneous";
      default:
        return std::to_string(value);
    }
  }
};

/// Element of the coefficient ring. Canonical: sorted monomials, no zero coefficients.
class GradedCoefficient {
 public:
  using TermMap = std::map<CoeffMonomial, Integer>;

  GradedCoefficient() = default;
  GradedCoefficient(const Integer& n) {  // NOLINT(google-explicit-constructor)
    if (n != 0) terms_.emplace(CoeffMonomial{}, n);
  }
  GradedCoefficient(long n) : GradedCoefficient(Integer(n)) {}  // NOLINT
  GradedCoefficient(int n) : GradedCoefficient(Integer(n)) {}   // NOLINT

  static GradedCoefficient zero() { return {}; }
  static GradedCoefficient one() { return GradedCoefficient(1); }
  static GradedCoefficient generator(std::size_t index, unsigned power = 1) {
    return monomial(CoeffMonomial::generator(index, power), 1);
  }
  static GradedCoefficient monomial(const CoeffMonomial& m, const Integer& c) {
    GradedCoefficient g;
    if (c != 0) g.terms_.emplace(m, c);
    return g;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
  }
  /// True when this is an integer (possibly zero).
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  Integer constant_term() const {
    auto it = terms_.find(CoeffMonomial{});
    return it == terms_.end() ? Integer(0) : it->second;
  }
  /// Highest generator index that occurs, 0 if none.
  std::size_t max_generator() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.exponents().size());
    return n;
  }

  CoeffDegree degree() const {
    if (terms_.empty()) return {};
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return {CoeffDegree::Kind::Inhomogeneous, 0};
    return {CoeffDegree::Kind::Homogeneous, d};
  }

  GradedCoefficient& operator+=(const GradedCoefficient& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  GradedCoefficient& operator-=(const GradedCoefficient& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  GradedCoefficient operator-() const {
    GradedCoefficient g = *this;
    for (auto& [m, c] : g.terms_) c = -c;
    return g;
  }
  friend GradedCoefficient operator+(GradedCoefficient a, const GradedCoefficient& b) { return a += b; }
  friend GradedCoefficient operator-(GradedCoefficient a, const GradedCoefficient& b) { return a -= b; }
  friend GradedCoefficient operator*(const GradedCoefficient& a, const GradedCoefficient& b) {
    GradedCoefficient out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  GradedCoefficient& operator*=(const GradedCoefficient& other) { return *this = *this * other; }

  bool operator==(const GradedCoefficient&) const = default;
  std::strong_ordering operator<=>(const GradedCoefficient& other) const {
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    for (; a != terms_.end() && b != other.terms_.end(); ++a, ++b) {
      if (auto c = a->first <=> b->first; c != 0) return c;
      if (a->second != b->second) return a->second < b->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return terms_.size() <=> other.terms_.size();
  }

  /// Serialization like `3*a1^2*a2 - a3`; the zero element prints as `0`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += m.to_string();
      }
    }
    return out;
  }

 private:
  void add_term(const CoeffMonomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

namespace detail {

/// Appends `coeff*body` to a signed sum being printed. An empty body stands for 1.
/// `wrap_body` asks for parentheses around the body when it is multiplied.
inline void append_term(std::string& out, bool& first, const GradedCoefficient& coeff,
                        const std::string& body, bool wrap_body) {
  const auto& terms = coeff.terms();
  if (terms.empty()) return;
  if (terms.size() > 1 && body.empty()) {
    for (const auto& [m, c] : terms) append_term(out, first, GradedCoefficient::monomial(m, c), body, wrap_body);
    return;
  }
  const std::string wrapped = wrap_body ? "(" + body + ")" : body;
  bool negative = false;
  std::string core;
  if (terms.size() == 1) {
    const auto& [m, c] = *terms.begin();
    negative = c < 0;
    Integer mag = negative ? Integer(-c) : c;
    std::vector<std::string> parts;
    if (mag != 1 || (m.is_one() && body.empty())) parts.push_back(mag.str());
    if (!m.is_one()) parts.push_back(m.to_string());
    if (!body.empty()) parts.push_back(parts.empty() ? body : wrapped);
    for (std::size_t i = 0; i < parts.size(); ++i) core += (i ? "*" : "") + parts[i];
  } else {
    core = "(" + coeff.to_string() + ")*" + wrapped;
  }
  if (first)
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  first = false;
  out += core;
}

}  // namespace detail

}  // namespace chernbord
