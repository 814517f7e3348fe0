#pragma once

// Truncated graded power series over the coefficient ring.
//
// Two families of algebras model the completed side:
//   torus algebras  Z[a][[x_1..x_M]]       with deg x = 2, variables grouped in blocks,
//   Chern algebras  Z[a][[c_k^{[i]}]]      with deg c_k^{[i]} = 2k, k = 1..m_i.
// The splitting map sends c_k^{[i]} to the k-th elementary symmetric polynomial of block i.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chernbord/coeff.hpp"
#include "chernbord/linalg.hpp"

namespace chernbord {

inline constexpr int kDefaultMaxDegree = 12;

struct SeriesVariable {
  std::string name;
  int degree = 2;
  std::size_t block = 0;  // 0-based factor index
  int index = 1;          // position in the block (torus) or Chern index k (Chern)

  bool operator==(const SeriesVariable&) const = default;
};

enum class SeriesKind { Torus, Chern };

/// Variables, block structure and truncation bound of one truncated algebra.
class SeriesAlgebra {
 public:
  static std::shared_ptr<const SeriesAlgebra> torus(std::vector<int> blocks, int max_degree) {
    check_bound(max_degree);
    std::vector<SeriesVariable> vars;
    int n = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int a = 1; a <= blocks[b]; ++a) {
        ++n;
        vars.push_back({"x" + std::to_string(n), 2, b, a});
      }
    return std::shared_ptr<const SeriesAlgebra>(
        new SeriesAlgebra(SeriesKind::Torus, std::move(blocks), std::move(vars), max_degree));
  }

  static std::shared_ptr<const SeriesAlgebra> chern(std::vector<int> blocks, int max_degree) {
    check_bound(max_degree);
    std::vector<SeriesVariable> vars;
    const bool single = blocks.size() == 1;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (int k = 1; k <= blocks[b]; ++k) {
        std::string name = "c" + std::to_string(k);
        if (!single) name += "[" + std::to_string(b + 1) + "]";
        vars.push_back({std::move(name), 2 * k, b, k});
      }
    return std::shared_ptr<const SeriesAlgebra>(
        new SeriesAlgebra(SeriesKind::Chern, std::move(blocks), std::move(vars), max_degree));
  }

  SeriesKind kind() const { return kind_; }
  const std::vector<int>& blocks() const { return blocks_; }
  const std::vector<SeriesVariable>& variables() const { return vars_; }
  std::size_t size() const { return vars_.size(); }
  int max_degree() const { return max_degree_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return i;
    return std::nullopt;
  }
  /// Index of c_k^{[block]} in a Chern algebra.
  std::optional<std::size_t> chern_variable(std::size_t block, int k) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].block == block && vars_[i].index == k) return i;
    return std::nullopt;
  }
  /// Variable indices (in order) of one block.
  std::vector<std::size_t> block_variables(std::size_t block) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].block == block) out.push_back(i);
    return out;
  }

  int degree_of(const std::vector<unsigned>& exps) const {
    int d = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) d += vars_[i].degree * static_cast<int>(exps[i]);
    return d;
  }

  /// All exponent vectors of exactly this internal degree, in canonical (lexicographically descending) order.
  std::vector<std::vector<unsigned>> monomials_of_degree(int degree) const {
    std::vector<std::vector<unsigned>> out;
    if (degree < 0) return out;
    std::vector<unsigned> cur(vars_.size(), 0);
    enumerate(0, degree, cur, out);
    return out;
  }

  bool operator==(const SeriesAlgebra& other) const {
    return kind_ == other.kind_ && blocks_ == other.blocks_ && max_degree_ == other.max_degree_;
  }

  std::string describe() const {
    std::string out = kind_ == SeriesKind::Torus ? "torus" : "chern";
    out += "(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) out += (i ? "," : "") + std::to_string(blocks_[i]);
    return out + "; D=" + std::to_string(max_degree_) + ")";
  }

 private:
  SeriesAlgebra(SeriesKind kind, std::vector<int> blocks, std::vector<SeriesVariable> vars, int max_degree)
      : kind_(kind), blocks_(std::move(blocks)), vars_(std::move(vars)), max_degree_(max_degree) {}

  static void check_bound(int d) {
    if (d < 0 || d % 2 != 0) throw RangeError("truncation bound must be an even non-negative integer");
  }

  void enumerate(std::size_t i, int remaining, std::vector<unsigned>& cur,
                 std::vector<std::vector<unsigned>>& out) const {
    if (i == vars_.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int e = remaining / vars_[i].degree; e >= 0; --e) {
      cur[i] = static_cast<unsigned>(e);
      enumerate(i + 1, remaining - e * vars_[i].degree, cur, out);
    }
    cur[i] = 0;
  }

  SeriesKind kind_;
  std::vector<int> blocks_;
  std::vector<SeriesVariable> vars_;
  int max_degree_;
};

using AlgebraPtr = std::shared_ptr<const SeriesAlgebra>;

/// Exponent vector with its internal degree; ordered by degree, then lexicographically descending.
struct SeriesMonomial {
  int degree = 0;
  std::vector<unsigned> exps;

  bool operator==(const SeriesMonomial&) const = default;
  std::strong_ordering operator<=>(const SeriesMonomial& other) const {
    if (auto c = degree <=> other.degree; c != 0) return c;
    return other.exps <=> exps;
  }
};

class PowerSeries {
 public:
  using TermMap = std::map<SeriesMonomial, GradedCoefficient>;

  explicit PowerSeries(AlgebraPtr algebra) : alg_(std::move(algebra)) {}

  static PowerSeries constant(AlgebraPtr algebra, const GradedCoefficient& c) {
    PowerSeries s(algebra);
    s.add_term(std::vector<unsigned>(s.alg_->size(), 0), c);
    return s;
  }
  static PowerSeries variable(AlgebraPtr algebra, std::size_t index) {
    PowerSeries s(algebra);
    std::vector<unsigned> e(s.alg_->size(), 0);
    e.at(index) = 1;
    s.add_term(e, 1);
    return s;
  }
  static PowerSeries monomial(AlgebraPtr algebra, std::vector<unsigned> exps, const GradedCoefficient& c) {
    PowerSeries s(algebra);
    s.add_term(std::move(exps), c);
    return s;
  }

  const SeriesAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GradedCoefficient coefficient(const std::vector<unsigned>& exps) const {
    auto it = terms_.find({alg_->degree_of(exps), exps});
    return it == terms_.end() ? GradedCoefficient{} : it->second;
  }

  /// Homogeneous component of one internal degree.
  PowerSeries component(int degree) const {
    PowerSeries s(alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree == degree) s.terms_.emplace(m, c);
    return s;
  }

  /// Adds c * x^exps; monomials above the truncation bound are dropped.
  void add_term(std::vector<unsigned> exps, const GradedCoefficient& c) {
    if (exps.size() != alg_->size()) throw DimensionError("exponent vector does not match the algebra");
    if (c.is_zero()) return;
    int d = alg_->degree_of(exps);
    if (d > alg_->max_degree()) return;
    auto [it, inserted] = terms_.emplace(SeriesMonomial{d, std::move(exps)}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PowerSeries& operator+=(const PowerSeries& other) {
    require_same(other);
    for (const auto& [m, c] : other.terms_) add_term(m.exps, c);
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& other) {
    require_same(other);
    for (const auto& [m, c] : other.terms_) add_term(m.exps, -c);
    return *this;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  PowerSeries operator-() const {
    PowerSeries s = *this;
    for (auto& [m, c] : s.terms_) c = -c;
    return s;
  }

  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.require_same(b);
    PowerSeries out(a.alg_);
    const int bound = a.alg_->max_degree();
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.degree + mb.degree > bound) break;  // b's terms are sorted by degree
        std::vector<unsigned> e = ma.exps;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += mb.exps[i];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }
  PowerSeries& operator*=(const PowerSeries& other) { return *this = *this * other; }

  PowerSeries scaled(const GradedCoefficient& c) const {
    PowerSeries s(alg_);
    for (const auto& [m, v] : terms_) s.add_term(m.exps, v * c);
    return s;
  }

  PowerSeries pow(unsigned n) const {
    PowerSeries out = constant(alg_, 1);
    for (unsigned i = 0; i < n; ++i) out *= *this;
    return out;
  }

  bool operator==(const PowerSeries& other) const { return *alg_ == *other.alg_ && terms_ == other.terms_; }

  /// Serialization like `x1^2*x2 + a1*c2`; zero prints as `0`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) detail::append_term(out, first, c, monomial_string(m.exps), false);
    return out;
  }

  std::string monomial_string(const std::vector<unsigned>& exps) const {
    std::string out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += alg_->variables()[i].name;
      if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
    }
    return out;
  }

 private:
  void require_same(const PowerSeries& other) const {
    if (!(*alg_ == *other.alg_))
      throw AlgebraMismatch("power series over different algebras: " + alg_->describe() + " vs " +
                            other.alg_->describe());
  }

  AlgebraPtr alg_;
  TermMap terms_;
};

/// k-th elementary symmetric polynomial in the variables of one block of a torus algebra.
inline PowerSeries elementary_symmetric(const AlgebraPtr& alg, int k, std::size_t block) {
  if (alg->kind() != SeriesKind::Torus) throw AlgebraMismatch("elementary_symmetric needs a torus algebra");
  if (k < 0) throw RangeError("elementary_symmetric: k must be non-negative");
  if (block >= alg->blocks().size()) throw RangeError("elementary_symmetric: block out of range");
  const auto vars = alg->block_variables(block);
  PowerSeries out(alg);
  if (static_cast<std::size_t>(k) > vars.size()) return out;
  // Walk k-subsets of the block in lexicographic order.
  std::vector<std::size_t> pick(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  while (true) {
    std::vector<unsigned> e(alg->size(), 0);
    for (auto p : pick) e[vars[p]] = 1;
    out.add_term(std::move(e), 1);
    std::size_t i = pick.size();
    while (i > 0 && pick[i - 1] == vars.size() - pick.size() + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// Elementary symmetric polynomial in all variables of a single-block torus algebra.
inline PowerSeries elementary_symmetric(const AlgebraPtr& alg, int k) {
  if (alg->blocks().size() != 1) throw AlgebraMismatch("elementary_symmetric: specify a block");
  return elementary_symmetric(alg, k, 0);
}

/// Torus algebra matching the blocks of a Chern algebra.
inline AlgebraPtr splitting_target(const SeriesAlgebra& chern_alg, int max_degree) {
  return SeriesAlgebra::torus(chern_alg.blocks(), max_degree);
}

namespace detail {

/// Images of the powers of each Chern variable, cached for one splitting computation.
class SplittingImages {
 public:
  SplittingImages(const SeriesAlgebra& source, AlgebraPtr target) : src_(source), tgt_(std::move(target)) {
    if (src_.kind() != SeriesKind::Chern || tgt_->kind() != SeriesKind::Torus || src_.blocks() != tgt_->blocks())
      throw AlgebraMismatch("splitting map needs a Chern algebra and the torus algebra of the same blocks");
    powers_.resize(src_.size());
  }

  PowerSeries image(const std::vector<unsigned>& exps) {
    PowerSeries out = PowerSeries::constant(tgt_, 1);
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > 0) out *= power(i, exps[i]);
    return out;
  }

 private:
  const PowerSeries& power(std::size_t var, unsigned n) {
    auto& p = powers_[var];
    if (p.empty()) p.push_back(PowerSeries::constant(tgt_, 1));
    while (p.size() <= n) {
      const auto& v = src_.variables()[var];
      p.push_back(p.back() * elementary_symmetric(tgt_, v.index, v.block));
    }
    return p[n];
  }

  const SeriesAlgebra& src_;
  AlgebraPtr tgt_;
  std::vector<std::vector<PowerSeries>> powers_;
};

}  // namespace detail

/// Ring map MU*[[c]] -> MU*[[x]] determined by c_k^{[i]} -> e_k(block i).
inline PowerSeries splitting_map(const PowerSeries& f, const AlgebraPtr& target) {
  if (f.algebra().max_degree() > target->max_degree())
    throw TruncationError("splitting map: source truncation exceeds target truncation");
  detail::SplittingImages images(f.algebra(), target);
  PowerSeries out(target);
  for (const auto& [m, c] : f.terms()) out += images.image(m.exps).scaled(c);
  return out;
}

inline PowerSeries splitting_map(const PowerSeries& f) {
  return splitting_map(f, splitting_target(f.algebra(), f.algebra().max_degree()));
}

/// Where block-wise symmetry fails: swapping variables `first` and `second` (1-based, same block)
/// changes the coefficient of `monomial`.
struct SymmetryWitness {
  std::size_t block = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  std::string monomial;
  GradedCoefficient coefficient;
  GradedCoefficient swapped_coefficient;

  std::string to_string() const {
    return "not symmetric under (" + std::to_string(first) + " " + std::to_string(second) +
           "): coefficient of " + (monomial.empty() ? std::string("1") : monomial) + " is " +
           coefficient.to_string() + " but its transpose has " + swapped_coefficient.to_string();
  }
};

using SymmetrizeResult = std::variant<PowerSeries, SymmetryWitness>;

/// Matrix whose columns are the splitting images of the Chern monomials of one degree,
/// with rows indexed by the torus monomials of that degree.
inline linalg::IntMatrix splitting_matrix(const SeriesAlgebra& chern_alg, const AlgebraPtr& torus_alg, int degree,
                                          const std::vector<std::vector<unsigned>>& chern_basis) {
  const auto rows = torus_alg->monomials_of_degree(degree);
  linalg::IntMatrix m(rows.size(), chern_basis.size());
  detail::SplittingImages images(chern_alg, torus_alg);
  for (std::size_t j = 0; j < chern_basis.size(); ++j) {
    PowerSeries img = images.image(chern_basis[j]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      GradedCoefficient c = img.coefficient(rows[i]);
      if (!c.is_constant()) throw DefectError("splitting image has a non-integer coefficient");
      m(i, j) = c.constant_term();
    }
  }
  return m;
}

/// Checks block-wise symmetry of a torus series and, if symmetric, returns its unique preimage
/// under the splitting map by an exact linear solve degree by degree.
inline SymmetrizeResult symmetrize_check(const PowerSeries& f) {
  const SeriesAlgebra& alg = f.algebra();
  if (alg.kind() != SeriesKind::Torus) throw AlgebraMismatch("symmetrize_check needs a torus algebra");

  // Adjacent transpositions generate each block's symmetric group.
  for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
    const auto vars = alg.block_variables(b);
    for (std::size_t p = 0; p + 1 < vars.size(); ++p) {
      for (const auto& [m, c] : f.terms()) {
        std::vector<unsigned> swapped = m.exps;
        std::swap(swapped[vars[p]], swapped[vars[p + 1]]);
        GradedCoefficient other = f.coefficient(swapped);
        if (other != c) return SymmetryWitness{b, vars[p] + 1, vars[p + 1] + 1, f.monomial_string(m.exps), c, other};
      }
    }
  }

  AlgebraPtr target = SeriesAlgebra::chern(alg.blocks(), alg.max_degree());
  PowerSeries out(target);
  for (int t = 0; t <= alg.max_degree(); t += 2) {
    PowerSeries part = f.component(t);
    if (part.is_zero()) continue;
    const auto basis = target->monomials_of_degree(t);
    const auto rows = f.algebra_ptr()->monomials_of_degree(t);
    linalg::IntMatrix m = splitting_matrix(*target, f.algebra_ptr(), t, basis);

    // Split the right-hand side by coefficient monomial; each piece is an integer system.
    std::map<CoeffMonomial, std::vector<Integer>> rhs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const GradedCoefficient coeff = part.coefficient(rows[i]);
      for (const auto& [cm, cv] : coeff.terms()) {
        auto& v = rhs[cm];
        v.resize(rows.size());
        v[i] = cv;
      }
    }
    for (const auto& [cm, v] : rhs) {
      auto sol = linalg::solve(m, v);
      if (!sol) throw DefectError("symmetric series outside the span of the Chern monomials in degree " +
                                  std::to_string(t));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Rational& x = (*sol)[j];
        if (x == 0) continue;
        if (denominator(x) != 1) throw DefectError("non-integral preimage under the splitting map");
        out.add_term(basis[j], GradedCoefficient::monomial(cm, numerator(x)));
      }
    }
  }
  return out;
}

/// Rank certificate for injectivity of the splitting map up to the truncation bound.
struct InjectivityCertificate {
  std::size_t chern_monomials = 0;
  std::size_t rank = 0;
  bool saturated = false;
  bool injective() const { return rank == chern_monomials; }
};

inline InjectivityCertificate splitting_injectivity(const std::vector<int>& blocks, int max_degree) {
  AlgebraPtr c = SeriesAlgebra::chern(blocks, max_degree);
  AlgebraPtr x = SeriesAlgebra::torus(blocks, max_degree);
  InjectivityCertificate cert{0, 0, true};
  // The map preserves degree, so the rank is the sum of the degreewise ranks.
  for (int t = 0; t <= max_degree; t += 2) {
    const auto basis = c->monomials_of_degree(t);
    if (basis.empty()) continue;
    linalg::IntMatrix m = splitting_matrix(*c, x, t, basis);
    cert.chern_monomials += basis.size();
    cert.rank += linalg::rank(m);
    cert.saturated = cert.saturated && linalg::is_saturated(m);
  }
  return cert;
}

}  // namespace chernbord
