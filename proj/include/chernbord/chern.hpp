#pragma once

// Chern classes c_k^{(m)}, their restriction identities, Chern classes of representations and the
// bundling map into the completed model.

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chernbord/rewrite.hpp"

namespace chernbord {

/// c_k^{(m)} in canonical form. U(0) is read as the trivial group, where only c_0 = 1 survives.
inline ClassExpression chern_class(int k, int m, const NormalizeOptions& options = {}) {
  if (k < 0 || m < 0) throw RangeError("c(k,m) needs k >= 0 and m >= 0");
  if (m == 0) return k == 0 ? ClassExpression::unit({}) : ClassExpression::zero({});
  return normalize(ast::chern(k, m), options);
}

/// c_k^{[i]}: the pullback of c_k^{(m_i)} along the projection of G onto its factor i.
inline ClassExpression factor_chern_class(const GroupDescriptor& g, std::size_t i, int k,
                                          const NormalizeOptions& options = {}) {
  if (i >= g.size()) throw RangeError("factor index out of range for " + g.to_string());
  const auto arrow = SubgroupArrow::projection(g, {i});
  return normalize(ast::res(arrow, ast::chern(k, g.block(i))), options);
}

/// The Whitney sum Σ_d c_d^{(i)} × c_{k-d}^{(j)} at U(i,j).
inline ClassExpression whitney_sum(int k, int i, int j) {
  ClassExpression out(canonical_block({i, j}).group);
  for (int d = 0; d <= k; ++d) out += external_product(chern_class(d, i), chern_class(k - d, j));
  return out;
}

/// Normalized res^{U(m)}_{U(i,j)}(c_k^{(m)}), checked against the Whitney sum.
inline ClassExpression whitney_restriction(int k, int m, int i, int j, const NormalizeOptions& options = {}) {
  if (i < 0 || j < 0 || i + j != m)
    throw DimensionError("whitney_restriction needs i + j = m, got " + std::to_string(i) + " + " +
                         std::to_string(j) + " and m = " + std::to_string(m));
  if (m < 1) throw RangeError("whitney_restriction needs m >= 1");
  const GroupDescriptor fine = canonical_block({i, j}).group;
  const auto arrow = SubgroupArrow::refinement(GroupDescriptor::unitary(m), fine);
  ClassExpression r = normalize(ast::res(arrow, ast::chern(k, m)), options);
  ClassExpression expected = whitney_sum(k, i, j);
  if (!(r == expected))
    throw DefectError("Whitney identity fails for c(" + std::to_string(k) + "," + std::to_string(m) + ") at U(" +
                      std::to_string(i) + "," + std::to_string(j) + "): " + r.to_string() + " vs " +
                      expected.to_string());
  return r;
}

/// Normalized restriction of c_k^{(m)} to the upper-left U(m-1).
inline ClassExpression restrict_to_smaller(int k, int m, const NormalizeOptions& options = {}) {
  if (m < 2) throw RangeError("restrict_to_smaller needs m >= 2");
  const auto arrow = SubgroupArrow::upper_left(GroupDescriptor::unitary(m), GroupDescriptor::unitary(m - 1));
  return normalize(ast::res(arrow, ast::chern(k, m)), options);
}

// ---------------------------------------------------------------------------------------------
// Representations

enum class RepPieceKind { Tautological, Trivial, Character };

struct RepPiece {
  RepPieceKind kind = RepPieceKind::Trivial;
  std::size_t factor = 0;      // Tautological
  int dimension = 0;           // Trivial
  std::vector<int> exponents;  // Character, one entry per block of G
};

/// A representation of G as a direct sum of supported pieces.
class RepDescriptor {
 public:
  explicit RepDescriptor(GroupDescriptor g) : group_(std::move(g)) {}

  static RepDescriptor identity(int m) { return RepDescriptor(GroupDescriptor::unitary(m)).tautological(0); }
  static RepDescriptor trivial(const GroupDescriptor& g, int n) { return RepDescriptor(g).add_trivial(n); }
  /// The block inclusion G = U(m_1,...,m_l) -> U(m_1 + ... + m_l).
  static RepDescriptor block_inclusion(const GroupDescriptor& g) {
    RepDescriptor r(g);
    for (std::size_t i = 0; i < g.size(); ++i) r.tautological(i);
    return r;
  }

  RepDescriptor& tautological(std::size_t factor) {
    if (factor >= group_.size()) throw UnsupportedRepresentation("no factor " + std::to_string(factor + 1) + " in " + group_.to_string());
    pieces_.push_back({RepPieceKind::Tautological, factor, group_.block(factor), {}});
    return *this;
  }
  RepDescriptor& add_trivial(int n) {
    if (n < 0) throw RangeError("trivial summand of negative dimension");
    pieces_.push_back({RepPieceKind::Trivial, 0, n, {}});
    return *this;
  }
  /// A one-dimensional character; only coordinate characters of U(1) factors and the trivial
  /// character are supported.
  RepDescriptor& character(std::vector<int> exponents) {
    if (exponents.size() != group_.size())
      throw UnsupportedRepresentation("character needs one exponent per block of " + group_.to_string());
    pieces_.push_back({RepPieceKind::Character, 0, 1, std::move(exponents)});
    return *this;
  }

  const GroupDescriptor& group() const { return group_; }
  const std::vector<RepPiece>& pieces() const { return pieces_; }
  int dimension() const {
    int n = 0;
    for (const auto& p : pieces_) n += p.dimension;
    return n;
  }

 private:
  GroupDescriptor group_;
  std::vector<RepPiece> pieces_;
};

namespace detail {

// Total Chern class c_0, ..., c_k of one piece.
inline std::vector<ClassExpression> piece_classes(const GroupDescriptor& g, const RepPiece& p, int k,
                                                  const NormalizeOptions& options) {
  std::vector<ClassExpression> out;
  std::size_t factor = p.factor;
  if (p.kind == RepPieceKind::Character) {
    std::vector<std::size_t> nonzero;
    for (std::size_t b = 0; b < p.exponents.size(); ++b)
      if (p.exponents[b] != 0) nonzero.push_back(b);
    if (nonzero.empty()) {
      RepPiece t{RepPieceKind::Trivial, 0, 1, {}};
      return piece_classes(g, t, k, options);
    }
    if (nonzero.size() != 1 || p.exponents[nonzero[0]] != 1 || g.block(nonzero[0]) != 1)
      throw UnsupportedRepresentation("only coordinate characters of U(1) factors are supported");
    factor = nonzero[0];
  }
  for (int d = 0; d <= k; ++d) {
    if (p.kind == RepPieceKind::Trivial)
      out.push_back(d == 0 ? ClassExpression::unit(g) : ClassExpression::zero(g));
    else
      out.push_back(factor_chern_class(g, factor, d, options));
  }
  return out;
}

}  // namespace detail

/// c_k(V) = ρ^*(c_k^{(m)}), by the Whitney formula over the pieces of ρ.
inline ClassExpression chern_of_rep(const RepDescriptor& rep, int k, const NormalizeOptions& options = {}) {
  if (k < 0) throw RangeError("chern_of_rep needs k >= 0");
  const GroupDescriptor& g = rep.group();
  std::vector<ClassExpression> total{ClassExpression::unit(g)};
  for (int d = 1; d <= k; ++d) total.push_back(ClassExpression::zero(g));
  for (const auto& piece : rep.pieces()) {
    const auto c = detail::piece_classes(g, piece, k, options);
    std::vector<ClassExpression> next(static_cast<std::size_t>(k) + 1, ClassExpression::zero(g));
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + b <= k; ++b) {
        if (total[a].is_zero() || c[b].is_zero()) continue;
        next[a + b] += mul_expr(total[a], c[b]);
      }
    total = std::move(next);
  }
  return total[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------------------------
// Bundling map

/// The Conner-Floyd class c_k^{[block]} in the Chern algebra of the given blocks.
inline PowerSeries cf_generator(const std::vector<int>& blocks, std::size_t block, int k,
                                int max_degree = kDefaultMaxDegree) {
  AlgebraPtr alg = SeriesAlgebra::chern(blocks, max_degree);
  if (k == 0) return PowerSeries::constant(alg, 1);
  auto v = alg->chern_variable(block, k);
  if (!v) return PowerSeries(alg);
  return PowerSeries::variable(alg, *v);
}

/// Image in MU*[[Chern variables]]: torus restriction followed by the symmetric preimage.
inline PowerSeries bundling_map(const ClassExpression& x, int max_degree = kDefaultMaxDegree) {
  auto r = symmetrize_check(torus_restrict(x, max_degree));
  if (auto* w = std::get_if<SymmetryWitness>(&r))
    throw UnsupportedRepresentation("bundling map: torus image is " + w->to_string());
  return std::get<PowerSeries>(std::move(r));
}

}  // namespace chernbord
