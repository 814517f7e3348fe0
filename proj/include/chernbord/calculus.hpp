#pragma once

// Formal transfer calculus over products of unitary groups.
//
// A class at G = U(m_1,...,m_l) is a finite sum of terms  coeff * tr_H^G(w)  where H is a block
// refinement of G and w is an external product of basic classes, one per block of H. A basic
// class on a block U(n) is e_n^a * t_n^b: powers of the Euler class and of the opaque class
// t_n = tr_N^{U(n)}(1) (N the maximal torus normalizer); a = b = 0 is the unit 1_n.
//
// Terms are stored hierarchically: for each block of G, the list of sub-blocks of H inside it
// with their basic classes. Permuting sub-blocks inside one block of G is conjugation by a
// permutation matrix of G, which does not change the transfer, so sub-blocks are kept sorted.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernbord/coeff.hpp"
#include "chernbord/groups.hpp"
#include "chernbord/powerseries.hpp"

namespace chernbord {

/// e_size^euler * t_size^opaque on one block U(size).
struct Factor {
  int size = 1;
  unsigned euler = 0;
  unsigned opaque = 0;

  int degree() const { return 2 * size * static_cast<int>(euler); }
  bool is_unit() const { return euler == 0 && opaque == 0; }

  bool operator==(const Factor&) const = default;
  auto operator<=>(const Factor&) const = default;

  std::string to_string() const {
    std::string out;
    if (euler > 0) out += "e(" + std::to_string(size) + ")" + (euler > 1 ? "^" + std::to_string(euler) : "");
    if (opaque > 0) {
      if (!out.empty()) out += "*";
      out += "t(" + std::to_string(size) + ")" + (opaque > 1 ? "^" + std::to_string(opaque) : "");
    }
    if (out.empty()) out = "1(" + std::to_string(size) + ")";
    return out;
  }
};

/// Sub-blocks of H inside one block of G.
using BlockWord = std::vector<Factor>;
/// One BlockWord per block of G.
using Word = std::vector<BlockWord>;

namespace detail {

// Sorting key inside a block: Euler classes first, then opaque classes, then larger blocks.
inline bool factor_precedes(const Factor& a, const Factor& b) {
  if (a.euler != b.euler) return a.euler > b.euler;
  if (a.opaque != b.opaque) return a.opaque > b.opaque;
  return a.size > b.size;
}

inline int block_size(const BlockWord& w) {
  int n = 0;
  for (const auto& f : w) n += f.size;
  return n;
}

inline std::size_t factor_count(const Word& w) {
  std::size_t n = 0;
  for (const auto& b : w) n += b.size();
  return n;
}

inline int word_degree(const Word& w) {
  int d = 0;
  for (const auto& b : w)
    for (const auto& f : b) d += f.degree();
  return d;
}

inline unsigned opaque_count(const Word& w) {
  unsigned n = 0;
  for (const auto& b : w)
    for (const auto& f : b) n += f.opaque;
  return n;
}

// Plain words first, then by degree, then by opaque factors, then lexicographically.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    auto fa = factor_count(a), fb = factor_count(b);
    if (fa != fb) return fa < fb;
    auto da = word_degree(a), db = word_degree(b);
    if (da != db) return da < db;
    auto oa = opaque_count(a), ob = opaque_count(b);
    if (oa != ob) return oa < ob;
    return b < a;
  }
};

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

/// Canonical form of the sub-blocks of one block: no empty blocks, t_1 = 1, sorted.
inline BlockWord canonical(BlockWord w) {
  w.erase(std::remove_if(w.begin(), w.end(), [](const Factor& f) { return f.size == 0; }), w.end());
  for (auto& f : w)
    if (f.size == 1) f.opaque = 0;  // the normalizer of the torus of U(1) is U(1) itself
  std::sort(w.begin(), w.end(), detail::factor_precedes);
  return w;
}

inline Word canonical(Word w) {
  for (auto& b : w) b = canonical(std::move(b));
  return w;
}

/// coeff * tr_H^G(word); H is read off from the word.
struct TransferTerm {
  GradedCoefficient coeff;
  Word word;

  bool plain() const {
    return std::all_of(word.begin(), word.end(), [](const BlockWord& b) { return b.size() == 1; });
  }
  GroupDescriptor subgroup() const {
    std::vector<int> blocks;
    for (const auto& b : word)
      for (const auto& f : b) blocks.push_back(f.size);
    return GroupDescriptor(std::move(blocks));
  }
  GroupDescriptor ambient() const {
    std::vector<int> blocks;
    for (const auto& b : word) blocks.push_back(detail::block_size(b));
    return GroupDescriptor(std::move(blocks));
  }
  int word_degree() const { return detail::word_degree(word); }
};

inline Word unit_word(const GroupDescriptor& g) {
  Word w;
  for (int b : g.blocks()) w.push_back({Factor{b, 0, 0}});
  return w;
}

/// The word of a term, viewed as a plain word at its subgroup H.
inline Word plain_at_subgroup(const Word& w) {
  Word out;
  for (const auto& b : w)
    for (const auto& f : b) out.push_back({f});
  return out;
}

/// Groups a word at a refinement H of G into a word at G (composition of transfers).
inline Word regroup(const Word& at_h, const GroupDescriptor& h, const GroupDescriptor& g) {
  const auto counts = refinement_counts(h, g);
  Word out(g.size());
  std::size_t next = 0;
  for (std::size_t b = 0; b < g.size(); ++b)
    for (std::size_t n = 0; n < counts[b]; ++n, ++next)
      out[b].insert(out[b].end(), at_h[next].begin(), at_h[next].end());
  return canonical(std::move(out));
}

inline std::string word_to_string(const Word& w) {
  const bool is_plain =
      std::all_of(w.begin(), w.end(), [](const BlockWord& b) { return b.size() == 1; });
  auto join = [](const std::vector<Factor>& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      std::string s = fs[i].to_string();
      if (fs.size() > 1 && s.find('*') != std::string::npos) s = "(" + s + ")";
      out += (i ? " x " : "") + s;
    }
    return out;
  };
  std::vector<Factor> flat;
  for (const auto& b : w) flat.insert(flat.end(), b.begin(), b.end());
  if (is_plain) return join(flat);
  std::vector<int> hb, gb;
  for (const auto& b : w) {
    gb.push_back(detail::block_size(b));
    for (const auto& f : b) hb.push_back(f.size);
  }
  return "tr[" + GroupDescriptor(hb).to_string() + "," + GroupDescriptor(gb).to_string() + "](" + join(flat) + ")";
}

/// Homogeneity report for a class expression.
using ClassDegree = CoeffDegree;

/// Finite sum of transfer terms over one ambient group, in canonical form.
class ClassExpression {
 public:
  using TermMap = std::map<Word, GradedCoefficient, detail::WordLess>;

  ClassExpression() = default;
  explicit ClassExpression(GroupDescriptor group) : group_(std::move(group)) {}

  static ClassExpression zero(const GroupDescriptor& g) { return ClassExpression(g); }
  static ClassExpression scalar(const GradedCoefficient& c, const GroupDescriptor& g) {
    ClassExpression x(g);
    x.add(TransferTerm{c, unit_word(g)});
    return x;
  }
  static ClassExpression unit(const GroupDescriptor& g) { return scalar(1, g); }

  const GroupDescriptor& group() const { return group_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::vector<TransferTerm> term_list() const {
    std::vector<TransferTerm> out;
    for (const auto& [w, c] : terms_) out.push_back({c, w});
    return out;
  }

  /// Adds a term; the word must already be at this group. Canonicalizes it.
  void add(TransferTerm t) {
    if (t.coeff.is_zero()) return;
    Word w = canonical(std::move(t.word));
    if (w.size() != group_.size()) throw DimensionError("term has the wrong number of blocks for " + group_.to_string());
    for (std::size_t b = 0; b < w.size(); ++b)
      if (detail::block_size(w[b]) != group_.block(b))
        throw DimensionError("word does not match the blocks of " + group_.to_string());
    auto [it, inserted] = terms_.emplace(std::move(w), t.coeff);
    if (!inserted) {
      it->second += t.coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ClassExpression& operator+=(const ClassExpression& other) {
    require_same(other);
    for (const auto& [w, c] : other.terms_) add({c, w});
    return *this;
  }
  ClassExpression& operator-=(const ClassExpression& other) {
    require_same(other);
    for (const auto& [w, c] : other.terms_) add({-c, w});
    return *this;
  }
  friend ClassExpression operator+(ClassExpression a, const ClassExpression& b) { return a += b; }
  friend ClassExpression operator-(ClassExpression a, const ClassExpression& b) { return a -= b; }
  ClassExpression operator-() const { return scaled(-1); }

  ClassExpression scaled(const GradedCoefficient& c) const {
    ClassExpression x(group_);
    for (const auto& [w, v] : terms_) x.add({v * c, w});
    return x;
  }

  bool operator==(const ClassExpression&) const = default;

  /// Common degree of all terms (coefficient degree plus word degree).
  ClassDegree degree() const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      auto cd = c.degree();
      if (!cd.homogeneous()) return {CoeffDegree::Kind::Inhomogeneous, 0};
      int td = cd.value + detail::word_degree(w);
      if (d && *d != td) return {CoeffDegree::Kind::Inhomogeneous, 0};
      d = td;
    }
    if (!d) return {};
    return {CoeffDegree::Kind::Homogeneous, *d};
  }

  /// Canonical text, reparseable by the expression grammar. Zero prints as `0`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      const bool plain = std::all_of(w.begin(), w.end(), [](const BlockWord& b) { return b.size() == 1; });
      const std::string body = w.empty() ? std::string() : word_to_string(w);
      detail::append_term(out, first, c, body, plain && w.size() > 1);
    }
    return out;
  }

 private:
  void require_same(const ClassExpression& other) const {
    if (!(group_ == other.group_))
      throw DimensionError("classes over different groups: " + group_.to_string() + " and " +
                           other.group_.to_string());
  }

  GroupDescriptor group_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------------------------
// Restriction

/// Configuration after restricting one block: one BlockWord per part, with a multiplicity.
using BlockExpansion = std::vector<std::pair<std::vector<BlockWord>, Integer>>;

/// res^{U(n)}_{U(parts)} of tr_{sub-blocks}^{U(n)}(w), by iterating the two-block double coset formula.
inline BlockExpansion restrict_block(const BlockWord& word, const std::vector<int>& parts) {
  if (parts.size() == 1) return {{{word}, 1}};
  if (word.size() == 1) {
    // Plain class: Euler classes split multiplicatively, the opaque class restricts to 1.
    const Factor& f = word[0];
    std::vector<BlockWord> cfg;
    for (int p : parts) cfg.push_back({Factor{p, f.euler, 0}});
    return {{std::move(cfg), 1}};
  }
  const int n = detail::block_size(word);
  const int i = parts[0], j = n - i;
  const int k = word[0].size, l = n - k;
  const BlockWord rest_word(word.begin() + 1, word.end());
  const std::vector<int> rest_parts(parts.begin() + 1, parts.end());

  auto nonzero = [](std::initializer_list<int> sizes) {
    std::vector<int> out;
    for (int s : sizes)
      if (s > 0) out.push_back(s);
    return out;
  };

  BlockExpansion out;
  for (int d : dc_index_range(i, j, k, l)) {
    const Shuffle chi(i, j, k, l, d);
    const auto src = chi.source_pattern();  // (d, k-d, i-d, l-i+d)
    const auto to = chi.block_map();

    // Restrict tr_{word}^{U(k,l)} to U(d, k-d, i-d, l-i+d), blockwise.
    const auto first = restrict_block({word[0]}, nonzero({src[0], src[1]}));
    const auto second = restrict_block(rest_word, nonzero({src[2], src[3]}));
    for (const auto& [ca, ma] : first)
      for (const auto& [cb, mb] : second) {
        std::array<BlockWord, 4> slot{};
        std::size_t ia = 0, ib = 0;
        for (std::size_t s = 0; s < 2; ++s)
          if (src[s] > 0) slot[s] = ca[ia++];
        for (std::size_t s = 2; s < 4; ++s)
          if (src[s] > 0) slot[s] = cb[ib++];
        // Conjugate by the shuffle, then transfer up to U(i, j).
        std::array<BlockWord, 4> moved{};
        for (std::size_t s = 0; s < 4; ++s) moved[to[s]] = slot[s];
        BlockWord left = moved[0], right = moved[2];
        left.insert(left.end(), moved[1].begin(), moved[1].end());
        right.insert(right.end(), moved[3].begin(), moved[3].end());
        // U(i, j) -> U(parts): the first block is a part, the second is refined further.
        for (const auto& [cr, mr] : restrict_block(canonical(right), rest_parts)) {
          std::vector<BlockWord> cfg{canonical(left)};
          for (const auto& bw : cr) cfg.push_back(canonical(bw));
          out.emplace_back(std::move(cfg), ma * mb * mr);
        }
      }
  }
  return out;
}

/// Augmentation of tr^{U(n)}_{sub-blocks}(w): the number of torus fixed points of the flag
/// manifold times the augmentation of w (Euler classes augment to 0, opaque classes to 1).
inline Integer augment_block(const BlockWord& word) {
  Integer r = detail::factorial(detail::block_size(word));
  for (const auto& f : word) {
    if (f.euler > 0) return 0;
    r /= detail::factorial(f.size);
  }
  return r;
}

/// Restriction of one term along an arrow K -> G; terms are returned uncombined.
inline std::vector<TransferTerm> restrict_term(const TransferTerm& term, const SubgroupArrow& arrow) {
  const auto& parts = arrow.parts();
  if (term.word.size() != parts.size()) throw DimensionError("restriction: term is not at the arrow's target");
  std::vector<BlockExpansion> per_block;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    std::vector<int> sizes;
    for (const auto& p : parts[b]) sizes.push_back(p.size);
    per_block.push_back(restrict_block(term.word[b], sizes));
    if (per_block.back().empty()) return {};
  }

  std::vector<TransferTerm> out;
  const GroupDescriptor& k = arrow.source();
  std::vector<std::size_t> pick(per_block.size(), 0);
  while (true) {
    Integer mult = 1;
    Word at_k(k.size());
    std::vector<bool> hit(k.size(), false);
    for (std::size_t b = 0; b < per_block.size() && mult != 0; ++b) {
      const auto& [cfg, m] = per_block[b][pick[b]];
      mult *= m;
      for (std::size_t p = 0; p < parts[b].size(); ++p) {
        if (parts[b][p].source_block) {
          at_k[*parts[b][p].source_block] = cfg[p];
          hit[*parts[b][p].source_block] = true;
        } else {
          mult *= augment_block(cfg[p]);
        }
      }
    }
    if (mult != 0) {
      for (std::size_t s = 0; s < k.size(); ++s)
        if (!hit[s]) at_k[s] = {Factor{k.block(s), 0, 0}};
      out.push_back({term.coeff * GradedCoefficient(mult), std::move(at_k)});
    }
    // Odometer over the per-block expansions.
    std::size_t b = 0;
    while (b < pick.size() && ++pick[b] == per_block[b].size()) pick[b++] = 0;
    if (b == pick.size()) break;
  }
  return out;
}

/// res along a supported arrow K -> G.
inline ClassExpression res_expand(const ClassExpression& x, const SubgroupArrow& arrow) {
  if (!(x.group() == arrow.target()))
    throw DimensionError("restriction along " + arrow.describe() + " applied to a class at " + x.group().to_string());
  ClassExpression out(arrow.source());
  for (const auto& t : x.term_list())
    for (auto& r : restrict_term(t, arrow)) out.add(std::move(r));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Transfer, products

/// tr_H^G of a class at a block refinement H of G.
inline ClassExpression transfer(const ClassExpression& x, const GroupDescriptor& g) {
  if (!is_refinement(x.group(), g))
    throw DimensionError("transfer needs a block refinement: " + x.group().to_string() + " is not one of " +
                         g.to_string());
  ClassExpression out(g);
  for (const auto& t : x.term_list()) out.add({t.coeff, regroup(t.word, x.group(), g)});
  return out;
}

inline ClassExpression external_product(const ClassExpression& x, const ClassExpression& y) {
  ClassExpression out(x.group() * y.group());
  for (const auto& a : x.term_list())
    for (const auto& b : y.term_list()) {
      Word w = a.word;
      w.insert(w.end(), b.word.begin(), b.word.end());
      out.add({a.coeff * b.coeff, std::move(w)});
    }
  return out;
}

inline TransferTerm plain_product(const TransferTerm& a, const TransferTerm& b) {
  if (a.word.size() != b.word.size()) throw DefectError("plain product of words over different groups");
  Word w = a.word;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].size() != 1 || b.word[i].size() != 1 || w[i][0].size != b.word[i][0].size)
      throw DefectError("plain product of non-plain words");
    w[i][0].euler += b.word[i][0].euler;
    w[i][0].opaque += b.word[i][0].opaque;
  }
  return {a.coeff * b.coeff, std::move(w)};
}

/// Product of two terms at G via reciprocity: tr_H(w) * y = tr_H(w * res_H(y)).
inline std::vector<TransferTerm> multiply_terms(const TransferTerm& a, const TransferTerm& b,
                                               const GroupDescriptor& g) {
  std::vector<TransferTerm> out;
  if (a.plain() && b.plain()) {
    out.push_back(plain_product(a, b));
    return out;
  }
  const bool a_transfers = !a.plain();
  const TransferTerm& outer = a_transfers ? a : b;
  const TransferTerm& inner = a_transfers ? b : a;
  const GroupDescriptor h = outer.subgroup();
  const TransferTerm outer_plain{outer.coeff, plain_at_subgroup(outer.word)};
  for (const auto& r : restrict_term(inner, SubgroupArrow::refinement(g, h)))
    for (const auto& p : multiply_terms(outer_plain, {r.coeff, canonical(r.word)}, h))
      out.push_back({p.coeff, regroup(p.word, h, g)});
  return out;
}

inline ClassExpression mul_expr(const ClassExpression& x, const ClassExpression& y) {
  if (!(x.group() == y.group()))
    throw DimensionError("product of classes over different groups: " + x.group().to_string() + " and " +
                         y.group().to_string());
  ClassExpression out(x.group());
  for (const auto& a : x.term_list())
    for (const auto& b : y.term_list())
      for (auto& p : multiply_terms(a, b, x.group())) out.add(std::move(p));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Basic classes

/// Euler class e_k of the tautological U(k)-representation.
inline ClassExpression euler_class(int k, unsigned power = 1) {
  if (k < 1) throw RangeError("Euler class e_k needs k >= 1");
  ClassExpression x(GroupDescriptor::unitary(k));
  x.add({1, {{Factor{k, power, 0}}}});
  return x;
}

/// t_m = tr_N^{U(m)}(1), kept opaque apart from its restriction axioms.
inline ClassExpression opaque_class(int m, unsigned power = 1) {
  if (m < 1) throw RangeError("opaque class t_m needs m >= 1");
  ClassExpression x(GroupDescriptor::unitary(m));
  x.add({1, {{Factor{m, 0, power}}}});
  return x;
}

inline ClassExpression unit_class(const GroupDescriptor& g) { return ClassExpression::unit(g); }

// ---------------------------------------------------------------------------------------------
// Evaluation at the maximal torus and at the trivial group

/// Restriction to the maximal torus, read in MU*[[x_1..x_M]] (blocks of G kept as variable blocks).
inline PowerSeries torus_restrict(const ClassExpression& x, int max_degree = kDefaultMaxDegree) {
  AlgebraPtr alg = SeriesAlgebra::torus(x.group().blocks(), max_degree);
  PowerSeries out(alg);
  const auto on_torus = res_expand(x, SubgroupArrow::maximal_torus(x.group()));
  for (const auto& t : on_torus.term_list()) {
    std::vector<unsigned> e;
    for (const auto& b : t.word) e.push_back(b.at(0).euler);
    if (alg->degree_of(e) > max_degree)
      throw TruncationError("torus restriction: a term of degree " + std::to_string(alg->degree_of(e)) +
                            " exceeds the truncation bound " + std::to_string(max_degree));
    out.add_term(std::move(e), t.coeff);
  }
  return out;
}

/// Restriction to the trivial group.
inline GradedCoefficient augment(const ClassExpression& x) {
  const auto r = res_expand(x, SubgroupArrow::augmentation(x.group()));
  GradedCoefficient out;
  for (const auto& [w, c] : r.terms()) out += c;
  return out;
}

}  // namespace chernbord
