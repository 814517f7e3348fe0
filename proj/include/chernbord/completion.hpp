#pragma once

// The augmentation ideal of the completed model MU*[[Chern variables]]: ideal powers, regularity
// of the Chern sequence and Koszul local homology, all by exact integer linear algebra.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chernbord/chern.hpp"
#include "chernbord/linalg.hpp"

namespace chernbord {

/// One generator c_k^{[i]} of the augmentation ideal.
struct IdealGenerator {
  std::size_t block = 0;
  int k = 0;
  int weight() const { return 2 * k; }
  std::string name() const { return "c" + std::to_string(k) + "[" + std::to_string(block + 1) + "]"; }
};

/// The sequence c_{m_1}^{[1]}, ..., c_1^{[1]}, ..., c_{m_l}^{[l]}, ..., c_1^{[l]}.
struct IdealDescriptor {
  GroupDescriptor group;
  std::vector<IdealGenerator> generators;

  explicit IdealDescriptor(GroupDescriptor g) : group(std::move(g)) {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (int k = group.block(i); k >= 1; --k) generators.push_back({i, k});
  }

  std::vector<int> weights() const {
    std::vector<int> w;
    for (const auto& g : generators) w.push_back(g.weight());
    return w;
  }
  int max_weight() const {
    int w = 0;
    for (const auto& g : generators) w = std::max(w, g.weight());
    return w;
  }
  int min_weight() const {
    int w = 0;
    for (const auto& g : generators) w = w == 0 ? g.weight() : std::min(w, g.weight());
    return w;
  }
};

inline constexpr const char* kAxiomDependency =
    "verified in the completed model; the genuine equivariant statement rests on the splitting theorem "
    "for global MU-modules, taken as an axiom";

// ---------------------------------------------------------------------------------------------
// Chern monomials

namespace detail {

inline void compositions(std::size_t slots, unsigned total, std::vector<unsigned>& cur,
                         std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == slots) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned v = total + 1; v-- > 0;) {
    cur.push_back(v);
    compositions(slots, total - v, cur, out);
    cur.pop_back();
  }
}

inline int internal_degree(const std::vector<int>& weights, const std::vector<unsigned>& e) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += weights[i] * static_cast<int>(e[i]);
  return d;
}

}  // namespace detail

/// Exponent vectors (in sequence order) of all monomials of ideal-degree exactly n, ordered by
/// internal degree, then lexicographically descending.
inline std::vector<std::vector<unsigned>> chern_monomials(const std::vector<int>& weights, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  if (weights.empty()) {
    if (n == 0) out.push_back({});
    return out;
  }
  std::vector<unsigned> cur;
  detail::compositions(weights.size(), n, cur, out);
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return detail::internal_degree(weights, a) < detail::internal_degree(weights, b);
  });
  return out;
}

inline std::string monomial_name(const IdealDescriptor& ideal, const std::vector<unsigned>& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ideal.generators[i].name();
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------------------------
// The truncated model with its degreewise monomial bases

class CompletedModel {
 public:
  CompletedModel(const GroupDescriptor& g, int max_degree)
      : ideal_(g), alg_(SeriesAlgebra::chern(g.blocks(), max_degree)), max_degree_(max_degree) {
    for (int t = 0; t <= max_degree; t += 2) {
      basis_.push_back(alg_->monomials_of_degree(t));
      std::map<std::vector<unsigned>, std::size_t> idx;
      for (std::size_t j = 0; j < basis_.back().size(); ++j) idx[basis_.back()[j]] = j;
      index_.push_back(std::move(idx));
    }
    // Generators are computed from the calculus, not assumed.
    for (const auto& gen : ideal_.generators) {
      if (gen.weight() > max_degree) {
        generators_.emplace_back(alg_);
        continue;
      }
      PowerSeries s = bundling_map(factor_chern_class(g, gen.block, gen.k), max_degree);
      if (!(s == cf_generator(g.blocks(), gen.block, gen.k, max_degree)))
        throw DefectError("bundling image of " + gen.name() + " is not the Conner-Floyd generator");
      generators_.push_back(std::move(s));
    }
  }

  const IdealDescriptor& ideal() const { return ideal_; }
  const AlgebraPtr& algebra() const { return alg_; }
  int max_degree() const { return max_degree_; }
  const PowerSeries& generator(std::size_t i) const { return generators_.at(i); }

  std::size_t dim(int t) const { return t < 0 || t > max_degree_ ? 0 : basis_[static_cast<std::size_t>(t / 2)].size(); }
  const std::vector<std::vector<unsigned>>& basis(int t) const { return basis_.at(static_cast<std::size_t>(t / 2)); }

  /// Integer coordinates of the degree-t component of f.
  std::vector<Integer> coords(const PowerSeries& f, int t) const {
    std::vector<Integer> v(dim(t));
    for (const auto& [m, c] : f.terms()) {
      if (m.degree != t) continue;
      if (!c.is_constant()) throw DefectError("completed-model element with a non-integer coefficient");
      v[index_[static_cast<std::size_t>(t / 2)].at(m.exps)] = c.constant_term();
    }
    return v;
  }

  PowerSeries basis_element(int t, std::size_t j) const { return PowerSeries::monomial(alg_, basis(t)[j], 1); }

  /// Product of generator powers g^e as a series.
  PowerSeries generator_power(const std::vector<unsigned>& e) const {
    PowerSeries out = PowerSeries::constant(alg_, 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) out = out * generators_[i].pow(e[i]);
    return out;
  }

  /// Matrix of x ↦ f·x from A_t to A_{t + deg f}.
  linalg::IntMatrix multiplication(const PowerSeries& f, int f_degree, int t) const {
    linalg::IntMatrix m(dim(t + f_degree), dim(t));
    for (std::size_t j = 0; j < dim(t); ++j) {
      const auto v = coords(f * basis_element(t, j), t + f_degree);
      for (std::size_t i = 0; i < v.size(); ++i) m(i, j) = v[i];
    }
    return m;
  }

  /// Columns spanning (f_1,...,f_r)·A in degree t.
  linalg::IntMatrix ideal_span(const std::vector<std::pair<PowerSeries, int>>& gens, int t) const {
    linalg::IntMatrix out(dim(t), 0);
    for (const auto& [f, d] : gens)
      if (d <= t) out = linalg::IntMatrix::hconcat(out, multiplication(f, d, t - d));
    return out;
  }

 private:
  IdealDescriptor ideal_;
  AlgebraPtr alg_;
  int max_degree_;
  std::vector<std::vector<std::vector<unsigned>>> basis_;
  std::vector<std::map<std::vector<unsigned>, std::size_t>> index_;
  std::vector<PowerSeries> generators_;
};

namespace detail {

inline void validate_bound(int max_degree) {
  if (max_degree < 0 || max_degree % 2 != 0)
    throw RangeError("truncation bound must be even and non-negative, got " + std::to_string(max_degree));
}

// Generators of I^n as (series, degree) pairs.
inline std::vector<std::pair<PowerSeries, int>> ideal_power(const CompletedModel& model, unsigned n) {
  std::vector<std::pair<PowerSeries, int>> out;
  const auto weights = model.ideal().weights();
  for (const auto& e : chern_monomials(weights, n)) {
    const int d = internal_degree(weights, e);
    if (d <= model.max_degree()) out.emplace_back(model.generator_power(e), d);
  }
  return out;
}

inline std::size_t column_rank(const linalg::IntMatrix& m) { return m.cols() == 0 ? 0 : linalg::rank(m); }

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Associated graded

struct GradedDegree {
  int degree = 0;
  std::size_t rank = 0;        // rank of I^n_t / I^{n+1}_t
  std::size_t monomials = 0;   // monomials of ideal-degree n in internal degree t
  bool independent = false;    // their splitting images are linearly independent
  bool saturated = false;      // and span a direct summand
};

struct GradedRankReport {
  GroupDescriptor group;
  unsigned n = 0;
  int max_degree = 0;
  std::size_t rank = 0;        // within the truncation
  std::size_t full_count = 0;  // all monomials of ideal-degree n
  bool complete = false;       // every such monomial fits below the truncation bound
  std::vector<std::vector<unsigned>> basis;
  std::vector<GradedDegree> degrees;

  bool certified() const {
    std::size_t monomials = 0;
    for (const auto& d : degrees) {
      if (d.rank != d.monomials || !d.independent || !d.saturated) return false;
      monomials += d.monomials;
    }
    return monomials == rank && rank == basis.size();
  }
};

/// Rank of I^n / I^{n+1} in the truncated model, with the Chern monomials as certified basis.
inline GradedRankReport associated_graded_rank(const GroupDescriptor& g, unsigned n,
                                               int max_degree = kDefaultMaxDegree) {
  detail::validate_bound(max_degree);
  CompletedModel model(g, max_degree);
  const auto weights = model.ideal().weights();
  const int w_min = model.ideal().min_weight();
  if (n > 0 && static_cast<long>(n) * w_min > max_degree)
    throw TruncationError("truncation bound " + std::to_string(max_degree) + " is too small for I^" +
                          std::to_string(n) + "/I^" + std::to_string(n + 1));

  GradedRankReport report;
  report.group = g;
  report.n = n;
  report.max_degree = max_degree;
  const auto all = chern_monomials(weights, n);
  report.full_count = all.size();
  for (const auto& e : all)
    if (detail::internal_degree(weights, e) <= max_degree) report.basis.push_back(e);
  report.complete = report.basis.size() == all.size();

  const auto in = detail::ideal_power(model, n);
  const auto in1 = detail::ideal_power(model, n + 1);
  AlgebraPtr torus = SeriesAlgebra::torus(g.blocks(), max_degree);
  for (int t = 0; t <= max_degree; t += 2) {
    GradedDegree d;
    d.degree = t;
    const linalg::IntMatrix span_n = model.ideal_span(in, t);
    const linalg::IntMatrix span_n1 = model.ideal_span(in1, t);
    d.rank = detail::column_rank(span_n) - detail::column_rank(span_n1);

    std::vector<std::vector<unsigned>> here;
    for (const auto& e : report.basis)
      if (detail::internal_degree(weights, e) == t) here.push_back(e);
    d.monomials = here.size();
    if (here.empty() && d.rank == 0) continue;

    // Independence of the monomials modulo I^{n+1}, read through their splitting images.
    linalg::IntMatrix images(torus->monomials_of_degree(t).size(), 0);
    linalg::IntMatrix mons(model.dim(t), 0);
    for (const auto& e : here) {
      const PowerSeries p = model.generator_power(e);
      const PowerSeries img = splitting_map(p, torus);
      const auto rows = torus->monomials_of_degree(t);
      linalg::IntMatrix col(rows.size(), 1);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto c = img.coefficient(rows[i]);
        if (!c.is_constant()) throw DefectError("non-integer splitting image");
        col(i, 0) = c.constant_term();
      }
      images = linalg::IntMatrix::hconcat(images, col);
      linalg::IntMatrix mc(model.dim(t), 1);
      const auto v = model.coords(p, t);
      for (std::size_t i = 0; i < v.size(); ++i) mc(i, 0) = v[i];
      mons = linalg::IntMatrix::hconcat(mons, mc);
    }
    const std::size_t image_rank = detail::column_rank(images);
    const linalg::IntMatrix joint = linalg::IntMatrix::hconcat(mons, span_n1);
    d.independent = image_rank == here.size() &&
                    detail::column_rank(joint) == here.size() + detail::column_rank(span_n1);
    d.saturated = here.empty() || linalg::is_saturated(joint);
    report.rank += d.rank;
    report.degrees.push_back(d);
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// Regularity

struct RegularityDegree {
  int degree = 0;
  std::size_t quotient_rank = 0;  // rank of (A / prefix)_t
  bool injective = false;         // multiplication by the next generator, over Q
  bool torsion_free = false;      // (A / prefix)_t has no torsion
};

struct RegularityStep {
  IdealGenerator generator;
  int band = 0;  // verdicts cover internal degrees t <= band
  std::vector<RegularityDegree> degrees;
  bool passed() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const auto& d) { return d.injective && d.torsion_free; });
  }
};

struct QuotientCollapse {
  int k = 0;  // quotient of the U(m) model by c_m, ..., c_{k+1}
  std::vector<std::size_t> quotient_ranks;  // degrees 0, 2, ..., D
  std::vector<std::size_t> target_ranks;    // the U(k) model
  bool restriction_matches = false;         // res to U(k) sends c_j to c_j for j <= k, else 0
  bool passed() const { return restriction_matches && quotient_ranks == target_ranks; }
};

struct RegularityReport {
  GroupDescriptor group;
  int max_degree = 0;
  int guard_band = 0;  // D minus the largest generator weight
  std::vector<RegularityStep> steps;
  std::vector<std::size_t> final_quotient_ranks;
  std::vector<QuotientCollapse> collapses;
  std::string axiom = kAxiomDependency;
  bool passed() const {
    return std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.passed(); }) &&
           std::all_of(collapses.begin(), collapses.end(), [](const auto& c) { return c.passed(); });
  }
};

namespace detail {

inline std::vector<std::size_t> quotient_ranks(const CompletedModel& model,
                                               const std::vector<std::pair<PowerSeries, int>>& prefix) {
  std::vector<std::size_t> out;
  for (int t = 0; t <= model.max_degree(); t += 2)
    out.push_back(model.dim(t) - column_rank(model.ideal_span(prefix, t)));
  return out;
}

}  // namespace detail

/// Verifies that the Chern sequence is regular in the truncated model, degree by degree.
inline RegularityReport regularity_check(const GroupDescriptor& g, int max_degree = kDefaultMaxDegree) {
  detail::validate_bound(max_degree);
  CompletedModel model(g, max_degree);
  RegularityReport report;
  report.group = g;
  report.max_degree = max_degree;
  report.guard_band = max_degree - model.ideal().max_weight();

  std::vector<std::pair<PowerSeries, int>> prefix;
  for (std::size_t s = 0; s < model.ideal().generators.size(); ++s) {
    const IdealGenerator gen = model.ideal().generators[s];
    const int w = gen.weight();
    RegularityStep step;
    step.generator = gen;
    step.band = max_degree - w;
    for (int t = 0; t <= step.band; t += 2) {
      RegularityDegree d;
      d.degree = t;
      const linalg::IntMatrix j_t = model.ideal_span(prefix, t);
      const linalg::IntMatrix j_tw = model.ideal_span(prefix, t + w);
      const std::size_t rj_t = detail::column_rank(j_t);
      const std::size_t rj_tw = detail::column_rank(j_tw);
      d.quotient_rank = model.dim(t) - rj_t;
      const linalg::IntMatrix joint =
          linalg::IntMatrix::hconcat(j_tw, model.multiplication(model.generator(s), w, t));
      d.injective = detail::column_rank(joint) - rj_tw == d.quotient_rank;
      d.torsion_free = j_t.cols() == 0 || linalg::is_saturated(j_t);
      step.degrees.push_back(d);
    }
    report.steps.push_back(std::move(step));
    prefix.emplace_back(model.generator(s), w);
  }
  report.final_quotient_ranks = detail::quotient_ranks(model, prefix);

  if (g.size() == 1) {
    const int m = g.block(0);
    for (int k = m - 1; k >= 0; --k) {
      QuotientCollapse c;
      c.k = k;
      std::vector<std::pair<PowerSeries, int>> top;
      for (int j = m; j > k; --j) top.emplace_back(model.generator(static_cast<std::size_t>(m - j)), 2 * j);
      c.quotient_ranks = detail::quotient_ranks(model, top);
      const GroupDescriptor small = canonical_block({k}).group;
      AlgebraPtr target = SeriesAlgebra::chern(small.blocks(), max_degree);
      for (int t = 0; t <= max_degree; t += 2) c.target_ranks.push_back(target->monomials_of_degree(t).size());
      c.restriction_matches = true;
      const auto arrow = SubgroupArrow::upper_left(g, small);
      for (int j = 1; j <= m && 2 * j <= max_degree; ++j) {
        const ClassExpression r = normalize(ast::res(arrow, ast::chern(j, m)));
        const PowerSeries img = bundling_map(r, max_degree);
        const PowerSeries want = j <= k ? cf_generator(small.blocks(), 0, j, max_degree) : PowerSeries(target);
        c.restriction_matches = c.restriction_matches && img == want;
      }
      report.collapses.push_back(std::move(c));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// Koszul local homology

struct KoszulCell {
  unsigned s = 0;  // homological degree
  int t = 0;       // internal degree
  std::size_t rank = 0;
  bool torsion_free = true;
};

/// Koszul complex on the n-th powers of the Chern sequence.
struct KoszulPower {
  unsigned power = 1;
  std::vector<KoszulCell> cells;
};

struct KoszulReport {
  GroupDescriptor group;
  int max_degree = 0;
  int guard_band = 0;
  unsigned stable_power = 1;  // g^N lies above the guard band
  std::vector<KoszulPower> powers;
  std::vector<std::size_t> local_h0;   // H^I_0 ranks in degrees 0, 2, ..., guard band
  std::vector<std::size_t> monomials;  // ranks of the truncated algebra in the same degrees
  std::string axiom = kAxiomDependency;

  bool higher_vanish() const {
    for (const auto& p : powers)
      for (const auto& c : p.cells)
        if (c.s > 0 && (c.rank != 0 || !c.torsion_free)) return false;
    return true;
  }
  bool passed() const { return higher_vanish() && local_h0 == monomials; }
};

namespace detail {

// Differential K_s -> K_{s-1} in internal degree t; subsets are bit masks.
inline linalg::IntMatrix koszul_differential(const CompletedModel& model, const std::vector<PowerSeries>& gens,
                                             const std::vector<int>& weights, unsigned s, int t) {
  const std::size_t r = gens.size();
  auto weight_of = [&](unsigned mask) {
    int w = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1U) w += weights[i];
    return w;
  };
  std::vector<unsigned> src, dst;
  for (unsigned mask = 0; mask < (1U << r); ++mask) {
    const auto bits = static_cast<unsigned>(__builtin_popcount(mask));
    if (bits == s) src.push_back(mask);
    if (bits + 1 == s) dst.push_back(mask);
  }
  std::vector<std::size_t> row_offset, col_offset;
  std::size_t rows = 0, cols = 0;
  for (auto m : dst) {
    row_offset.push_back(rows);
    rows += model.dim(t - weight_of(m));
  }
  for (auto m : src) {
    col_offset.push_back(cols);
    cols += model.dim(t - weight_of(m));
  }
  linalg::IntMatrix d(rows, cols);
  for (std::size_t a = 0; a < src.size(); ++a) {
    const int src_deg = t - weight_of(src[a]);
    if (src_deg < 0) continue;
    int sign = 1;
    for (std::size_t i = 0; i < r; ++i) {
      if (!(src[a] >> i & 1U)) continue;
      const unsigned target = src[a] & ~(1U << i);
      const std::size_t b = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), target) - dst.begin());
      const linalg::IntMatrix m = model.multiplication(gens[i], weights[i], src_deg);
      for (std::size_t x = 0; x < m.rows(); ++x)
        for (std::size_t y = 0; y < m.cols(); ++y)
          if (m(x, y) != 0) d(row_offset[b] + x, col_offset[a] + y) = sign * m(x, y);
      sign = -sign;
    }
  }
  return d;
}

inline std::size_t koszul_dim(const CompletedModel& model, const std::vector<int>& weights, unsigned s, int t) {
  std::size_t n = 0;
  for (unsigned mask = 0; mask < (1U << weights.size()); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != s) continue;
    int w = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (mask >> i & 1U) w += weights[i];
    n += model.dim(t - w);
  }
  return n;
}

}  // namespace detail

/// Homology of the Koszul complexes on g^n (n = 1..N) within the guard band, and the local
/// homology H^I_0 read off at the stable power N.
inline KoszulReport koszul_local_homology(const GroupDescriptor& g, int max_degree = kDefaultMaxDegree) {
  detail::validate_bound(max_degree);
  CompletedModel model(g, max_degree);
  KoszulReport report;
  report.group = g;
  report.max_degree = max_degree;
  report.guard_band = max_degree - model.ideal().max_weight();
  const std::size_t r = model.ideal().generators.size();
  const int w_min = model.ideal().min_weight();
  report.stable_power = r == 0 ? 1U : static_cast<unsigned>(std::max(report.guard_band, 0) / w_min + 1);

  for (unsigned n = 1; n <= report.stable_power; ++n) {
    KoszulPower kp;
    kp.power = n;
    std::vector<PowerSeries> gens;
    std::vector<int> weights;
    for (std::size_t i = 0; i < r; ++i) {
      gens.push_back(model.generator(i).pow(n));
      weights.push_back(static_cast<int>(n) * model.ideal().generators[i].weight());
    }
    for (unsigned s = 0; s <= r; ++s)
      for (int t = 0; t <= report.guard_band; t += 2) {
        KoszulCell cell;
        cell.s = s;
        cell.t = t;
        const std::size_t dim = detail::koszul_dim(model, weights, s, t);
        std::size_t kernel = dim;
        if (s > 0 && dim > 0) kernel = dim - detail::column_rank(detail::koszul_differential(model, gens, weights, s, t));
        std::size_t image = 0;
        if (s < r && detail::koszul_dim(model, weights, s + 1, t) > 0) {
          const linalg::IntMatrix d = detail::koszul_differential(model, gens, weights, s + 1, t);
          image = detail::column_rank(d);
          cell.torsion_free = linalg::is_saturated(d);
        }
        cell.rank = kernel - image;
        kp.cells.push_back(cell);
      }
    report.powers.push_back(std::move(kp));
  }

  for (const auto& c : report.powers.back().cells)
    if (c.s == 0) report.local_h0.push_back(c.rank);
  for (int t = 0; t <= report.guard_band; t += 2) report.monomials.push_back(model.dim(t));
  return report;
}

}  // namespace chernbord
