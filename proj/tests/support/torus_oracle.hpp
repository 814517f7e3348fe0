#pragma once

// Evaluates an expression tree directly at the maximal torus, without the rewrite engine or
// ClassExpression. Polynomials are maps from exponent vectors (global coordinates, blocks
// concatenated) to coefficients; no truncation is applied.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "chernbord/chernbord.hpp"

namespace oracle {

using chernbord::Expr;
using chernbord::GradedCoefficient;
using chernbord::GroupDescriptor;
using chernbord::NodeKind;

using Exps = std::vector<unsigned>;
using Poly = std::map<Exps, GradedCoefficient>;

inline void add_to(Poly& p, const Exps& e, const GradedCoefficient& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

inline Poly constant(std::size_t n, const GradedCoefficient& c) {
  Poly p;
  add_to(p, Exps(n, 0), c);
  return p;
}

inline Poly add(const Poly& a, const Poly& b, int sign = 1) {
  Poly out = a;
  for (const auto& [e, c] : b) add_to(out, e, sign > 0 ? c : -c);
  return out;
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_to(out, e, ca * cb);
    }
  return out;
}

/// Substitution x_i -> x_{map[i]} in an n-variable target, or 0 when map[i] is empty.
inline Poly substitute(const Poly& p, const std::vector<std::optional<std::size_t>>& map, std::size_t n) {
  Poly out;
  for (const auto& [e, c] : p) {
    Exps t(n, 0);
    bool killed = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!map[i]) {
        killed = true;
        break;
      }
      t[*map[i]] += e[i];
    }
    if (!killed) add_to(out, t, c);
  }
  return out;
}

inline std::vector<std::size_t> offsets(const GroupDescriptor& g) {
  std::vector<std::size_t> out{0};
  for (int b : g.blocks()) out.push_back(out.back() + static_cast<std::size_t>(b));
  return out;
}

/// Elementary symmetric polynomial e_k in coordinates [from, from + m) of an n-variable ring.
inline Poly elementary(std::size_t n, std::size_t from, int m, int k) {
  Poly out;
  if (k < 0 || k > m) return out;
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    Exps e(n, 0);
    for (int i = 0; i < m; ++i)
      if (pick[static_cast<std::size_t>(i)]) e[from + static_cast<std::size_t>(i)] = 1;
    add_to(out, e, 1);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// All ways to deal the coordinates of one block into ordered pieces of the given sizes.
inline void deal(std::vector<std::size_t> pool, const std::vector<int>& sizes, std::size_t piece,
                 std::vector<std::size_t>& chosen, const std::function<void()>& emit) {
  if (piece == sizes.size()) {
    emit();
    return;
  }
  const std::size_t k = static_cast<std::size_t>(sizes[piece]);
  std::vector<bool> pick(pool.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> rest;
    const std::size_t mark = chosen.size();
    for (std::size_t i = 0; i < pool.size(); ++i) (pick[i] ? chosen.push_back(pool[i]) : rest.push_back(pool[i]));
    deal(rest, sizes, piece + 1, chosen, emit);
    chosen.resize(mark);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

class TorusOracle {
 public:
  Poly eval(const Expr& e, const GroupDescriptor& g) const {
    const std::size_t n = static_cast<std::size_t>(g.dimension());
    switch (e->kind) {
      case NodeKind::Integer:
        return constant(n, GradedCoefficient(e->integer));
      case NodeKind::Generator:
        return constant(n, GradedCoefficient::generator(e->generator));
      case NodeKind::Euler: {
        Exps x(n, 1);
        return Poly{{x, GradedCoefficient(1)}};
      }
      case NodeKind::Unit:
      case NodeKind::Opaque:
        return constant(n, 1);
      case NodeKind::Chern:
        return elementary(n, 0, e->m, e->k);
      case NodeKind::Sum: {
        Poly out;
        for (const auto& c : e->children) out = add(out, eval(c, g));
        return out;
      }
      case NodeKind::Neg:
        return add(Poly{}, eval(e->children[0], g), -1);
      case NodeKind::Mul:
        return mul(eval(e->children[0], g), eval(e->children[1], g));
      case NodeKind::Power: {
        Poly base = eval(e->children[0], g), out = constant(n, 1);
        for (unsigned i = 0; i < e->exponent; ++i) out = mul(out, base);
        return out;
      }
      case NodeKind::Ext: {
        Poly out = constant(n, 1);
        std::size_t shift = 0;
        for (const auto& c : e->children) {
          const GroupDescriptor cg = chernbord::detail::infer_group(c).value_or(GroupDescriptor{});
          const std::size_t cn = static_cast<std::size_t>(cg.dimension());
          std::vector<std::optional<std::size_t>> map;
          for (std::size_t i = 0; i < cn; ++i) map.emplace_back(shift + i);
          out = mul(out, substitute(eval(c, cg), map, n));
          shift += cn;
        }
        return out;
      }
      case NodeKind::Res:
        return restrict(eval(e->children[0], e->inner_group), *e->arrow, n);
      case NodeKind::Tr:
        return transfer(eval(e->children[0], e->inner_group), e->inner_group, g);
      default:
        throw std::logic_error("torus oracle: unsupported node");
    }
  }

 private:
  // Along K -> G: each part of a G-block copies a K-block's coordinates or is trivial.
  static Poly restrict(const Poly& p, const chernbord::SubgroupArrow& arrow, std::size_t n) {
    const auto src = offsets(arrow.source());
    std::vector<std::optional<std::size_t>> map;
    for (const auto& block : arrow.parts())
      for (const auto& part : block)
        for (int i = 0; i < part.size; ++i)
          map.push_back(part.source_block ? std::optional<std::size_t>(src[*part.source_block] + i) : std::nullopt);
    return substitute(p, map, n);
  }

  // Sum over the cosets of the Weyl group of H in that of G.
  static Poly transfer(const Poly& p, const GroupDescriptor& h, const GroupDescriptor& g) {
    const std::size_t n = static_cast<std::size_t>(g.dimension());
    const auto counts = chernbord::refinement_counts(h, g);
    Poly out;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, std::size_t, std::size_t)> blocks = [&](std::size_t b, std::size_t hb,
                                                                            std::size_t start) {
      if (b == g.size()) {
        std::vector<std::optional<std::size_t>> map(chosen.begin(), chosen.end());
        out = add(out, substitute(p, map, n));
        return;
      }
      std::vector<int> sizes(h.blocks().begin() + static_cast<long>(hb),
                             h.blocks().begin() + static_cast<long>(hb + counts[b]));
      std::vector<std::size_t> pool(static_cast<std::size_t>(g.block(b)));
      std::iota(pool.begin(), pool.end(), start);
      deal(pool, sizes, 0, chosen,
           [&] { blocks(b + 1, hb + counts[b], start + static_cast<std::size_t>(g.block(b))); });
    };
    blocks(0, 0, 0);
    return out;
  }
};

/// Largest variable degree 2 * |e| among the terms, at least 2.
inline int max_degree(const Poly& p) {
  int d = 2;
  for (const auto& [e, c] : p) d = std::max(d, 2 * static_cast<int>(std::accumulate(e.begin(), e.end(), 0U)));
  return d;
}

inline chernbord::PowerSeries to_series(const Poly& p, const GroupDescriptor& g, int max_degree) {
  chernbord::PowerSeries s(chernbord::SeriesAlgebra::torus(g.blocks(), max_degree));
  for (const auto& [e, c] : p) s.add_term(e, c);
  return s;
}

}  // namespace oracle
