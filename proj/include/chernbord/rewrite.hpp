#pragma once

// One-step rewriting of elaborated expression trees down to sums of canonical transfer terms.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernbord/expr.hpp"

namespace chernbord {

enum class Strategy { LeftmostInnermost, LeftmostOutermost };

inline constexpr std::size_t kDefaultStepBound = 10000;

struct NormalizeOptions {
  Strategy strategy = Strategy::LeftmostInnermost;
  std::size_t step_bound = kDefaultStepBound;
};

struct NormalizeResult {
  ClassExpression value;
  std::size_t steps = 0;
};

namespace rewrite {

inline const GroupDescriptor& group_of(const Expr& e) {
  if (!e->group) throw DefectError("rewriting an expression that was not elaborated");
  return *e->group;
}

inline Expr sum_at(const GroupDescriptor& g, std::vector<Expr> xs) {
  Node n;
  n.kind = NodeKind::Sum;
  n.group = g;
  n.children = std::move(xs);
  return ast::make(std::move(n));
}

inline Expr binary_at(NodeKind kind, const GroupDescriptor& g, Expr a, Expr b) {
  Node n;
  n.kind = kind;
  n.group = g;
  n.children = {std::move(a), std::move(b)};
  return ast::make(std::move(n));
}

inline Expr power_at(const GroupDescriptor& g, Expr x, unsigned e) {
  Node n;
  n.kind = NodeKind::Power;
  n.group = g;
  n.exponent = e;
  n.children = {std::move(x)};
  return ast::make(std::move(n));
}

inline Expr atom_or_zero(const GroupDescriptor& g, TransferTerm t) {
  if (t.coeff.is_zero()) return ast::zero(g);
  return ast::atom(g, std::move(t));
}

inline Expr atoms_at(const GroupDescriptor& g, const std::vector<TransferTerm>& terms) {
  std::vector<Expr> xs;
  for (const auto& t : terms)
    if (!t.coeff.is_zero()) xs.push_back(ast::atom(g, t));
  if (xs.size() == 1) return xs.front();
  return sum_at(g, std::move(xs));
}

inline bool is_sum(const Expr& e) { return e->kind == NodeKind::Sum; }
inline bool is_atom(const Expr& e) { return e->kind == NodeKind::Atom; }
inline bool is_scale(const Expr& e) { return e->kind == NodeKind::Scale; }

// Distributes a unary operator over a sum child: op(a + b) -> op(a) + op(b).
template <class Rebuild>
Expr distribute(const Expr& e, const Expr& s, Rebuild rebuild) {
  std::vector<Expr> xs;
  for (const auto& c : s->children) xs.push_back(rebuild(c));
  return sum_at(group_of(e), std::move(xs));
}

inline std::optional<Expr> rewrite_sum(const Expr& e) {
  const auto& g = group_of(e);
  const auto& cs = e->children;
  if (cs.size() == 1) return cs.front();
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (is_sum(cs[i])) {
      std::vector<Expr> xs(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(i));
      xs.insert(xs.end(), cs[i]->children.begin(), cs[i]->children.end());
      xs.insert(xs.end(), cs.begin() + static_cast<std::ptrdiff_t>(i) + 1, cs.end());
      return sum_at(g, std::move(xs));
    }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!is_atom(cs[i])) continue;
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (!is_atom(cs[j]) || cs[i]->term.word != cs[j]->term.word) continue;
      std::vector<Expr> xs;
      for (std::size_t n = 0; n < cs.size(); ++n) {
        if (n == j) continue;
        if (n != i) {
          xs.push_back(cs[n]);
          continue;
        }
        TransferTerm t{cs[i]->term.coeff + cs[j]->term.coeff, cs[i]->term.word};
        if (!t.coeff.is_zero()) xs.push_back(ast::atom(g, std::move(t)));
      }
      return sum_at(g, std::move(xs));
    }
  }
  return std::nullopt;
}

inline std::optional<Expr> rewrite_mul(const Expr& e) {
  const auto& g = group_of(e);
  const Expr& a = e->children.at(0);
  const Expr& b = e->children.at(1);
  if (is_sum(a)) return distribute(e, a, [&](const Expr& c) { return binary_at(NodeKind::Mul, g, c, b); });
  if (is_sum(b)) return distribute(e, b, [&](const Expr& c) { return binary_at(NodeKind::Mul, g, a, c); });
  if (is_scale(a)) return ast::scale(a->scale, binary_at(NodeKind::Mul, g, a->children.at(0), b));
  if (is_scale(b)) return ast::scale(b->scale, binary_at(NodeKind::Mul, g, a, b->children.at(0)));
  if (!is_atom(a) || !is_atom(b)) return std::nullopt;
  if (a->term.plain() && b->term.plain()) return atom_or_zero(g, plain_product(a->term, b->term));
  // Reciprocity: tr_H(w) * y = tr_H(w * res_H(y)).
  const Expr& outer = a->term.plain() ? b : a;
  const Expr& inner = a->term.plain() ? a : b;
  const GroupDescriptor h = outer->term.subgroup();
  Expr w = ast::atom(h, {outer->term.coeff, plain_at_subgroup(outer->term.word)});
  Expr r = ast::res(SubgroupArrow::refinement(g, h), inner);
  return ast::tr(h, g, binary_at(NodeKind::Mul, h, std::move(w), std::move(r)));
}

inline std::optional<Expr> rewrite_ext(const Expr& e) {
  const auto& g = group_of(e);
  const Expr& a = e->children.at(0);
  const Expr& b = e->children.at(1);
  if (is_sum(a)) return distribute(e, a, [&](const Expr& c) { return binary_at(NodeKind::Ext, g, c, b); });
  if (is_sum(b)) return distribute(e, b, [&](const Expr& c) { return binary_at(NodeKind::Ext, g, a, c); });
  if (is_scale(a)) return ast::scale(a->scale, binary_at(NodeKind::Ext, g, a->children.at(0), b));
  if (is_scale(b)) return ast::scale(b->scale, binary_at(NodeKind::Ext, g, a, b->children.at(0)));
  if (!is_atom(a) || !is_atom(b)) return std::nullopt;
  Word w = a->term.word;
  w.insert(w.end(), b->term.word.begin(), b->term.word.end());
  return atom_or_zero(g, {a->term.coeff * b->term.coeff, std::move(w)});
}

inline std::optional<Expr> rewrite_res(const Expr& e) {
  const auto& arrow = *e->arrow;
  const Expr& x = e->children.at(0);
  if (arrow.kind() == SubgroupArrow::Kind::Identity) return x;
  if (is_sum(x)) return distribute(e, x, [&](const Expr& c) { return ast::res(arrow, c); });
  if (is_scale(x)) return ast::scale(x->scale, ast::res(arrow, x->children.at(0)));
  if (x->kind == NodeKind::Res) return ast::res(x->arrow->after(arrow), x->children.at(0));
  if (x->kind == NodeKind::Mul)
    return binary_at(NodeKind::Mul, group_of(e), ast::res(arrow, x->children.at(0)),
                     ast::res(arrow, x->children.at(1)));
  if (is_atom(x)) return atoms_at(group_of(e), restrict_term(x->term, arrow));
  return std::nullopt;
}

inline std::optional<Expr> rewrite_tr(const Expr& e) {
  const auto& g = group_of(e);
  const auto& h = e->inner_group;
  const Expr& x = e->children.at(0);
  if (h == g) return x;
  if (is_sum(x)) return distribute(e, x, [&](const Expr& c) { return ast::tr(h, g, c); });
  if (is_scale(x)) return ast::scale(x->scale, ast::tr(h, g, x->children.at(0)));
  if (x->kind == NodeKind::Tr) return ast::tr(x->inner_group, g, x->children.at(0));
  if (is_atom(x)) return atom_or_zero(g, {x->term.coeff, regroup(x->term.word, h, g)});
  return std::nullopt;
}

inline std::optional<Expr> rewrite_scale(const Expr& e) {
  const Expr& x = e->children.at(0);
  if (e->scale.is_one()) return x;
  if (e->scale.is_zero()) return ast::zero(group_of(e));
  if (is_sum(x)) return distribute(e, x, [&](const Expr& c) { return ast::scale(e->scale, c); });
  if (is_scale(x)) return ast::scale(e->scale * x->scale, x->children.at(0));
  if (is_atom(x)) return atom_or_zero(group_of(e), {e->scale * x->term.coeff, x->term.word});
  return std::nullopt;
}

inline std::optional<Expr> rewrite_chern(const Expr& e) {
  const int k = e->k, m = e->m;
  const GroupDescriptor g = GroupDescriptor::unitary(m);
  if (k == 0) return ast::atom(g, {1, unit_word(g)});
  if (k > m) return ast::zero(g);
  if (k == m) return ast::atom(g, {1, {{Factor{m, 1, 0}}}});
  const GroupDescriptor h({k, m - k});
  Node inner;
  inner.kind = NodeKind::Ext;
  inner.group = h;
  inner.children = {ast::atom(GroupDescriptor::unitary(k), {1, {{Factor{k, 1, 0}}}}),
                    ast::atom(GroupDescriptor::unitary(m - k), {1, unit_word(GroupDescriptor::unitary(m - k))})};
  return ast::tr(h, g, ast::make(std::move(inner)));
}

/// One rule application at the root, if the root is a redex.
inline std::optional<Expr> rewrite_root(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Integer:
      return atom_or_zero(group_of(e), {GradedCoefficient(e->integer), unit_word(group_of(e))});
    case NodeKind::Generator:
      return ast::atom(group_of(e), {GradedCoefficient::generator(e->generator), unit_word(group_of(e))});
    case NodeKind::Euler:
      return ast::atom(group_of(e), {1, {{Factor{e->k, 1, 0}}}});
    case NodeKind::Unit:
      return ast::atom(group_of(e), {1, unit_word(group_of(e))});
    case NodeKind::Opaque:
      return ast::atom(group_of(e), {1, {{Factor{e->m, 0, 1}}}});
    case NodeKind::Chern:
      return rewrite_chern(e);
    case NodeKind::Neg:
      return ast::scale(GradedCoefficient(-1), e->children.at(0));
    case NodeKind::Power:
      if (e->exponent == 0) return ast::atom(group_of(e), {1, unit_word(group_of(e))});
      if (e->exponent == 1) return e->children.at(0);
      return binary_at(NodeKind::Mul, group_of(e), e->children.at(0),
                       power_at(group_of(e), e->children.at(0), e->exponent - 1));
    case NodeKind::Sum:
      return rewrite_sum(e);
    case NodeKind::Mul:
      return rewrite_mul(e);
    case NodeKind::Ext:
      return rewrite_ext(e);
    case NodeKind::Res:
      return rewrite_res(e);
    case NodeKind::Tr:
      return rewrite_tr(e);
    case NodeKind::Scale:
      return rewrite_scale(e);
    case NodeKind::Atom:
      return std::nullopt;
  }
  return std::nullopt;
}

/// One step of the chosen strategy; nullopt when the tree is irreducible.
inline std::optional<Expr> step(const Expr& e, Strategy strategy) {
  if (strategy == Strategy::LeftmostOutermost)
    if (auto r = rewrite_root(e)) return r;
  for (std::size_t i = 0; i < e->children.size(); ++i)
    if (auto r = step(e->children[i], strategy)) {
      auto cs = e->children;
      cs[i] = std::move(*r);
      return ast::with_children(e, std::move(cs));
    }
  if (strategy == Strategy::LeftmostInnermost) return rewrite_root(e);
  return std::nullopt;
}

inline ClassExpression collect(const Expr& e) {
  ClassExpression out(group_of(e));
  if (is_atom(e)) {
    out.add(e->term);
    return out;
  }
  if (!is_sum(e)) throw DefectError("rewriting stopped at a non-normal node");
  for (const auto& c : e->children) {
    if (!is_atom(c)) throw DefectError("rewriting stopped at a non-normal summand");
    out.add(c->term);
  }
  return out;
}

}  // namespace rewrite

/// Rewrites an expression (elaborated on the fly if needed) to its canonical form.
inline NormalizeResult normalize_traced(const Expr& input, const NormalizeOptions& options = {}) {
  Expr e = elaborate(input);
  std::size_t steps = 0;
  while (auto next = rewrite::step(e, options.strategy)) {
    if (++steps > options.step_bound)
      throw RewriteBoundExceeded("rewrite bound of " + std::to_string(options.step_bound) + " steps exceeded");
    e = std::move(*next);
  }
  return {rewrite::collect(e), steps};
}

inline ClassExpression normalize(const Expr& input, const NormalizeOptions& options = {}) {
  return normalize_traced(input, options).value;
}

/// Normalizing a canonical form is the identity; exposed for idempotence checks.
inline ClassExpression normalize(const ClassExpression& x, const NormalizeOptions& options = {}) {
  return normalize(ast::from_class(x), options);
}

}  // namespace chernbord
