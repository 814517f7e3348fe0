#pragma once

// Expression trees for the class calculus: the surface syntax produced by the parser, plus the
// internal node shapes (atoms, scalings) the rewrite engine introduces.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernbord/calculus.hpp"

namespace chernbord {

enum class NodeKind {
  Integer,    // non-negative integer literal, a scalar at the ambient group
  Generator,  // coefficient generator a_i
  Euler,      // e(k)
  Unit,       // 1(m)
  Opaque,     // t(m)
  Chern,      // c(k,m)
  Sum,        // n-ary; no children is zero
  Neg,
  Mul,  // internal product
  Ext,  // external product
  Power,
  Res,
  Tr,
  Atom,   // one transfer term in canonical form
  Scale,  // coefficient times a subexpression
};

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind = NodeKind::Integer;
  Integer integer;                 // Integer
  std::size_t generator = 0;       // Generator
  int k = 0;                       // Euler, Chern
  int m = 0;                       // Unit, Opaque, Chern
  unsigned exponent = 1;           // Power
  std::optional<GroupDescriptor> group;  // set by elaboration; Res/Tr always carry it
  GroupDescriptor inner_group;     // Res: the group the argument lives at; Tr: the subgroup H
  std::optional<SubgroupArrow> arrow;                   // Res
  std::optional<std::vector<std::size_t>> projection;  // Res written with `@i,...`
  TransferTerm term;               // Atom
  GradedCoefficient scale;         // Scale
  std::vector<Expr> children;
  SourceSpan span;
};

namespace ast {

inline Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

inline Expr integer(Integer v, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Integer;
  n.integer = std::move(v);
  n.span = s;
  return make(std::move(n));
}
inline Expr generator(std::size_t i, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Generator;
  n.generator = i;
  n.span = s;
  return make(std::move(n));
}
inline Expr euler(int k, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Euler;
  n.k = k;
  n.span = s;
  return make(std::move(n));
}
inline Expr unit(int m, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Unit;
  n.m = m;
  n.span = s;
  return make(std::move(n));
}
inline Expr opaque(int m, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Opaque;
  n.m = m;
  n.span = s;
  return make(std::move(n));
}
inline Expr chern(int k, int m, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Chern;
  n.k = k;
  n.m = m;
  n.span = s;
  return make(std::move(n));
}
inline Expr nary(NodeKind kind, std::vector<Expr> children, SourceSpan s = {}) {
  Node n;
  n.kind = kind;
  n.children = std::move(children);
  n.span = s;
  return make(std::move(n));
}
inline Expr sum(std::vector<Expr> children, SourceSpan s = {}) { return nary(NodeKind::Sum, std::move(children), s); }
inline Expr neg(Expr x, SourceSpan s = {}) { return nary(NodeKind::Neg, {std::move(x)}, s); }
inline Expr mul(Expr a, Expr b, SourceSpan s = {}) { return nary(NodeKind::Mul, {std::move(a), std::move(b)}, s); }
inline Expr ext(Expr a, Expr b, SourceSpan s = {}) { return nary(NodeKind::Ext, {std::move(a), std::move(b)}, s); }
inline Expr power(Expr x, unsigned e, SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Power;
  n.exponent = e;
  n.children = {std::move(x)};
  n.span = s;
  return make(std::move(n));
}
/// res along an arrow K -> G applied to a class at G.
inline Expr res(SubgroupArrow arrow, Expr x, std::optional<std::vector<std::size_t>> projection = std::nullopt,
                SourceSpan s = {}) {
  Node n;
  n.kind = NodeKind::Res;
  n.group = arrow.source();
  n.inner_group = arrow.target();
  n.arrow = std::move(arrow);
  n.projection = std::move(projection);
  n.children = {std::move(x)};
  n.span = s;
  return make(std::move(n));
}
/// tr_H^G applied to a class at H.
inline Expr tr(GroupDescriptor h, GroupDescriptor g, Expr x, SourceSpan s = {}) {
  if (!is_refinement(h, g))
    throw DimensionError(std::to_string(s.line) + ":" + std::to_string(s.column) + ": dimension mismatch: " +
                         h.to_string() + " is not a block subgroup of " + g.to_string());
  Node n;
  n.kind = NodeKind::Tr;
  n.group = std::move(g);
  n.inner_group = std::move(h);
  n.children = {std::move(x)};
  n.span = s;
  return make(std::move(n));
}
inline Expr atom(const GroupDescriptor& g, TransferTerm t) {
  Node n;
  n.kind = NodeKind::Atom;
  n.group = g;
  t.word = canonical(std::move(t.word));
  n.term = std::move(t);
  return make(std::move(n));
}
inline Expr zero(const GroupDescriptor& g) {
  Node n;
  n.kind = NodeKind::Sum;
  n.group = g;
  return make(std::move(n));
}
inline Expr scale(GradedCoefficient c, Expr x) {
  Node n;
  n.kind = NodeKind::Scale;
  n.group = x->group;
  n.scale = std::move(c);
  n.children = {std::move(x)};
  return make(std::move(n));
}

/// Copy of a node with new children.
inline Expr with_children(const Expr& e, std::vector<Expr> children) {
  Node n = *e;
  n.children = std::move(children);
  return make(std::move(n));
}

/// The canonical form as a sum of atoms.
inline Expr from_class(const ClassExpression& x) {
  std::vector<Expr> atoms;
  for (const auto& t : x.term_list()) atoms.push_back(atom(x.group(), t));
  if (atoms.size() == 1) return atoms.front();
  Node n;
  n.kind = NodeKind::Sum;
  n.group = x.group();
  n.children = std::move(atoms);
  return make(std::move(n));
}

/// Structural equality, ignoring source positions.
inline bool same_tree(const Expr& a, const Expr& b) {
  if (a->kind != b->kind || a->children.size() != b->children.size()) return false;
  switch (a->kind) {
    case NodeKind::Integer:
      if (a->integer != b->integer) return false;
      break;
    case NodeKind::Generator:
      if (a->generator != b->generator) return false;
      break;
    case NodeKind::Euler:
    case NodeKind::Unit:
    case NodeKind::Opaque:
    case NodeKind::Chern:
      if (a->k != b->k || a->m != b->m) return false;
      break;
    case NodeKind::Power:
      if (a->exponent != b->exponent) return false;
      break;
    case NodeKind::Res:
      if (!(a->arrow == b->arrow) || a->projection != b->projection) return false;
      break;
    case NodeKind::Tr:
      if (!(a->group == b->group) || !(a->inner_group == b->inner_group)) return false;
      break;
    case NodeKind::Atom:
      if (!(a->group == b->group) || a->term.coeff != b->term.coeff || a->term.word != b->term.word) return false;
      break;
    case NodeKind::Scale:
      if (a->scale != b->scale) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!same_tree(a->children[i], b->children[i])) return false;
  return true;
}

inline std::size_t tree_size(const Expr& e) {
  std::size_t n = 1;
  for (const auto& c : e->children) n += tree_size(c);
  return n;
}

}  // namespace ast

// ---------------------------------------------------------------------------------------------
// Arrows written as res[G,K] in the surface syntax

/// The arrow named by `res[G,K]`: a block refinement when K refines G, otherwise the upper-left
/// embedding (e.g. U(m-1) in U(m), or the trivial group).
inline SubgroupArrow infer_arrow(const GroupDescriptor& ambient, const GroupDescriptor& sub) {
  if (is_refinement(sub, ambient)) return SubgroupArrow::refinement(ambient, sub);
  return SubgroupArrow::upper_left(ambient, sub);
}

// ---------------------------------------------------------------------------------------------
// Elaboration: attach a group to every node, checking block structure

namespace detail {

inline std::string at(const SourceSpan& s) { return std::to_string(s.line) + ":" + std::to_string(s.column) + ": "; }

inline std::optional<GroupDescriptor> infer_group(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Integer:
    case NodeKind::Generator:
      return e->group;
    case NodeKind::Euler:
      return GroupDescriptor::unitary(e->k);
    case NodeKind::Unit:
    case NodeKind::Opaque:
    case NodeKind::Chern:
      return GroupDescriptor::unitary(e->m);
    case NodeKind::Res:
    case NodeKind::Tr:
    case NodeKind::Atom:
      return e->group;
    case NodeKind::Ext: {
      GroupDescriptor g;
      for (const auto& c : e->children) g = g * infer_group(c).value_or(GroupDescriptor{});
      return g;
    }
    default: {
      if (e->group) return e->group;
      std::optional<GroupDescriptor> found;
      for (const auto& c : e->children) {
        auto g = infer_group(c);
        if (!g) continue;
        if (found && !(*found == *g))
          throw DimensionError(at(c->span) + "dimension mismatch: classes at " + found->to_string() + " and " +
                               g->to_string() + " combined");
        found = g;
      }
      return found;
    }
  }
}

}  // namespace detail

/// Types an expression; polymorphic scalars take the group of their context, or `expected`,
/// or the trivial group.
inline Expr elaborate(const Expr& e, const std::optional<GroupDescriptor>& expected = std::nullopt) {
  auto inferred = detail::infer_group(e);
  const GroupDescriptor g = inferred ? *inferred : expected.value_or(GroupDescriptor{});
  if (expected && !(*expected == g))
    throw DimensionError(detail::at(e->span) + "dimension mismatch: expected a class at " + expected->to_string() +
                         ", found one at " + g.to_string());

  switch (e->kind) {
    case NodeKind::Euler:
      if (e->k < 1) throw RangeError(detail::at(e->span) + "e(k) needs k >= 1");
      break;
    case NodeKind::Unit:
    case NodeKind::Opaque:
      if (e->m < 1) throw RangeError(detail::at(e->span) + "block size must be at least 1");
      break;
    case NodeKind::Chern:
      if (e->m < 1 || e->k < 0) throw RangeError(detail::at(e->span) + "c(k,m) needs k >= 0 and m >= 1");
      break;
    default:
      break;
  }

  Node n = *e;
  n.group = g;
  n.children.clear();
  switch (e->kind) {
    case NodeKind::Ext:
      for (const auto& c : e->children) n.children.push_back(elaborate(c, detail::infer_group(c).value_or(GroupDescriptor{})));
      break;
    case NodeKind::Res:
      n.children.push_back(elaborate(e->children.at(0), e->inner_group));
      break;
    case NodeKind::Tr:
      n.children.push_back(elaborate(e->children.at(0), e->inner_group));
      break;
    default:
      for (const auto& c : e->children) n.children.push_back(elaborate(c, g));
  }
  return ast::make(std::move(n));
}

// ---------------------------------------------------------------------------------------------
// Printing in the surface syntax

namespace detail {

inline std::string print_node(const Expr& e);

inline std::string wrap(const std::string& s) { return "(" + s + ")"; }

// Children of products and powers need parentheses unless they are primaries.
inline bool is_primary(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Sum:
    case NodeKind::Neg:
    case NodeKind::Mul:
    case NodeKind::Ext:
    case NodeKind::Atom:
    case NodeKind::Scale:
      return false;
    case NodeKind::Power:
      return false;
    default:
      return true;
  }
}

inline std::string print_operand(const Expr& e, NodeKind parent, bool right) {
  const std::string s = print_node(e);
  if (is_primary(e)) return s;
  if (e->kind == NodeKind::Power) return parent == NodeKind::Power ? wrap(s) : s;
  if (e->kind == parent && !right) return s;  // left-associative chains
  return wrap(s);
}

inline std::string print_node(const Expr& e) {
  switch (e->kind) {
    case NodeKind::Integer:
      return e->integer.str();
    case NodeKind::Generator:
      return "a" + std::to_string(e->generator);
    case NodeKind::Euler:
      return "e(" + std::to_string(e->k) + ")";
    case NodeKind::Unit:
      return "1(" + std::to_string(e->m) + ")";
    case NodeKind::Opaque:
      return "t(" + std::to_string(e->m) + ")";
    case NodeKind::Chern:
      return "c(" + std::to_string(e->k) + "," + std::to_string(e->m) + ")";
    case NodeKind::Sum: {
      if (e->children.empty()) return "0";
      std::string out;
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        const auto& c = e->children[i];
        if (c->kind == NodeKind::Neg) {
          const auto& inner = c->children.at(0);
          std::string s = print_node(inner);
          if (inner->kind == NodeKind::Sum || inner->kind == NodeKind::Neg) s = wrap(s);
          out += (i ? " - " : "-") + s;
        } else {
          std::string s = print_node(c);
          if (c->kind == NodeKind::Sum) s = wrap(s);
          out += (i ? " + " : "") + s;
        }
      }
      return out;
    }
    case NodeKind::Neg: {
      const auto& inner = e->children.at(0);
      std::string s = print_node(inner);
      if (inner->kind == NodeKind::Sum || inner->kind == NodeKind::Neg) s = wrap(s);
      return "-" + s;
    }
    case NodeKind::Mul:
      return print_operand(e->children.at(0), NodeKind::Mul, false) + "*" +
             print_operand(e->children.at(1), NodeKind::Mul, true);
    case NodeKind::Ext:
      return print_operand(e->children.at(0), NodeKind::Ext, false) + " x " +
             print_operand(e->children.at(1), NodeKind::Ext, true);
    case NodeKind::Power:
      return print_operand(e->children.at(0), NodeKind::Power, false) + "^" + std::to_string(e->exponent);
    case NodeKind::Res: {
      std::string target = e->group->to_string();
      if (e->projection) {
        target += "@";
        for (std::size_t i = 0; i < e->projection->size(); ++i)
          target += (i ? "," : "") + std::to_string((*e->projection)[i] + 1);
      } else if (!(infer_arrow(e->inner_group, *e->group) == *e->arrow)) {
        throw Error("restriction along " + e->arrow->describe() + " has no surface syntax");
      }
      return "res[" + e->inner_group.to_string() + "," + target + "](" + print_node(e->children.at(0)) + ")";
    }
    case NodeKind::Tr:
      return "tr[" + e->inner_group.to_string() + "," + e->group->to_string() + "](" +
             print_node(e->children.at(0)) + ")";
    case NodeKind::Atom: {
      ClassExpression x(*e->group);
      x.add(e->term);
      return x.to_string();
    }
    case NodeKind::Scale:
      return wrap(e->scale.to_string()) + "*" + wrap(print_node(e->children.at(0)));
  }
  return "?";
}

}  // namespace detail

/// Surface-syntax text of an expression; parse(print(x)) reproduces x for parser-built trees.
inline std::string print(const Expr& e) { return detail::print_node(e); }

}  // namespace chernbord
