#pragma once

// Seeded random class expressions over small unitary groups, for property checks.

#include <cstdint>
#include <random>
#include <vector>

#include "chernbord/expr.hpp"

namespace chernbord {

inline const std::vector<GroupDescriptor>& corpus_groups() {
  static const std::vector<GroupDescriptor> groups{GroupDescriptor({1}), GroupDescriptor({2}), GroupDescriptor({1, 1}),
                                                   GroupDescriptor({3}), GroupDescriptor({2, 1})};
  return groups;
}

class ExpressionGenerator {
 public:
  explicit ExpressionGenerator(std::uint64_t seed = 20240601, std::size_t coeff_gens = kDefaultCoeffGenerators)
      : rng_(seed), coeff_gens_(coeff_gens) {}

  /// A random expression whose type is the given group.
  Expr at(const GroupDescriptor& g, int depth) {
    for (;;) {
      Expr e = node(g, depth);
      const auto inferred = detail::infer_group(e);
      if (inferred && *inferred == g) return e;
    }
  }

  /// One expression at a randomly chosen corpus group.
  Expr next(int max_depth = 3) {
    const auto& groups = corpus_groups();
    return at(groups[pick(groups.size())], static_cast<int>(pick(static_cast<std::size_t>(max_depth) + 1)));
  }

  std::vector<Expr> corpus(std::size_t n, int max_depth = 3) {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(next(max_depth));
    return out;
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  // Scalars are only drawn where the context fixes their group.
  Expr leaf(const GroupDescriptor& g, bool allow_scalar = true) {
    if (g.size() != 1) {
      std::vector<int> left(g.blocks().begin(), g.blocks().end() - 1);
      return ast::ext(leaf(GroupDescriptor(left), false), leaf(GroupDescriptor::unitary(g.blocks().back()), false));
    }
    const int m = g.block(0);
    switch (pick(allow_scalar ? 8 : 5)) {
      case 0:
      case 1:
        return ast::chern(static_cast<int>(pick(static_cast<std::size_t>(m) + 2)), m);
      case 2:
        return ast::euler(m);
      case 3:
        return ast::unit(m);
      case 4:
        return ast::opaque(m);
      case 5:
        return ast::integer(static_cast<long>(pick(4)));
      case 6:
        return ast::generator(1 + pick(coeff_gens_));
      default:
        return ast::chern(1, m);
    }
  }

  Expr node(const GroupDescriptor& g, int depth) {
    if (depth <= 0) return leaf(g);
    switch (pick(10)) {
      case 0:
      case 1:
        return ast::sum({node(g, depth - 1), node(g, depth - 1)});
      case 2:
        return ast::sum({node(g, depth - 1), ast::neg(node(g, depth - 1))});
      case 3:
        return ast::neg(node(g, depth - 1));
      case 4:
      case 5:
        return ast::mul(node(g, depth - 1), node(g, depth - 1));
      case 6:
        if (g.size() > 1) {
          std::vector<int> left(g.blocks().begin(), g.blocks().end() - 1);
          return ast::ext(at(GroupDescriptor(left), depth - 1), at(GroupDescriptor::unitary(g.blocks().back()), depth - 1));
        }
        return ast::power(node(g, depth - 1), 2);
      case 7:
        return restriction_into(g, depth);
      case 8:
        return transfer_into(g, depth);
      default:
        return leaf(g);
    }
  }

  // res[G,g](x) from a coarser or larger group G.
  Expr restriction_into(const GroupDescriptor& g, int depth) {
    GroupDescriptor ambient;
    if (g.size() > 1)
      ambient = GroupDescriptor::unitary(g.dimension());
    else if (g.block(0) < 3)
      ambient = GroupDescriptor::unitary(g.block(0) + 1);
    else
      return leaf(g);
    return ast::res(infer_arrow(ambient, g), node(ambient, depth - 1));
  }

  // tr[H,g](x) from a proper block refinement H.
  Expr transfer_into(const GroupDescriptor& g, int depth) {
    std::vector<int> blocks;
    bool split = false;
    for (int b : g.blocks()) {
      if (b > 1 && !split) {
        const int first = 1 + static_cast<int>(pick(static_cast<std::size_t>(b - 1)));
        blocks.push_back(first);
        blocks.push_back(b - first);
        split = true;
      } else {
        blocks.push_back(b);
      }
    }
    if (!split) return leaf(g);
    const GroupDescriptor h(blocks);
    return ast::tr(h, g, node(h, depth - 1));
  }

  std::mt19937_64 rng_;
  std::size_t coeff_gens_;
};

}  // namespace chernbord
