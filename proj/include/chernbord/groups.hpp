#pragma once

// Products of unitary groups U(m_1,...,m_l), the homomorphisms between them that the
// calculus supports, and the shuffle permutations of the block double coset formula.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chernbord/error.hpp"

namespace chernbord {

/// U(m_1,...,m_l); the empty tuple is the trivial group, (1,...,1) a torus.
class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  explicit GroupDescriptor(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    for (int b : blocks_)
      if (b < 1) throw DimensionError("group blocks must be positive; use canonical_block to drop zeros");
  }

  static GroupDescriptor trivial() { return {}; }
  static GroupDescriptor unitary(int m) { return GroupDescriptor({m}); }
  static GroupDescriptor torus(int m) { return GroupDescriptor(std::vector<int>(static_cast<std::size_t>(m), 1)); }

  const std::vector<int>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  int block(std::size_t i) const { return blocks_.at(i); }
  int dimension() const { return std::accumulate(blocks_.begin(), blocks_.end(), 0); }
  bool is_trivial() const { return blocks_.empty(); }
  bool is_torus() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](int b) { return b == 1; });
  }

  /// G x K: blocks concatenated.
  GroupDescriptor operator*(const GroupDescriptor& other) const {
    std::vector<int> b = blocks_;
    b.insert(b.end(), other.blocks_.begin(), other.blocks_.end());
    return GroupDescriptor(std::move(b));
  }

  /// Maximal torus of the same dimension.
  GroupDescriptor maximal_torus() const { return torus(dimension()); }

  bool operator==(const GroupDescriptor&) const = default;
  auto operator<=>(const GroupDescriptor&) const = default;

  std::string to_string() const {
    if (blocks_.empty()) return "1";
    std::string out = "U(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) out += (i ? "," : "") + std::to_string(blocks_[i]);
    return out + ")";
  }

 private:
  std::vector<int> blocks_;
};

/// Zero blocks removed from a tuple, with the positional map old index -> new index.
struct CanonicalBlocks {
  GroupDescriptor group;
  std::vector<std::optional<std::size_t>> position;
};

inline CanonicalBlocks canonical_block(const std::vector<int>& tuple) {
  CanonicalBlocks out;
  std::vector<int> kept;
  for (int b : tuple) {
    if (b < 0) throw DimensionError("block sizes must be non-negative");
    if (b == 0) {
      out.position.emplace_back(std::nullopt);
    } else {
      out.position.emplace_back(kept.size());
      kept.push_back(b);
    }
  }
  out.group = GroupDescriptor(std::move(kept));
  return out;
}

/// True when `fine` refines `coarse`: each coarse block is a run of consecutive fine blocks.
inline bool is_refinement(const GroupDescriptor& fine, const GroupDescriptor& coarse) {
  std::size_t f = 0;
  for (int target : coarse.blocks()) {
    int sum = 0;
    while (sum < target && f < fine.size()) sum += fine.block(f++);
    if (sum != target) return false;
  }
  return f == fine.size();
}

/// For a refinement, the number of fine blocks inside each coarse block.
inline std::vector<std::size_t> refinement_counts(const GroupDescriptor& fine, const GroupDescriptor& coarse) {
  if (!is_refinement(fine, coarse))
    throw DimensionError(fine.to_string() + " is not a block refinement of " + coarse.to_string());
  std::vector<std::size_t> counts;
  std::size_t f = 0;
  for (int target : coarse.blocks()) {
    int sum = 0;
    std::size_t n = 0;
    while (sum < target) {
      sum += fine.block(f++);
      ++n;
    }
    counts.push_back(n);
  }
  return counts;
}

/// One piece of a target block under a supported homomorphism K -> G: either a copy of a
/// source block (identity on it) or a trivial summand of the given size.
struct ArrowPart {
  int size = 0;
  std::optional<std::size_t> source_block;

  bool operator==(const ArrowPart&) const = default;
};

/// A homomorphism K -> G along which classes at G restrict to K.
///
/// Each block of G is cut into consecutive parts; a part is either the image of one block of K
/// or a trivial summand. Every block of K is used at most once; unused blocks are projected away.
/// This covers block refinements, the maximal torus, inclusions such as U(m-1) in U(m),
/// factor projections, and all their composites.
class SubgroupArrow {
 public:
  enum class Kind { Identity, Refinement, FactorProjection, FactorInclusion, Composite };

  SubgroupArrow(GroupDescriptor source, GroupDescriptor target, std::vector<std::vector<ArrowPart>> parts)
      : source_(std::move(source)), target_(std::move(target)), parts_(std::move(parts)) {
    validate();
  }

  static SubgroupArrow identity(const GroupDescriptor& g) {
    std::vector<std::vector<ArrowPart>> parts;
    for (std::size_t b = 0; b < g.size(); ++b) parts.push_back({{g.block(b), b}});
    return SubgroupArrow(g, g, std::move(parts));
  }

  /// Inclusion of a block refinement `fine` into `coarse`.
  static SubgroupArrow refinement(const GroupDescriptor& coarse, const GroupDescriptor& fine) {
    const auto counts = refinement_counts(fine, coarse);
    std::vector<std::vector<ArrowPart>> parts(coarse.size());
    std::size_t f = 0;
    for (std::size_t b = 0; b < coarse.size(); ++b)
      for (std::size_t n = 0; n < counts[b]; ++n, ++f) parts[b].push_back({fine.block(f), f});
    return SubgroupArrow(fine, coarse, std::move(parts));
  }

  static SubgroupArrow maximal_torus(const GroupDescriptor& g) { return refinement(g, g.maximal_torus()); }

  /// Restriction to the trivial group (the augmentation).
  static SubgroupArrow augmentation(const GroupDescriptor& g) {
    std::vector<std::vector<ArrowPart>> parts;
    for (int b : g.blocks()) parts.push_back({{b, std::nullopt}});
    return SubgroupArrow(GroupDescriptor::trivial(), g, std::move(parts));
  }

  /// Upper-left embedding: blocks of `sub` fill each block of `ambient` from the top, the
  /// remainder of a block being trivial. Refinements are the case without remainders.
  static SubgroupArrow upper_left(const GroupDescriptor& ambient, const GroupDescriptor& sub) {
    std::vector<std::vector<ArrowPart>> parts(ambient.size());
    std::size_t s = 0;
    for (std::size_t b = 0; b < ambient.size(); ++b) {
      int used = 0;
      while (s < sub.size() && used + sub.block(s) <= ambient.block(b)) {
        parts[b].push_back({sub.block(s), s});
        used += sub.block(s++);
      }
      if (used < ambient.block(b)) parts[b].push_back({ambient.block(b) - used, std::nullopt});
    }
    if (s != sub.size())
      throw UnsupportedArrow(sub.to_string() + " does not embed block-wise into " + ambient.to_string());
    return SubgroupArrow(sub, ambient, std::move(parts));
  }

  /// Projection K -> G where block b of G is block factors[b] of K.
  static SubgroupArrow projection(const GroupDescriptor& source, const std::vector<std::size_t>& factors) {
    std::vector<int> tb;
    std::vector<std::vector<ArrowPart>> parts;
    for (auto f : factors) {
      if (f >= source.size()) throw UnsupportedArrow("projection factor out of range");
      tb.push_back(source.block(f));
      parts.push_back({{source.block(f), f}});
    }
    return SubgroupArrow(source, GroupDescriptor(std::move(tb)), std::move(parts));
  }

  const GroupDescriptor& source() const { return source_; }
  const GroupDescriptor& target() const { return target_; }
  const std::vector<std::vector<ArrowPart>>& parts() const { return parts_; }

  /// The block refinement of the target cut out by all parts.
  GroupDescriptor part_group() const {
    std::vector<int> b;
    for (const auto& ps : parts_)
      for (const auto& p : ps) b.push_back(p.size);
    return GroupDescriptor(std::move(b));
  }

  Kind kind() const {
    bool trivial_parts = false, reordered = false;
    std::vector<bool> used(source_.size(), false);
    std::size_t next = 0, part_count = 0;
    for (const auto& ps : parts_)
      for (const auto& p : ps) {
        ++part_count;
        if (!p.source_block) {
          trivial_parts = true;
          continue;
        }
        used[*p.source_block] = true;
        if (*p.source_block != next) reordered = true;
        next = *p.source_block + 1;
      }
    const bool all_used = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
    if (reordered) return Kind::Composite;
    if (!trivial_parts && all_used) return part_count == target_.size() ? Kind::Identity : Kind::Refinement;
    if (!trivial_parts && part_count == target_.size()) return Kind::FactorProjection;
    if (trivial_parts && all_used) {
      bool whole_blocks = true;
      for (const auto& ps : parts_) whole_blocks = whole_blocks && ps.size() == 1;
      return whole_blocks ? Kind::FactorInclusion : Kind::Composite;
    }
    return Kind::Composite;
  }

  /// (this ∘ inner): L -> K -> G.
  SubgroupArrow after(const SubgroupArrow& inner) const {
    if (!(inner.target_ == source_))
      throw UnsupportedArrow("cannot compose arrows " + inner.describe() + " then " + describe());
    std::vector<std::vector<ArrowPart>> parts(target_.size());
    for (std::size_t b = 0; b < target_.size(); ++b)
      for (const auto& p : parts_[b]) {
        if (!p.source_block)
          parts[b].push_back(p);
        else
          for (const auto& q : inner.parts_[*p.source_block]) parts[b].push_back(q);
      }
    return SubgroupArrow(inner.source_, target_, std::move(parts));
  }

  bool operator==(const SubgroupArrow&) const = default;

  std::string describe() const { return source_.to_string() + " -> " + target_.to_string(); }

 private:
  void validate() const {
    if (parts_.size() != target_.size()) throw UnsupportedArrow("arrow parts do not match the target blocks");
    std::vector<bool> used(source_.size(), false);
    for (std::size_t b = 0; b < parts_.size(); ++b) {
      int sum = 0;
      for (const auto& p : parts_[b]) {
        if (p.size < 1) throw UnsupportedArrow("arrow parts must be positive");
        sum += p.size;
        if (p.source_block) {
          if (*p.source_block >= source_.size()) throw UnsupportedArrow("arrow part names a missing source block");
          if (used[*p.source_block]) throw UnsupportedArrow("diagonal arrows are not supported");
          used[*p.source_block] = true;
          if (source_.block(*p.source_block) != p.size) throw UnsupportedArrow("arrow part has the wrong size");
        }
      }
      if (sum != target_.block(b)) throw UnsupportedArrow("arrow parts do not fill target block");
    }
  }

  GroupDescriptor source_;
  GroupDescriptor target_;
  std::vector<std::vector<ArrowPart>> parts_;
};

/// The indices d of the double coset sum for res^{U(i+j)}_{U(i,j)} tr^{U(k+l)}_{U(k,l)}.
inline std::vector<int> dc_index_range(int i, int j, int k, int l) {
  if (i < 0 || j < 0 || k < 0 || l < 0) throw DimensionError("double coset parameters must be non-negative");
  if (i + j != k + l) throw DimensionError("double coset parameters need i + j = k + l");
  std::vector<int> out;
  for (int d = std::max(0, k - j); d <= std::min(i, k); ++d) out.push_back(d);
  return out;
}

/// The shuffle permutation chi_d of {1, ..., i+j}.
class Shuffle {
 public:
  Shuffle(int i, int j, int k, int l, int d) : i_(i), j_(j), k_(k), l_(l), d_(d) {
    const auto range = dc_index_range(i, j, k, l);
    if (std::find(range.begin(), range.end(), d) == range.end())
      throw RangeError("shuffle index d = " + std::to_string(d) + " outside the double coset range");
    const int n = i + j;
    image_.resize(static_cast<std::size_t>(n) + 1, 0);
    for (int a = 1; a <= n; ++a) {
      int v;
      if (a <= d)
        v = a;
      else if (a <= k)
        v = a - d + i;
      else if (a <= k + i - d)
        v = a + d - k;
      else
        v = a;
      image_[static_cast<std::size_t>(a)] = v;
    }
    if (!certificate_holds()) throw DefectError("shuffle permutation fails its block certificate");
  }

  int size() const { return i_ + j_; }
  int d() const { return d_; }
  /// chi_d(a) for 1 <= a <= i+j.
  int operator()(int a) const { return image_.at(static_cast<std::size_t>(a)); }

  bool is_identity() const {
    for (int a = 1; a <= size(); ++a)
      if ((*this)(a) != a) return false;
    return true;
  }

  /// Block pattern (d, k-d, i-d, l-i+d) of the source.
  std::vector<int> source_pattern() const { return {d_, k_ - d_, i_ - d_, l_ - i_ + d_}; }
  /// Block pattern (d, i-d, k-d, j-k+d) of the target.
  std::vector<int> target_pattern() const { return {d_, i_ - d_, k_ - d_, j_ - k_ + d_}; }

  /// For each source block, the target block it is carried onto. Empty blocks follow the
  /// generic pattern 1->1, 2->3, 3->2, 4->4.
  std::vector<std::size_t> block_map() const {
    const auto src = source_pattern(), tgt = target_pattern();
    std::vector<std::size_t> out{0, 2, 1, 3};
    int start = 1;
    for (std::size_t b = 0; b < 4; ++b) {
      if (src[b] > 0) out[b] = block_of(tgt, (*this)(start));
      start += src[b];
    }
    return out;
  }

  /// chi_d maps each block of the source pattern onto a block of the target pattern,
  /// order-preservingly, and is a bijection.
  bool certificate_holds() const {
    const int n = size();
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int a = 1; a <= n; ++a) {
      int v = (*this)(a);
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
    }
    const auto src = source_pattern(), tgt = target_pattern();
    for (int s : src)
      if (s < 0) return false;
    const std::vector<std::size_t> expected{0, 2, 1, 3};
    int start = 1;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t tb = expected[b];
      int tstart = 1;
      for (std::size_t c = 0; c < tb; ++c) tstart += tgt[c];
      if (src[b] != tgt[tb]) return false;
      for (int off = 0; off < src[b]; ++off)
        if ((*this)(start + off) != tstart + off) return false;
      start += src[b];
    }
    return true;
  }

  std::string to_string() const {
    std::string out = "[";
    for (int a = 1; a <= size(); ++a) out += (a > 1 ? " " : "") + std::to_string((*this)(a));
    return out + "]";
  }

 private:
  static std::size_t block_of(const std::vector<int>& pattern, int position) {
    int end = 0;
    for (std::size_t b = 0; b < pattern.size(); ++b) {
      end += pattern[b];
      if (position <= end) return b;
    }
    throw DefectError("position outside the block pattern");
  }

  int i_, j_, k_, l_, d_;
  std::vector<int> image_;
};

inline Shuffle shuffle(int i, int j, int k, int l, int d) { return Shuffle(i, j, k, l, d); }

}  // namespace chernbord
