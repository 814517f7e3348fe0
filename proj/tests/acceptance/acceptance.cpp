// Acceptance checks: one PASS/FAIL line per criterion, exit code 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "chernbord/chernbord.hpp"
#include "support/torus_oracle.hpp"

using namespace chernbord;

namespace {

// Pinned tolerances. All algebra is exact, so every comparison is equality; the only
// numeric tolerance is the per-criterion time budget.
constexpr double kTimeBudgetSeconds = 10.0;
constexpr int kMaxDegree = 12;
constexpr int kKoszulDegree = 10;
constexpr std::size_t kCorpusSize = 1000;
constexpr int kShuffleBound = 8;

struct Verdict {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

std::size_t brute_count(const std::vector<int>& weights, unsigned n, int max_degree) {
  std::size_t count = 0;
  std::function<void(std::size_t, unsigned, int)> walk = [&](std::size_t i, unsigned left, int deg) {
    if (deg > max_degree) return;
    if (i == weights.size()) {
      count += left == 0;
      return;
    }
    for (unsigned v = 0; v <= left; ++v) walk(i + 1, left - v, deg + weights[i] * static_cast<int>(v));
  };
  walk(0, n, 0);
  return count;
}

Verdict whitney_family() {
  Verdict v;
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= m; ++k)
      for (int i = 0; i <= m; ++i) {
        const int j = m - i;
        const auto r = normalize(ast::res(SubgroupArrow::refinement(GroupDescriptor::unitary(m), canonical_block({i, j}).group),
                                          ast::chern(k, m)));
        v.require(r == whitney_sum(k, i, j), "c(" + std::to_string(k) + "," + std::to_string(m) + ") at U(" +
                                                std::to_string(i) + "," + std::to_string(j) + ")");
      }
  return v;
}

Verdict torus_restriction() {
  Verdict v;
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= m; ++k) {
      const auto img = torus_restrict(chern_class(k, m), kMaxDegree);
      v.require(img == elementary_symmetric(SeriesAlgebra::torus({m}, kMaxDegree), k), "c(" + std::to_string(k) + "," + std::to_string(m) + ")");
      const auto want = oracle::elementary(static_cast<std::size_t>(m), 0, m, k);
      v.require(img == oracle::to_series(want, GroupDescriptor({m}), kMaxDegree), "oracle c(" + std::to_string(k) + ")");
    }
  return v;
}

Verdict stability() {
  Verdict v;
  v.require(restrict_to_smaller(1, 2) == euler_class(1), "c(1,2) -> e(1)");
  for (int m = 2; m <= 4; ++m)
    for (int k = 0; k <= m; ++k) {
      const auto r = restrict_to_smaller(k, m);
      const auto want = k < m ? chern_class(k, m - 1) : ClassExpression::zero(GroupDescriptor::unitary(m - 1));
      v.require(r == want, "c(" + std::to_string(k) + "," + std::to_string(m) + ")");
    }
  return v;
}

Verdict bundling() {
  Verdict v;
  for (int m = 1; m <= 4; ++m) {
    for (int k = 0; k <= m; ++k)
      v.require(bundling_map(chern_class(k, m), kMaxDegree) == cf_generator({m}, 0, k, kMaxDegree),
                "bundling c(" + std::to_string(k) + "," + std::to_string(m) + ")");
    const auto cert = splitting_injectivity({m}, kMaxDegree);
    v.require(cert.injective() && cert.saturated, "splitting injectivity for U(" + std::to_string(m) + ")");
  }
  return v;
}

Verdict zero_divisor() {
  Verdict v;
  v.require(parse_class("c(1,2)*(1(2) - t(2))").is_zero(), "c(1,2)(1 - t(2)) != 0");
  const auto kernel = parse_class("1(2) - t(2)");
  v.require(!kernel.is_zero(), "1 - t(2) normalizes to 0");
  v.require(torus_restrict(kernel, kMaxDegree).is_zero(), "torus image of 1 - t(2) is not 0");
  return v;
}

Verdict regularity() {
  Verdict v;
  for (const auto& g : {GroupDescriptor({1}), GroupDescriptor({2}), GroupDescriptor({3}), GroupDescriptor({1, 1}),
                        GroupDescriptor({2, 1})}) {
    const auto r = regularity_check(g, kMaxDegree);
    for (const auto& s : r.steps) v.require(s.passed(), g.to_string() + " at " + s.generator.name());
    for (const auto& c : r.collapses)
      v.require(c.passed(), g.to_string() + " quotient to U(" + std::to_string(c.k) + ")");
  }
  return v;
}

Verdict graded(std::string& extra) {
  Verdict v;
  for (const auto& g : {GroupDescriptor({2}), GroupDescriptor({1, 1})}) {
    const auto weights = IdealDescriptor(g).weights();
    for (unsigned n = 0; n <= 4; ++n) {
      const auto r = associated_graded_rank(g, n, kMaxDegree);
      v.require(r.certified(), g.to_string() + " n=" + std::to_string(n) + " certificate");
      v.require(r.rank == brute_count(weights, n, kMaxDegree), g.to_string() + " n=" + std::to_string(n) + " rank");
      const auto full = associated_graded_rank(g, n, 16);
      v.require(full.complete && full.rank == brute_count(weights, n, 1 << 20),
                g.to_string() + " n=" + std::to_string(n) + " untruncated at D=16");
      if (!r.complete)
        extra += " " + g.to_string() + "/n=" + std::to_string(n) + ": " + std::to_string(r.rank) + " of " +
                 std::to_string(r.full_count) + " below D=12";
    }
  }
  return v;
}

Verdict koszul() {
  Verdict v;
  for (const auto& g : {GroupDescriptor({1}), GroupDescriptor({2}), GroupDescriptor({1, 1})}) {
    const auto r = koszul_local_homology(g, kKoszulDegree);
    v.require(r.higher_vanish(), g.to_string() + " higher homology");
    const auto alg = SeriesAlgebra::chern(g.blocks(), kKoszulDegree);
    std::vector<std::size_t> counts;
    for (int t = 0; t <= r.guard_band; t += 2) counts.push_back(alg->monomials_of_degree(t).size());
    v.require(r.local_h0 == counts, g.to_string() + " H_0 ranks");
  }
  return v;
}

Verdict engine_health() {
  Verdict v;
  for (int n = 0; n <= kShuffleBound; ++n)
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k <= n; ++k)
        for (int d : dc_index_range(i, n - i, k, n - k))
          v.require(Shuffle(i, n - i, k, n - k, d).certificate_holds(), "shuffle certificate");
  ExpressionGenerator gen(20240601);
  const NormalizeOptions inner{Strategy::LeftmostInnermost, kDefaultStepBound};
  const NormalizeOptions outer{Strategy::LeftmostOutermost, kDefaultStepBound};
  for (const auto& e : gen.corpus(kCorpusSize)) {
    const auto x = normalize(e, inner);
    v.require(normalize(ast::from_class(x), inner) == x, "idempotence: " + print(e));
    v.require(normalize(e, outer) == x, "strategy agreement: " + print(e));
    v.require(ast::same_tree(parse_expression(print(e)), e), "round trip: " + print(e));
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict(std::string&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Whitney family, m <= 4", [](std::string&) { return whitney_family(); }},
      {2, "torus restriction is elementary symmetric, m <= 4", [](std::string&) { return torus_restriction(); }},
      {3, "stability under U(m-1), m <= 4", [](std::string&) { return stability(); }},
      {4, "bundling to Conner-Floyd classes and splitting injectivity, D = 12", [](std::string&) { return bundling(); }},
      {5, "zero divisor and torus-kernel witness", [](std::string&) { return zero_divisor(); }},
      {6, "regularity and quotient collapse, D = 12", [](std::string&) { return regularity(); }},
      {7, "associated graded ranks, n <= 4, D = 12", [](std::string& extra) { return graded(extra); }},
      {8, "Koszul higher homology vanishes, D = 10", [](std::string&) { return koszul(); }},
      {9, "shuffles, idempotence, strategies, round trip", [](std::string&) { return engine_health(); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    std::string extra;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run(extra);
    } catch (const std::exception& e) {
      v.ok = false;
      v.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kTimeBudgetSeconds) v.require(false, "over the time budget");
    all = all && v.ok;
    std::printf("%s  criterion %d: %s (%.2f s)%s%s%s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                v.ok ? "" : " -- ", v.note.c_str(), extra.empty() ? "" : ("; truncated:" + extra).c_str());
  }
  return all ? 0 : 1;
}
