#pragma once

// The identity suite: every mechanized identity as a labelled, independently runnable check.

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chernbord/completion.hpp"
#include "chernbord/corpus.hpp"
#include "chernbord/parser.hpp"

namespace chernbord {

enum class Status { Pass, Fail, Skip };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skip:
      return "skip";
  }
  return "?";
}

struct SuiteOptions {
  int max_degree = kDefaultMaxDegree;
  std::size_t depth_bound = kDefaultStepBound;
  std::optional<std::string> only;
  unsigned jobs = 1;
  std::size_t corpus_size = 1000;
};

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

struct SuiteEntry {
  std::string id;
  std::string tag;
  std::string anchor;
  std::function<Outcome(const SuiteOptions&)> run;
};

struct SuiteResult {
  std::string id;
  std::string tag;
  std::string anchor;
  Status status = Status::Pass;
  std::string detail;
  double elapsed_ms = 0;
};

struct SuiteReport {
  std::vector<SuiteResult> results;
  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [&](const auto& r) { return r.status == s; }));
  }
  bool passed() const { return count(Status::Fail) == 0; }
};

inline const std::vector<std::string>& suite_tags() {
  static const std::vector<std::string> tags{"whitney",  "torus",      "stability",    "bundling", "injectivity",
                                             "zero-divisor", "kernel-witness", "graded", "regularity",
                                             "quotient", "koszul",     "shuffle",      "augmentation", "engine"};
  return tags;
}

namespace suite_detail {

inline Outcome check(bool ok, std::string detail = {}) { return {ok ? Status::Pass : Status::Fail, std::move(detail)}; }
inline Outcome skip(std::string why) { return {Status::Skip, std::move(why)}; }

inline std::string km(int k, int m) { return "c(" + std::to_string(k) + "," + std::to_string(m) + ")"; }

inline NormalizeOptions engine(const SuiteOptions& o) { return {Strategy::LeftmostInnermost, o.depth_bound}; }

inline void whitney(std::vector<SuiteEntry>& out) {
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= m; ++k)
      for (int i = 0; i <= m; ++i) {
        const int j = m - i;
        out.push_back({"whitney/" + km(k, m) + "@U(" + std::to_string(i) + "," + std::to_string(j) + ")", "whitney",
                       "Whitney sum formula for restriction to U(i,j)", [=](const SuiteOptions& o) {
                         const auto r = whitney_restriction(k, m, i, j, engine(o));
                         return check(true, r.to_string());
                       }});
      }
}

inline void torus(std::vector<SuiteEntry>& out) {
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= m; ++k)
      out.push_back({"torus/" + km(k, m), "torus", "torus restriction is the elementary symmetric polynomial",
                     [=](const SuiteOptions& o) {
                       if (2 * k > o.max_degree) return skip("degree above the truncation bound");
                       const auto img = torus_restrict(chern_class(k, m, engine(o)), o.max_degree);
                       const auto want = elementary_symmetric(SeriesAlgebra::torus({m}, o.max_degree), k);
                       return check(img == want, img.to_string());
                     }});
  out.push_back({"torus/c(1,2)^2", "torus", "torus image of a product of transfers", [](const SuiteOptions& o) {
                   if (o.max_degree < 4) return skip("degree above the truncation bound");
                   const auto c1 = chern_class(1, 2, engine(o));
                   const auto img = torus_restrict(mul_expr(c1, c1), o.max_degree);
                   auto alg = SeriesAlgebra::torus({2}, o.max_degree);
                   const auto s = elementary_symmetric(alg, 1);
                   return check(img == s * s, img.to_string());
                 }});
  for (int m = 1; m <= 4; ++m)
    out.push_back({"torus/t(" + std::to_string(m) + ")", "torus", "the opaque class restricts to 1 on the torus",
                   [=](const SuiteOptions& o) {
                     const auto img = torus_restrict(opaque_class(m), o.max_degree);
                     return check(img == PowerSeries::constant(SeriesAlgebra::torus({m}, o.max_degree), 1),
                                  img.to_string());
                   }});
}

inline void stability(std::vector<SuiteEntry>& out) {
  for (int m = 2; m <= 4; ++m)
    for (int k = 0; k <= m; ++k)
      out.push_back({"stability/" + km(k, m), "stability", "restriction to U(m-1); the Euler class restricts to 0",
                     [=](const SuiteOptions& o) {
                       const auto r = restrict_to_smaller(k, m, engine(o));
                       const auto want = k == m ? ClassExpression::zero(GroupDescriptor::unitary(m - 1))
                                                : chern_class(k, m - 1, engine(o));
                       return check(r == want, r.to_string());
                     }});
}

inline void bundling(std::vector<SuiteEntry>& out) {
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= m; ++k)
      out.push_back({"bundling/" + km(k, m), "bundling", "bundling map sends c(k,m) to the Conner-Floyd class",
                     [=](const SuiteOptions& o) {
                       if (2 * k > o.max_degree) return skip("degree above the truncation bound");
                       const auto img = bundling_map(chern_class(k, m, engine(o)), o.max_degree);
                       return check(img == cf_generator({m}, 0, k, o.max_degree), img.to_string());
                     }});
  out.push_back({"bundling/zero-divisor", "bundling", "bundling image of the zero divisor identity",
                 [](const SuiteOptions& o) {
                   const auto x = parse_class("c(1,2)*(1(2) - t(2))", {}, engine(o));
                   return check(bundling_map(x, o.max_degree).is_zero(), x.to_string());
                 }});
}

inline void injectivity(std::vector<SuiteEntry>& out) {
  const std::vector<std::vector<int>> groups{{1}, {2}, {3}, {4}, {1, 1}, {2, 1}};
  for (const auto& b : groups)
    out.push_back({"injectivity/" + GroupDescriptor(b).to_string(), "injectivity",
                   "splitting principle: the splitting map is injective", [=](const SuiteOptions& o) {
                     const auto cert = splitting_injectivity(b, o.max_degree);
                     return check(cert.injective() && cert.saturated,
                                  "rank " + std::to_string(cert.rank) + " of " + std::to_string(cert.chern_monomials));
                   }});
}

inline void zero_divisor(std::vector<SuiteEntry>& out) {
  for (int m = 2; m <= 4; ++m)
    for (int k = 1; k < m; ++k)
      out.push_back({"zero-divisor/" + km(k, m), "zero-divisor", "1 - tr_N(1) is a zero divisor",
                     [=](const SuiteOptions& o) {
                       const std::string ms = std::to_string(m);
                       const auto x = parse_class(km(k, m) + "*(1(" + ms + ") - t(" + ms + "))", {}, engine(o));
                       return check(x.is_zero(), x.to_string());
                     }});
}

inline void kernel_witness(std::vector<SuiteEntry>& out) {
  for (int m = 2; m <= 4; ++m)
    out.push_back({"kernel-witness/U(" + std::to_string(m) + ")", "kernel-witness",
                   "classes are not determined by their torus restrictions", [=](const SuiteOptions& o) {
                     const std::string ms = std::to_string(m);
                     const auto x = parse_class("1(" + ms + ") - t(" + ms + ")", {}, engine(o));
                     const bool nonzero = !x.is_zero();
                     const bool killed = torus_restrict(x, o.max_degree).is_zero();
                     return check(nonzero && killed, x.to_string());
                   }});
}

inline std::size_t brute_count(const std::vector<int>& weights, unsigned n, int max_degree) {
  std::size_t count = 0;
  std::vector<unsigned> e(weights.size(), 0);
  std::function<void(std::size_t, unsigned, int)> rec = [&](std::size_t i, unsigned left, int deg) {
    if (i == weights.size()) {
      if (left == 0 && deg <= max_degree) ++count;
      return;
    }
    for (unsigned v = 0; v <= left; ++v) rec(i + 1, left - v, deg + static_cast<int>(v) * weights[i]);
  };
  rec(0, n, 0);
  return count;
}

inline void graded(std::vector<SuiteEntry>& out) {
  const std::vector<std::vector<int>> groups{{2}, {1, 1}, {2, 1}};
  for (const auto& b : groups)
    for (unsigned n = 0; n <= 4; ++n)
      out.push_back({"graded/" + GroupDescriptor(b).to_string() + "/n=" + std::to_string(n), "graded",
                     "I^n/I^(n+1) is free on the Chern monomials of degree n", [=](const SuiteOptions& o) {
                       const GroupDescriptor g(b);
                       const IdealDescriptor ideal(g);
                       if (n > 0 && static_cast<int>(n) * ideal.min_weight() > o.max_degree)
                         return skip("I^n lies above the truncation bound");
                       const auto r = associated_graded_rank(g, n, o.max_degree);
                       const std::size_t want = brute_count(ideal.weights(), n, o.max_degree);
                       std::string detail = "rank " + std::to_string(r.rank);
                       if (!r.complete) detail += " (" + std::to_string(r.full_count) + " without truncation)";
                       return check(r.certified() && r.rank == want, detail);
                     }});
}

inline void regularity(std::vector<SuiteEntry>& out) {
  const std::vector<std::vector<int>> groups{{1}, {2}, {3}, {1, 1}, {2, 1}};
  for (const auto& b : groups)
    out.push_back({"regularity/" + GroupDescriptor(b).to_string(), "regularity", "the Chern sequence is regular",
                   [=](const SuiteOptions& o) {
                     const auto r = regularity_check(GroupDescriptor(b), o.max_degree);
                     bool steps = true;
                     for (const auto& s : r.steps) steps = steps && s.passed();
                     return check(steps, "guard band " + std::to_string(r.guard_band));
                   }});
  for (int m = 2; m <= 4; ++m)
    out.push_back({"quotient/U(" + std::to_string(m) + ")", "quotient",
                   "dividing out the top Chern classes of U(m) leaves the U(k) model", [=](const SuiteOptions& o) {
                     const auto r = regularity_check(GroupDescriptor::unitary(m), o.max_degree);
                     bool ok = !r.collapses.empty();
                     for (const auto& c : r.collapses) ok = ok && c.passed();
                     return check(ok, std::to_string(r.collapses.size()) + " quotients");
                   }});
}

inline void koszul(std::vector<SuiteEntry>& out) {
  const std::vector<std::vector<int>> groups{{}, {1}, {2}, {1, 1}};
  for (const auto& b : groups)
    out.push_back({"koszul/" + GroupDescriptor(b).to_string(), "koszul",
                   "local homology is concentrated in degree 0", [=](const SuiteOptions& o) {
                     const auto r = koszul_local_homology(GroupDescriptor(b), o.max_degree);
                     return check(r.passed(), "guard band " + std::to_string(r.guard_band));
                   }});
}

inline void shuffles(std::vector<SuiteEntry>& out) {
  for (int n = 0; n <= 8; ++n)
    out.push_back({"shuffle/n=" + std::to_string(n), "shuffle", "shuffle permutations carry the block pattern",
                   [=](const SuiteOptions&) {
                     std::size_t checked = 0;
                     for (int i = 0; i <= n; ++i)
                       for (int k = 0; k <= n; ++k)
                         for (int d : dc_index_range(i, n - i, k, n - k)) {
                           const Shuffle s(i, n - i, k, n - k, d);
                           if (!s.certificate_holds()) return check(false, s.to_string());
                           ++checked;
                         }
                     return check(true, std::to_string(checked) + " shuffles");
                   }});
}

inline void augmentation(std::vector<SuiteEntry>& out) {
  for (int m = 1; m <= 4; ++m)
    for (int k = 0; k <= m; ++k)
      out.push_back({"augmentation/" + km(k, m), "augmentation", "Chern classes lie in the augmentation ideal",
                     [=](const SuiteOptions& o) {
                       const auto a = augment(chern_class(k, m, engine(o)));
                       return check(a == GradedCoefficient(k == 0 ? 1 : 0), a.to_string());
                     }});
  for (int m = 1; m <= 4; ++m)
    out.push_back({"augmentation/t(" + std::to_string(m) + ")", "augmentation", "augmentation of the opaque class",
                   [=](const SuiteOptions&) { return check(augment(opaque_class(m)).is_one()); }});
}

inline void engine_checks(std::vector<SuiteEntry>& out) {
  for (int m = 1; m <= 4; ++m)
    out.push_back({"engine/c(0," + std::to_string(m) + ")", "engine", "c(0,m) is the unit", [=](const SuiteOptions& o) {
                     return check(chern_class(0, m, engine(o)) == ClassExpression::unit(GroupDescriptor::unitary(m)));
                   }});
  out.push_back({"engine/derivation-length", "engine", "suite derivations stay far below the step bound",
                 [](const SuiteOptions& o) {
                   std::size_t worst = 0;
                   for (const char* text : {"c(1,2)*(1(2) - t(2))", "res[U(3),U(2,1)](c(2,3))", "c(1,2)*c(1,2)",
                                            "res[U(4),U(2,2)](c(2,4))", "c(1,3)*c(2,3)"})
                     worst = std::max(worst, normalize_traced(parse_expression(text), engine(o)).steps);
                   return check(worst < 100, std::to_string(worst) + " steps");
                 }});
  out.push_back({"engine/corpus", "engine", "idempotence, strategy agreement and round trip on a random corpus",
                 [](const SuiteOptions& o) {
                   ExpressionGenerator gen;
                   for (const auto& e : gen.corpus(o.corpus_size)) {
                     const auto a = normalize(e, {Strategy::LeftmostInnermost, o.depth_bound});
                     const auto b = normalize(e, {Strategy::LeftmostOutermost, o.depth_bound});
                     if (!(a == b)) return check(false, "strategies disagree on " + print(e));
                     if (!(normalize(a, {Strategy::LeftmostInnermost, o.depth_bound}) == a))
                       return check(false, "not idempotent on " + print(e));
                     if (!ast::same_tree(parse_expression(print(e)), e))
                       return check(false, "round trip fails on " + print(e));
                   }
                   return check(true, std::to_string(o.corpus_size) + " expressions");
                 }});
}

}  // namespace suite_detail

/// All suite entries in report order.
inline std::vector<SuiteEntry> suite_entries() {
  std::vector<SuiteEntry> out;
  suite_detail::whitney(out);
  suite_detail::torus(out);
  suite_detail::stability(out);
  suite_detail::bundling(out);
  suite_detail::injectivity(out);
  suite_detail::zero_divisor(out);
  suite_detail::kernel_witness(out);
  suite_detail::graded(out);
  suite_detail::regularity(out);
  suite_detail::koszul(out);
  suite_detail::shuffles(out);
  suite_detail::augmentation(out);
  suite_detail::engine_checks(out);
  return out;
}

inline SuiteResult run_entry(const SuiteEntry& entry, const SuiteOptions& options) {
  SuiteResult r{entry.id, entry.tag, entry.anchor, Status::Pass, {}, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = entry.run(options);
    r.status = o.status;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.status = Status::Fail;
    r.detail = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Runs the (optionally filtered) suite; results keep entry order whatever the job count.
inline SuiteReport run_suite(const SuiteOptions& options = {}) {
  if (options.only) {
    const auto& tags = suite_tags();
    if (std::find(tags.begin(), tags.end(), *options.only) == tags.end())
      throw RangeError("unknown suite tag '" + *options.only + "'");
  }
  std::vector<SuiteEntry> entries;
  for (auto& e : suite_entries())
    if (!options.only || e.tag == *options.only) entries.push_back(std::move(e));

  SuiteReport report;
  report.results.resize(entries.size());
  const std::size_t jobs = std::max(1U, options.jobs);
  for (std::size_t begin = 0; begin < entries.size(); begin += jobs) {
    std::vector<std::future<SuiteResult>> batch;
    const std::size_t end = std::min(entries.size(), begin + jobs);
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&, i] { return run_entry(entries[i], options); }));
    for (std::size_t i = begin; i < end; ++i) report.results[i] = batch[i - begin].get();
  }
  return report;
}

}  // namespace chernbord
