#pragma once

// Hand-rolled random generators for property tests.

#include <random>
#include <vector>

#include "chernbord/chernbord.hpp"

namespace gen {

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// A sparse coefficient with small integer entries on a1..a_gens.
  chernbord::GradedCoefficient coefficient(std::size_t gens = 4, int terms = 3) {
    chernbord::GradedCoefficient out;
    const int n = uniform(0, terms);
    for (int t = 0; t < n; ++t) {
      chernbord::GradedCoefficient m(uniform(-5, 5));
      const int factors = uniform(0, 3);
      for (int f = 0; f < factors; ++f)
        m *= chernbord::GradedCoefficient::generator(static_cast<std::size_t>(uniform(1, static_cast<int>(gens))));
      out += m;
    }
    return out;
  }

  /// A random truncated series with at most `terms` monomials.
  chernbord::PowerSeries series(const chernbord::AlgebraPtr& alg, int terms = 4) {
    chernbord::PowerSeries out(alg);
    for (int t = 0; t < terms; ++t) {
      std::vector<unsigned> e(alg->size(), 0);
      for (auto& x : e) x = static_cast<unsigned>(uniform(0, 2));
      out.add_term(e, coefficient(3, 2));
    }
    return out;
  }

  /// A class expression over g from the seeded corpus generator.
  chernbord::Expr expression(const chernbord::GroupDescriptor& g, int depth) { return corpus_.at(g, depth); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  chernbord::ExpressionGenerator corpus_{rng_()};
};

}  // namespace gen
