#include <gtest/gtest.h>

#include "chernbord/chernbord.hpp"

using namespace chernbord;

namespace {

const NormalizeOptions kInner{Strategy::LeftmostInnermost, kDefaultStepBound};
const NormalizeOptions kOuter{Strategy::LeftmostOutermost, kDefaultStepBound};

}  // namespace

TEST(Rewrite, ZerothChernClassIsUnit) {
  for (int m = 1; m <= 4; ++m) EXPECT_EQ(normalize(ast::chern(0, m)), ClassExpression::unit(GroupDescriptor::unitary(m)));
}

TEST(Rewrite, TopAndVanishingChernClasses) {
  for (int m = 1; m <= 4; ++m) {
    EXPECT_EQ(normalize(ast::chern(m, m)), euler_class(m));
    EXPECT_TRUE(normalize(ast::chern(m + 1, m)).is_zero());
  }
}

TEST(Rewrite, ZeroDivisorDerivation) {
  const Expr e = parse_expression("c(1,2)*(1(2) - t(2))");
  for (const auto& o : {kInner, kOuter}) {
    const auto r = normalize_traced(e, o);
    EXPECT_TRUE(r.value.is_zero());
    EXPECT_GT(r.steps, 0U);
    EXPECT_LT(r.steps, 100U);
  }
}

TEST(Rewrite, StepBound) {
  const Expr e = parse_expression("c(2,4)^3");
  EXPECT_THROW(normalize(e, {Strategy::LeftmostInnermost, 5}), RewriteBoundExceeded);
  EXPECT_NO_THROW(normalize(e));
}

TEST(Rewrite, NormalFormIsAFixedPoint) {
  const auto x = normalize(parse_expression("res[U(3),U(2,1)](c(2,3)*c(1,3))"));
  const auto r = normalize_traced(ast::from_class(x));
  EXPECT_EQ(r.value, x);
}

TEST(Rewrite, ReciprocityMovesProductsInsideTransfers) {
  const Expr e = parse_expression("tr[U(1,1),U(2)](e(1) x 1(1)) * e(2)");
  EXPECT_EQ(normalize(e), normalize(parse_expression("tr[U(1,1),U(2)](e(1)^2 x e(1))")));
}

TEST(Rewrite, CommutatorVanishes) {
  EXPECT_TRUE(normalize(parse_expression("c(1,3)*c(2,3) - c(2,3)*c(1,3)")).is_zero());
}

TEST(Rewrite, ScalarsDistribute) {
  EXPECT_EQ(normalize(parse_expression("a1*(c(1,2) + t(2)) - a1*t(2)")),
            normalize(parse_expression("a1*c(1,2)")));
}

TEST(Rewrite, MixedGroupsAreRejected) {
  EXPECT_THROW(normalize(parse_expression("c(1,2) + c(1,3)")), DimensionError);
  EXPECT_THROW(normalize(parse_expression("e(1) * e(2)")), DimensionError);
}

TEST(RewriteProperty, IdempotenceOnCorpus) {
  ExpressionGenerator g(202);
  for (const auto& e : g.corpus(1000)) {
    const auto once = normalize(e);
    ASSERT_EQ(normalize(ast::from_class(once)), once) << print(e);
  }
}

TEST(RewriteProperty, StrategiesAgreeOnCorpus) {
  ExpressionGenerator g(203);
  for (const auto& e : g.corpus(1000)) ASSERT_EQ(normalize(e, kInner), normalize(e, kOuter)) << print(e);
}

TEST(RewriteProperty, CorpusDerivationsStayBounded) {
  ExpressionGenerator g(204);
  std::size_t worst = 0;
  for (const auto& e : g.corpus(300)) worst = std::max(worst, normalize_traced(e).steps);
  EXPECT_LT(worst, kDefaultStepBound);
}
