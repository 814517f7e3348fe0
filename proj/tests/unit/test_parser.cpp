#include <gtest/gtest.h>

#include "chernbord/chernbord.hpp"

using namespace chernbord;

namespace {

std::string error_of(const std::string& text) {
  try {
    normalize(parse_expression(text));
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Parser, TransferDefinesFirstChernClass) {
  const auto x = parse_class("tr[U(1,1),U(2)](e(1) x 1(1))");
  ASSERT_EQ(x.term_list().size(), 1U);
  const auto t = x.term_list()[0];
  EXPECT_EQ(t.subgroup(), GroupDescriptor({1, 1}));
  EXPECT_EQ(t.ambient(), GroupDescriptor({2}));
  EXPECT_EQ(x, chern_class(1, 2));
}

TEST(Parser, ZerothChernClass) { EXPECT_EQ(parse_class("c(0,3)"), ClassExpression::unit(GroupDescriptor({3}))); }

TEST(Parser, DimensionMismatch) {
  EXPECT_THROW(parse_expression("tr[U(2,1),U(2)](e(2) x 1(1))"), DimensionError);
  const std::string msg = error_of("tr[U(2,1),U(2)](e(1))");
  EXPECT_NE(msg.find("1:1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("dimension mismatch"), std::string::npos) << msg;
  EXPECT_THROW(parse_class("res[U(2),U(3)](c(1,2))"), DimensionError);
  EXPECT_THROW(parse_class("e(1) x e(1) + e(2)"), DimensionError);
}

TEST(Parser, SyntaxErrorsCarryLocationAndExpectedSet) {
  try {
    parse_expression("c(1,");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1U);
    EXPECT_EQ(e.column(), 5U);
    EXPECT_NE(std::string(e.what()).find("integer"), std::string::npos);
  }
  EXPECT_THROW(parse_expression("c(1,2) +"), ParseError);
  EXPECT_THROW(parse_expression("c(1,2))"), ParseError);
  EXPECT_THROW(parse_expression("c(1,2) $ 3"), ParseError);
  EXPECT_THROW(parse_expression("2(3)"), ParseError);
}

TEST(Parser, MixedProductsNeedParentheses) {
  EXPECT_THROW(parse_expression("e(1) * 1(1) x e(1)"), ParseError);
  EXPECT_NO_THROW(parse_expression("(e(1) * e(1)) x e(1)"));
}

TEST(Parser, UnknownSymbols) {
  EXPECT_THROW(parse_expression("a5"), UnknownSymbol);
  EXPECT_NO_THROW(parse_expression("a5", {6}));
  EXPECT_THROW(parse_expression("x1 + c(1,1)"), UnknownSymbol);
  EXPECT_THROW(parse_expression("q(2)"), UnknownSymbol);
  EXPECT_THROW(parse_series("y1", SeriesAlgebra::torus({2}, 12)), UnknownSymbol);
}

TEST(Parser, Ranges) {
  EXPECT_THROW(parse_expression("e(0)"), RangeError);
  EXPECT_THROW(parse_expression("c(1,0)"), RangeError);
}

TEST(Parser, Restrictions) {
  EXPECT_EQ(parse_class("res[U(2),T(2)](t(2))"), ClassExpression::unit(GroupDescriptor::torus(2)));
  EXPECT_EQ(parse_class("res[U(2),U(1)](c(1,2))"), euler_class(1));
  // Pullback along the projection of U(2,1) onto its second factor.
  EXPECT_EQ(parse_class("res[U(1),U(2,1)@2](c(1,1))"), parse_class("1(2) x e(1)"));
  EXPECT_THROW(parse_expression("res[U(2),U(2,1)@2](c(1,2))"), DimensionError);
}

TEST(Parser, Representations) {
  EXPECT_EQ(parse_class("c(1, rep[T(2)](chi(1,0) + chi(0,1)))"), parse_class("e(1) x 1(1) + 1(1) x e(1)"));
  EXPECT_EQ(parse_class("c(2, rep[U(2)](V(1) + 1))"), chern_class(2, 2));
  EXPECT_THROW(parse_expression("c(1, rep[U(2)](chi(2)))"), UnsupportedRepresentation);
  EXPECT_THROW(parse_expression("c(1, rep[U(2)](V(2)))"), DimensionError);
}

TEST(Parser, Series) {
  const auto alg = SeriesAlgebra::chern({2, 1}, 12);
  const auto s = parse_series("c1[1]^2 - 2*a1*c2[1] + c1[2]", alg);
  EXPECT_EQ(s.to_string(), parse_series(s.to_string(), alg).to_string());
  EXPECT_EQ(parse_series("cf(1,2)^2", SeriesAlgebra::chern({2}, 12)), parse_series("c1^2", SeriesAlgebra::chern({2}, 12)));
  EXPECT_THROW(parse_series("cf(1,3)", SeriesAlgebra::chern({2}, 12)), DimensionError);
  EXPECT_EQ(parse_series("x_1*x_2", SeriesAlgebra::torus({2}, 12)), parse_series("x1*x2", SeriesAlgebra::torus({2}, 12)));
}

TEST(Parser, Equations) {
  const auto [l, r] = split_equation("c(1,2) = (x1 + x2)");
  EXPECT_EQ(l, "c(1,2) ");
  EXPECT_EQ(r, " (x1 + x2)");
  EXPECT_THROW(split_equation("c(1,2)"), ParseError);
  EXPECT_THROW(split_equation("a = b = c"), ParseError);
  EXPECT_TRUE(looks_like_series("x1 + x2"));
  EXPECT_TRUE(looks_like_series("c1^2 - 2*c2"));
  EXPECT_FALSE(looks_like_series("c(1,2) x 1(1)"));
}

TEST(Parser, PrintedFormsParseBack) {
  for (const char* text : {"c(1,2)*(1(2) - t(2))", "-a1*(e(1) x 1(1))", "tr[U(1,1),U(2)](e(1)^2 x 1(1))",
                           "res[U(3),U(2,1)](c(2,3))", "(e(1) + 1(1)) x (e(1) - 1(1))", "-(c(1,2) - 3)^2",
                           "res[U(1),U(2,1)@2](c(1,1))"}) {
    const Expr e = parse_expression(text);
    const std::string printed = print(e);
    EXPECT_TRUE(ast::same_tree(parse_expression(printed), e)) << text << " -> " << printed;
  }
}

TEST(ParserProperty, RoundTripOnCorpus) {
  ExpressionGenerator g(301);
  for (const auto& e : g.corpus(1000)) {
    const std::string printed = print(e);
    const Expr back = parse_expression(printed);
    ASSERT_TRUE(ast::same_tree(back, e)) << printed;
    ASSERT_EQ(print(back), printed);
  }
}

TEST(ParserProperty, NormalFormsRoundTrip) {
  ExpressionGenerator g(302);
  for (const auto& e : g.corpus(300)) {
    const auto x = normalize(e);
    ASSERT_EQ(normalize(parse_typed(x.to_string(), {}, x.group())), x) << x.to_string();
  }
}
