#include <gtest/gtest.h>

#include <random>
#include <string>

#include "lbsim/expr.hpp"
#include "oracles.hpp"

using lbsim::Expr;
using lbsim::ExprError;

TEST(Expr, EvaluatesSimpleFormulas) {
    EXPECT_DOUBLE_EQ(Expr::parse("0.02*t")(10), 0.2);
    EXPECT_DOUBLE_EQ(Expr::parse("-(0.1*(t%17))+0.8")(17), 0.8);
    EXPECT_DOUBLE_EQ(Expr::parse("sin(pi*t/180)")(90), 1.0);
    EXPECT_DOUBLE_EQ(Expr::parse("floor(t/4)")(7), 1.0);
    EXPECT_DOUBLE_EQ(Expr::parse("2 - 3 - 4")(0), -5.0);
    EXPECT_DOUBLE_EQ(Expr::parse("2 * 3 + 4 * 5")(0), 26.0);
    EXPECT_DOUBLE_EQ(Expr::parse("--t")(3), 3.0);
    EXPECT_DOUBLE_EQ(Expr::parse("1.5e2")(0), 150.0);
}

TEST(Expr, ModuloKeepsSignOfDividend) {
    EXPECT_DOUBLE_EQ(Expr::parse("t % 5")(-7), -2.0);
    EXPECT_DOUBLE_EQ(Expr::parse("t % 5")(7), 2.0);
    EXPECT_DOUBLE_EQ(Expr::parse("t % 2.5")(6), 1.0);
}

TEST(Expr, ReportsErrorOffsets) {
    try {
        Expr::parse("0.1 * (t + 2");
        FAIL() << "expected ExprError";
    } catch (const ExprError& e) {
        EXPECT_EQ(e.offset(), 12u);
    }
    try {
        Expr::parse("2 * cos(t)");
        FAIL() << "expected ExprError";
    } catch (const ExprError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("cos"), std::string::npos);
    }
    EXPECT_THROW(Expr::parse(""), ExprError);
    EXPECT_THROW(Expr::parse("   "), ExprError);
    EXPECT_THROW(Expr::parse("t t"), ExprError);
    EXPECT_THROW(Expr::parse("1..2"), ExprError);
    EXPECT_THROW(Expr::parse("sin t"), ExprError);
}

TEST(Expr, DivisionByZeroIsNotTotal) {
    EXPECT_TRUE(std::isinf(Expr::parse("1/t")(0)));
    EXPECT_TRUE(std::isnan(Expr::parse("t%0")(3)));
}

TEST(Expr, CatalogFormulasMatchHandCodedToTheBit) {
    const Expr constant = Expr::parse("0.1");
    const Expr sublinear = Expr::parse("1/(0.4*t+1)");
    const Expr linear = Expr::parse("0.02*t");
    const Expr autocorrect = Expr::parse("-(0.1*(t%17))+0.8");
    const Expr irregular = Expr::parse("sin(pi*t/180)");
    for (int i = 0; i <= 600; ++i) {
        const double t = i;
        EXPECT_EQ(constant(t), oracle::iota_constant(t));
        EXPECT_EQ(sublinear(t), oracle::iota_sublinear(t));
        EXPECT_EQ(linear(t), oracle::iota_linear(t));
        EXPECT_EQ(autocorrect(t), oracle::iota_autocorrect(t));
        EXPECT_EQ(irregular(t), oracle::omega_irregular(t));
    }
}

namespace {

std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 2);
    switch (pick(rng)) {
        case 0: return "t";
        case 1: return "pi";
        case 2: {
            std::uniform_real_distribution<double> v(0.0, 100.0);
            return std::to_string(v(rng));
        }
        case 3: return "-" + random_expr(rng, depth - 1);
        case 4: return "(" + random_expr(rng, depth - 1) + ")";
        case 5: return "sin(" + random_expr(rng, depth - 1) + ")";
        case 6: return "floor(" + random_expr(rng, depth - 1) + ")";
        default: {
            static const char ops[] = {'+', '-', '*', '/', '%'};
            std::uniform_int_distribution<int> op(0, 4);
            return random_expr(rng, depth - 1) + ops[op(rng)] + random_expr(rng, depth - 1);
        }
    }
}

}  // namespace

TEST(Expr, PrintParseRoundTripIsAFixedPoint) {
    std::mt19937 rng(20240917);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::string text = random_expr(rng, 5);
        const Expr first = Expr::parse(text);
        const std::string printed = first.to_string();
        const Expr second = Expr::parse(printed);
        ASSERT_EQ(first, second) << text << " -> " << printed;
        ASSERT_EQ(printed, second.to_string());
        for (double t : {0.0, 1.0, 17.0, 333.0}) {
            const double a = first(t), b = second(t);
            if (std::isnan(a)) {
                ASSERT_TRUE(std::isnan(b));
            } else {
                ASSERT_EQ(a, b) << text;
            }
        }
    }
}

TEST(Expr, ConstantAndCanonicalText) {
    EXPECT_TRUE(Expr().is_constant_zero());
    EXPECT_EQ(Expr::constant(-2.5)(0), -2.5);
    EXPECT_EQ(Expr::parse(Expr::constant(-2.5).to_string()), Expr::constant(-2.5));
    EXPECT_EQ(Expr::parse("-(0.1*(t%17))+0.8").to_string(), "-(0.1 * (t % 17)) + 0.8");
    EXPECT_EQ(Expr::parse("sin(pi*t/180)").to_string(), "sin(pi * t / 180)");
    EXPECT_EQ(Expr::parse("1 - (2 - 3)").to_string(), "1 - (2 - 3)");
    EXPECT_EQ(Expr::parse("(1 - 2) - 3").to_string(), "1 - 2 - 3");
}
