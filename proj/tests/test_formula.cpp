#include <gtest/gtest.h>

#include <random>

#include "fpsmax/formula.hpp"
#include "fpsmax/wcnf.hpp"
#include "support/reference.hpp"

using namespace fpsmax;

namespace {

const char* kLegacyExample = "p wcnf 2 3 10\n10 1 2 0\n3 -1 0\n5 2 0\n";

Assignment assign(std::initializer_list<int> bits) {
    Assignment a(bits.size());
    Var v = 1;
    for (int b : bits) a.set(v++, b != 0);
    return a;
}

ParseErrorKind parse_error_kind(std::string_view text) {
    try {
        parse_wcnf(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a parse error for: " << text;
    return ParseErrorKind::MalformedClause;
}

}  // namespace

TEST(ParseWcnf, LegacyHeaderExample) {
    Formula f = parse_wcnf(kLegacyExample);
    EXPECT_EQ(f.num_vars(), 2u);
    ASSERT_EQ(f.num_clauses(), 3u);
    EXPECT_EQ(f.num_hard(), 1u);
    EXPECT_TRUE(f.clause(0).is_hard());
    EXPECT_EQ(f.clause(0).literals, (std::vector<Literal>{{1, true}, {2, true}}));
    EXPECT_EQ(f.clause(1), (Clause{{{1, false}}, ClauseKind::Soft, 3}));
    EXPECT_EQ(f.clause(2), (Clause{{{2, true}}, ClauseKind::Soft, 5}));
    EXPECT_TRUE(f.is_weighted());
}

TEST(ParseWcnf, Format2022Example) {
    Formula f = parse_wcnf("h 1 2 0\n3 -1 0\n");
    EXPECT_EQ(f.num_vars(), 2u);
    ASSERT_EQ(f.num_clauses(), 2u);
    EXPECT_EQ(f.num_hard(), 1u);
    EXPECT_EQ(f.clause(1).weight, 3u);
}

TEST(ParseWcnf, CommentsBlankLinesAndCarriageReturns) {
    Formula f = parse_wcnf("c hello\r\n\r\np wcnf 2 2 4\r\nc mid\n4 1 -2 0\r\n  1 2 0\n");
    EXPECT_EQ(f.num_clauses(), 2u);
    EXPECT_EQ(f.num_hard(), 1u);
    EXPECT_FALSE(f.is_weighted());
}

TEST(ParseWcnf, DocumentedErrors) {
    EXPECT_EQ(parse_error_kind("p wcnf 1 1 5\n0 1 0\n"), ParseErrorKind::NonPositiveWeight);
    EXPECT_EQ(parse_error_kind("-2 1 0\n"), ParseErrorKind::NonPositiveWeight);
    EXPECT_EQ(parse_error_kind("p wcnf x 1 5\n1 1 0\n"), ParseErrorKind::MalformedHeader);
    EXPECT_EQ(parse_error_kind("p cnf 2 1\n1 2 0\n"), ParseErrorKind::MalformedHeader);
    EXPECT_EQ(parse_error_kind("3 1 0 2 0\n"), ParseErrorKind::LiteralZeroInBody);
    EXPECT_EQ(parse_error_kind("p wcnf 2 1 5\n1 3 0\n"), ParseErrorKind::VarOutOfRange);
    EXPECT_EQ(parse_error_kind("1 1 2\n"), ParseErrorKind::MissingTerminator);
    EXPECT_EQ(parse_error_kind("p wcnf 2 1 5\n6 1 0\n"), ParseErrorKind::WeightAboveTop);
}

TEST(ParseWcnf, OtherMalformedInputs) {
    EXPECT_EQ(parse_error_kind("1 1 0\np wcnf 1 1 2\n"), ParseErrorKind::MalformedHeader);
    EXPECT_EQ(parse_error_kind("p wcnf 1 1 2\nh 1 0\n"), ParseErrorKind::MalformedClause);
    EXPECT_EQ(parse_error_kind("1 a 0\n"), ParseErrorKind::MalformedClause);
    EXPECT_EQ(parse_error_kind("99999999999999999999 1 0\n"), ParseErrorKind::WeightOverflow);
    EXPECT_EQ(parse_error_kind("18446744073709551615 1 0\n1 2 0\n"), ParseErrorKind::WeightOverflow);
}

TEST(ParseWcnf, ErrorCarriesLineNumber) {
    try {
        parse_wcnf("c x\n1 1 0\n1 2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Normalization, DuplicatesMergedTautologiesDropped) {
    Formula f = parse_wcnf("2 1 1 -2 1 0\nh 3 -3 0\n4 2 -2 0\n");
    ASSERT_EQ(f.num_clauses(), 1u);
    EXPECT_EQ(f.clause(0).literals, (std::vector<Literal>{{1, true}, {2, false}}));
    EXPECT_EQ(f.num_vars(), 3u);
    EXPECT_EQ(f.total_soft_weight(), 2u);
}

TEST(Normalization, EmptyClauses) {
    Formula soft = parse_wcnf("7 0\n1 1 0\n");
    EXPECT_EQ(soft.num_clauses(), 1u);
    EXPECT_EQ(soft.cost_offset(), 7u);
    EXPECT_FALSE(soft.trivially_infeasible());
    EXPECT_EQ(evaluate_cost(soft, assign({1})), Cost{7});
    EXPECT_EQ(evaluate_cost(soft, assign({0})), Cost{8});

    Formula hard = parse_wcnf("h 0\n1 1 0\n");
    EXPECT_TRUE(hard.trivially_infeasible());
    EXPECT_FALSE(is_feasible(hard, assign({1})));
}

TEST(Cost, InfeasibleOrdersAboveFinite) {
    EXPECT_LT(Cost{0}, Cost::infeasible());
    EXPECT_LT(Cost{UINT64_MAX}, Cost::infeasible());
    EXPECT_LT(Cost{3}, Cost{4});
    EXPECT_EQ(Cost::infeasible(), Cost::infeasible());
}

TEST(EvaluateCost, HandExamples) {
    Formula f = parse_wcnf(kLegacyExample);
    EXPECT_EQ(evaluate_cost(f, assign({1, 0})), Cost{8});
    EXPECT_EQ(evaluate_cost(f, assign({0, 0})), Cost::infeasible());
    EXPECT_EQ(evaluate_cost(f, assign({0, 1})), Cost{0});
    EXPECT_TRUE(is_feasible(f, assign({0, 1})));
    EXPECT_FALSE(is_feasible(f, assign({0, 0})));
}

TEST(EvaluateCost, NoHardClausesAlwaysFeasible) {
    Formula f = parse_wcnf("1 1 0\n1 -1 2 0\n");
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) EXPECT_TRUE(is_feasible(f, assign({a, b})));
    }
}

TEST(EvaluateCost, WrongLengthThrows) {
    Formula f = parse_wcnf(kLegacyExample);
    EXPECT_THROW(evaluate_cost(f, assign({1})), FormulaError);
    EXPECT_THROW(is_feasible(f, assign({1, 0, 1})), FormulaError);
}

TEST(FormulaProperties, InfeasibleIffNotFeasible) {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 200; ++i) {
        Formula f = testkit::fuzz_formula(gen, {.max_vars = 8, .max_clauses = 20});
        for (int k = 0; k < 8; ++k) {
            Assignment a = testkit::random_assignment(gen, f.num_vars());
            EXPECT_EQ(!evaluate_cost(f, a).feasible(), !is_feasible(f, a));
        }
    }
}

TEST(FormulaProperties, RoundTripBothDialects) {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 100; ++i) {
        Formula f = testkit::fuzz_formula_using_all_vars(gen);
        Formula modern = parse_wcnf(to_wcnf(f, WcnfDialect::Mse2022));
        Formula legacy = parse_wcnf(to_wcnf(f, WcnfDialect::Legacy));
        EXPECT_EQ(modern, f) << to_wcnf(f);
        EXPECT_EQ(legacy, f) << to_wcnf(f, WcnfDialect::Legacy);
        EXPECT_EQ(modern, legacy);
    }
}

TEST(FormulaProperties, LegacyDialectKeepsUnusedVariables) {
    Formula f(5, {{{{1, true}}, ClauseKind::Soft, 2}});
    EXPECT_EQ(parse_wcnf(to_wcnf(f, WcnfDialect::Legacy)).num_vars(), 5u);
    EXPECT_EQ(parse_wcnf(to_wcnf(f, WcnfDialect::Mse2022)).num_vars(), 1u);
}

TEST(FormulaConstruction, RejectsOutOfRangeAndZeroWeight) {
    EXPECT_THROW(Formula(1, {{{{2, true}}, ClauseKind::Soft, 1}}), FormulaError);
    EXPECT_THROW(Formula(1, {{{{1, true}}, ClauseKind::Soft, 0}}), FormulaError);
    EXPECT_THROW(Formula(1, {{{{1, true}}, ClauseKind::Soft, UINT64_MAX}, {{{1, false}}, ClauseKind::Soft, 1}}),
                 FormulaError);
}
