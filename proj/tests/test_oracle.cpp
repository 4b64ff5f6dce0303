#include <gtest/gtest.h>

#include <random>

#include "fpsmax/oracle.hpp"
#include "fpsmax/wcnf.hpp"
#include "support/reference.hpp"

using namespace fpsmax;

namespace {

Assignment assign(std::initializer_list<int> bits) {
    Assignment a(bits.size());
    Var v = 1;
    for (int b : bits) a.set(v++, b != 0);
    return a;
}

}  // namespace

TEST(ExactSolve, WorkedInstance) {
    ExactResult r = exact_solve(parse_wcnf("1 -1 2 0\n1 1 -2 0\n1 1 2 0\n"));
    EXPECT_EQ(r.cost, Cost{0});
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.witness, assign({1, 1}));
}

TEST(ExactSolve, Contradiction) {
    ExactResult r = exact_solve(parse_wcnf("h 1 0\nh -1 0\n"));
    EXPECT_FALSE(r.cost.feasible());
    EXPECT_FALSE(r.witness.has_value());
}

TEST(ExactSolve, HardForcesSoftViolation) {
    ExactResult r = exact_solve(parse_wcnf("h 1 0\n7 -1 0\n"));
    EXPECT_EQ(r.cost, Cost{7});
    EXPECT_EQ(*r.witness, assign({1}));
}

TEST(ExactSolve, OffsetIncluded) {
    EXPECT_EQ(exact_solve(parse_wcnf("3 0\n1 1 0\n")).cost, Cost{3});
}

TEST(ExactSolve, FirstOptimumInCountingOrder) {
    // Every assignment is optimal; the all-zero one comes first.
    ExactResult r = exact_solve(Formula(3, {}));
    EXPECT_EQ(*r.witness, assign({0, 0, 0}));
    // Optimal set {x1=1} x anything: first in counting order has x1 = 1, rest 0.
    r = exact_solve(parse_wcnf("p wcnf 3 1 9\n4 1 0\n"));
    EXPECT_EQ(*r.witness, assign({1, 0, 0}));
}

TEST(ExactSolve, NeverAboveAnyAssignment) {
    std::mt19937_64 gen(3);
    for (int i = 0; i < 150; ++i) {
        Formula f = testkit::fuzz_formula(gen, {.max_vars = 10, .max_clauses = 40});
        ExactResult r = exact_solve(f);
        if (r.witness) EXPECT_EQ(evaluate_cost(f, *r.witness), r.cost);
        for (int k = 0; k < 20; ++k) {
            EXPECT_LE(r.cost, evaluate_cost(f, testkit::random_assignment(gen, f.num_vars())));
        }
    }
}

TEST(ExactSolve, MatchesFullEnumerationOnSmallFormulas) {
    std::mt19937_64 gen(4);
    for (int i = 0; i < 100; ++i) {
        Formula f = testkit::fuzz_formula(gen, {.max_vars = 6, .max_clauses = 20});
        Cost best = Cost::infeasible();
        const Var n = f.num_vars();
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            Assignment a(n);
            for (Var v = 1; v <= n; ++v) a.set(v, (mask >> (v - 1)) & 1u);
            best = std::min(best, evaluate_cost(f, a));
        }
        EXPECT_EQ(exact_solve(f).cost, best);
    }
}

TEST(ExactSolve, RejectsTooManyVariables) {
    Formula f(kExactSolveMaxVars + 1, {{{{1, true}}, ClauseKind::Soft, 1}});
    EXPECT_THROW(exact_solve(f), FormulaError);
}
