#include "fpsmax/oracle.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fpsmax {

namespace {

struct MaskClause {
    std::uint32_t pos;
    std::uint32_t neg;
};

}  // namespace

ExactResult exact_solve(const Formula& f) {
    const Var n = f.num_vars();
    if (n > kExactSolveMaxVars) {
        throw FormulaError("exact_solve supports at most " + std::to_string(kExactSolveMaxVars) + " variables, got " +
                           std::to_string(n));
    }
    if (f.trivially_infeasible()) return {};

    std::vector<MaskClause> hard;
    std::vector<MaskClause> soft;
    std::vector<Weight> soft_weight;
    for (const Clause& c : f.clauses()) {
        MaskClause m{0, 0};
        for (const Literal& l : c.literals) (l.positive ? m.pos : m.neg) |= 1u << (l.var - 1);
        if (c.is_hard()) {
            hard.push_back(m);
        } else {
            soft.push_back(m);
            soft_weight.push_back(c.weight);
        }
    }

    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    bool found = false;
    Weight best = 0;
    std::uint32_t best_bits = 0;
    for (std::uint64_t bits64 = 0; bits64 < (std::uint64_t{1} << n); ++bits64) {
        const auto bits = static_cast<std::uint32_t>(bits64);
        const std::uint32_t inv = ~bits & full;
        bool feasible = true;
        for (const MaskClause& m : hard) {
            if (((bits & m.pos) | (inv & m.neg)) == 0) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        Weight cost = f.cost_offset();
        for (std::size_t i = 0; i < soft.size(); ++i) {
            if (((bits & soft[i].pos) | (inv & soft[i].neg)) == 0) cost += soft_weight[i];
        }
        if (!found || cost < best) {
            found = true;
            best = cost;
            best_bits = bits;
        }
    }
    if (!found) return {};

    Assignment witness(n);
    for (Var v = 1; v <= n; ++v) witness.set(v, (best_bits >> (v - 1)) & 1u);
    return {Cost{best}, witness};
}

}  // namespace fpsmax
