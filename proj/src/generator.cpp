#include "fpsmax/generator.hpp"

#include <algorithm>
#include <vector>

#include "fpsmax/rng.hpp"

namespace fpsmax {

namespace {

std::vector<Literal> random_clause(Rng& rng, Var n, std::uint32_t len) {
    len = std::min<std::uint32_t>(len, n);
    std::vector<Literal> lits;
    while (lits.size() < len) {
        const Var v = static_cast<Var>(rng.below(n)) + 1;
        if (std::any_of(lits.begin(), lits.end(), [&](const Literal& l) { return l.var == v; })) continue;
        lits.push_back({v, rng.coin()});
    }
    return lits;
}

}  // namespace

Formula generate_formula(const GeneratorParams& p) {
    if (p.num_vars == 0 && p.num_hard + p.num_soft > 0) throw FormulaError("generator needs at least one variable");
    if (p.hard_len == 0 || p.soft_len_max == 0 || p.max_weight == 0) {
        throw FormulaError("generator lengths and weights must be positive");
    }
    Rng rng(p.seed);
    Assignment hidden(p.num_vars);
    for (Var v = 1; v <= p.num_vars; ++v) hidden.set(v, rng.coin());

    std::vector<Clause> clauses;
    clauses.reserve(p.num_hard + p.num_soft);
    for (std::uint32_t i = 0; i < p.num_hard; ++i) {
        Clause c{random_clause(rng, p.num_vars, p.hard_len), ClauseKind::Hard, 1};
        if (p.planted && std::none_of(c.literals.begin(), c.literals.end(),
                                      [&](const Literal& l) { return hidden.satisfies(l); })) {
            Literal& l = c.literals[rng.below(c.literals.size())];
            l = ~l;
        }
        clauses.push_back(std::move(c));
    }
    for (std::uint32_t i = 0; i < p.num_soft; ++i) {
        const auto len = static_cast<std::uint32_t>(rng.below(p.soft_len_max)) + 1;
        const Weight w = rng.below(p.max_weight) + 1;
        clauses.push_back({random_clause(rng, p.num_vars, len), ClauseKind::Soft, w});
    }
    return Formula(p.num_vars, std::move(clauses));
}

}  // namespace fpsmax
