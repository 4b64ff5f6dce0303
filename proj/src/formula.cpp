#include "fpsmax/formula.hpp"

#include <algorithm>
#include <unordered_set>

namespace fpsmax {

namespace {

// Removes duplicate literals in place, keeping first occurrences.
// Returns false when the clause contains a complementary pair.
bool normalize_literals(std::vector<Literal>& lits) {
    std::vector<Literal> out;
    out.reserve(lits.size());
    if (lits.size() <= 16) {
        for (const Literal& l : lits) {
            if (std::find(out.begin(), out.end(), ~l) != out.end()) return false;
            if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
        }
    } else {
        std::unordered_set<std::int64_t> seen;
        for (const Literal& l : lits) {
            if (seen.count(-l.to_dimacs())) return false;
            if (seen.insert(l.to_dimacs()).second) out.push_back(l);
        }
    }
    lits = std::move(out);
    return true;
}

Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw FormulaError("total soft weight exceeds 64 bits");
    }
    return r;
}

}  // namespace

Formula::Formula(Var num_vars, std::vector<Clause> clauses) : num_vars_(num_vars) {
    clauses_.reserve(clauses.size());
    for (Clause& c : clauses) {
        if (!c.is_hard() && c.weight == 0) throw FormulaError("soft clause weight must be positive");
        for (const Literal& l : c.literals) {
            if (l.var == 0 || l.var > num_vars_) {
                throw FormulaError("literal " + std::to_string(l.to_dimacs()) +
                                   " outside variable range 1.." + std::to_string(num_vars_));
            }
        }
        if (!normalize_literals(c.literals)) continue;
        if (c.is_hard()) {
            c.weight = 1;
            if (c.literals.empty()) {
                ++empty_hard_;
                continue;
            }
            ++num_hard_;
        } else {
            total_soft_ = checked_add(total_soft_, c.weight);
            if (c.literals.empty()) {
                offset_ += c.weight;
                continue;
            }
            max_soft_ = std::max(max_soft_, c.weight);
            if (c.weight != 1) weighted_ = true;
        }
        clauses_.push_back(std::move(c));
    }
}

Cost evaluate_cost(const Formula& f, const Assignment& a) {
    if (a.size() != f.num_vars()) {
        throw FormulaError("assignment has " + std::to_string(a.size()) + " values, formula has " +
                           std::to_string(f.num_vars()) + " variables");
    }
    if (f.trivially_infeasible()) return Cost::infeasible();
    Weight cost = f.cost_offset();
    for (const Clause& c : f.clauses()) {
        bool sat = std::any_of(c.literals.begin(), c.literals.end(),
                               [&](const Literal& l) { return a.satisfies(l); });
        if (sat) continue;
        if (c.is_hard()) return Cost::infeasible();
        cost += c.weight;
    }
    return Cost{cost};
}

bool is_feasible(const Formula& f, const Assignment& a) { return evaluate_cost(f, a).feasible(); }

}  // namespace fpsmax
