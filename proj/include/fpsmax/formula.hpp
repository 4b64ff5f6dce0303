#ifndef FPSMAX_FORMULA_HPP
#define FPSMAX_FORMULA_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpsmax {

using Var = std::uint32_t;       // 1-based
using ClauseId = std::uint32_t;  // position in Formula::clauses()
using Weight = std::uint64_t;

struct Literal {
    Var var = 0;
    bool positive = true;

    static Literal from_dimacs(std::int64_t lit) {
        return lit > 0 ? Literal{static_cast<Var>(lit), true}
                       : Literal{static_cast<Var>(-lit), false};
    }
    std::int64_t to_dimacs() const {
        return positive ? static_cast<std::int64_t>(var) : -static_cast<std::int64_t>(var);
    }
    Literal operator~() const { return {var, !positive}; }
    friend bool operator==(const Literal&, const Literal&) = default;
};

enum class ClauseKind : std::uint8_t { Hard, Soft };

struct Clause {
    std::vector<Literal> literals;
    ClauseKind kind = ClauseKind::Soft;
    Weight weight = 1;  // ignored for hard clauses

    bool is_hard() const { return kind == ClauseKind::Hard; }
    friend bool operator==(const Clause&, const Clause&) = default;
};

/// Total weight of falsified soft clauses, or Infeasible. Infeasible orders
/// above every finite cost.
class Cost {
public:
    constexpr Cost() = default;  // Infeasible
    constexpr explicit Cost(Weight value) : value_(value) {}

    static constexpr Cost infeasible() { return Cost{}; }

    constexpr bool feasible() const { return value_.has_value(); }
    constexpr Weight value() const { return *value_; }

    friend constexpr bool operator==(const Cost&, const Cost&) = default;
    friend constexpr std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
        if (a.feasible() != b.feasible()) {
            return a.feasible() ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (!a.feasible()) return std::strong_ordering::equal;
        return *a.value_ <=> *b.value_;
    }

    std::string to_string() const { return feasible() ? std::to_string(*value_) : "infeasible"; }

private:
    std::optional<Weight> value_;
};

/// Truth values for variables 1..num_vars.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t num_vars, bool fill = false) : values_(num_vars, fill) {}
    explicit Assignment(std::vector<std::uint8_t> values) : values_(std::move(values)) {}

    std::size_t size() const { return values_.size(); }
    bool operator[](Var v) const { return values_[v - 1] != 0; }
    void set(Var v, bool value) { values_[v - 1] = value ? 1 : 0; }
    bool satisfies(Literal lit) const { return (*this)[lit.var] == lit.positive; }

    std::span<const std::uint8_t> raw() const { return values_; }
    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<std::uint8_t> values_;
};

class FormulaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable (weighted) partial MaxSAT instance.
///
/// Construction normalizes the clause list: duplicate literals are merged,
/// tautologies are dropped, and empty clauses are removed from the clause
/// list. An empty soft clause contributes its weight to cost_offset(); an
/// empty hard clause makes the instance trivially infeasible.
class Formula {
public:
    Formula() = default;
    Formula(Var num_vars, std::vector<Clause> clauses);

    Var num_vars() const { return num_vars_; }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(ClauseId c) const { return clauses_[c]; }
    std::size_t num_clauses() const { return clauses_.size(); }
    std::size_t num_hard() const { return num_hard_; }
    std::size_t num_soft() const { return clauses_.size() - num_hard_; }

    /// True iff some non-empty soft clause has weight other than 1.
    bool is_weighted() const { return weighted_; }
    Weight cost_offset() const { return offset_; }
    std::size_t empty_hard_clauses() const { return empty_hard_; }
    bool trivially_infeasible() const { return empty_hard_ > 0; }
    Weight total_soft_weight() const { return total_soft_; }
    Weight max_soft_weight() const { return max_soft_; }

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    Var num_vars_ = 0;
    std::vector<Clause> clauses_;
    std::size_t num_hard_ = 0;
    std::size_t empty_hard_ = 0;
    Weight offset_ = 0;
    Weight total_soft_ = 0;
    Weight max_soft_ = 0;
    bool weighted_ = false;
};

/// From-scratch cost of a complete assignment. Throws FormulaError when the
/// assignment length differs from num_vars.
Cost evaluate_cost(const Formula& f, const Assignment& a);
bool is_feasible(const Formula& f, const Assignment& a);

}  // namespace fpsmax

#endif
