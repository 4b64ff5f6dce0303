#ifndef FPSMAX_ENGINE_HPP
#define FPSMAX_ENGINE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fpsmax/formula.hpp"
#include "fpsmax/indexed_set.hpp"
#include "fpsmax/rng.hpp"

namespace fpsmax {

using Score = std::int64_t;

/// Clause weighting scheme constants. Soft clauses start at their original
/// weight, hard clauses at hard_init.
struct WeightingParams {
    Score hard_init = 1;
    Score h_inc = 1;
    Score s_inc = 1;
    double sp = 0.01;  // smoothing probability
    Score soft_cap = 100;

    /// Unit weights for PMS; for WPMS hard_init = h_inc = ceil(mean soft
    /// weight) and soft_cap = 10 * max soft weight.
    static WeightingParams defaults_for(const Formula& f);
    void validate() const;
};

class EngineError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct ProbeToken {
    Var var = 0;
    std::uint64_t serial = 0;
};

/// Mutable local-search state over a shared immutable Formula.
///
/// Maintains per-clause true-literal counts and dynamic weights, per-variable
/// scores (gain in satisfied dynamic weight if the variable were flipped),
/// the falsified hard/soft clause sets, GoodVars = {x | score(x) > 0} and
/// the best feasible assignment seen. A flip touches only the clauses that
/// contain the flipped variable.
class SearchState {
public:
    SearchState(const Formula& f, const WeightingParams& wp, Rng& rng);
    SearchState(const Formula& f, const WeightingParams& wp, const Assignment& initial);

    const Formula& formula() const { return *formula_; }
    const WeightingParams& weighting() const { return wp_; }

    bool value(Var v) const { return values_[v] != 0; }
    Assignment assignment() const;
    Score score(Var v) const { return score_[v]; }
    Score dyn_weight(ClauseId c) const { return dyn_[c]; }
    Score initial_weight(ClauseId c) const;
    std::uint32_t sat_count(ClauseId c) const { return sat_count_[c]; }
    std::span<const Literal> literals(ClauseId c) const {
        return {lits_.data() + lit_begin_[c], lits_.data() + lit_begin_[c + 1]};
    }

    const IndexedSet& good_vars() const { return good_; }
    const IndexedSet& falsified_hard() const { return unsat_hard_; }
    const IndexedSet& falsified_soft() const { return unsat_soft_; }
    bool has_falsified() const { return !unsat_hard_.empty() || !unsat_soft_.empty(); }

    Cost current_cost() const;
    Cost best_cost() const { return best_cost_; }
    /// Valid only when best_cost() is feasible.
    const Assignment& best_assignment() const { return best_; }
    std::uint64_t flips() const { return flips_; }

    void flip(Var v);

    /// Hypothetically flips v: scores and GoodVars reflect the flipped state
    /// until end_probe restores everything exactly. Flip counter, weights
    /// and best-solution bookkeeping are untouched. Probes do not nest.
    ProbeToken begin_probe(Var v);
    void end_probe(ProbeToken token);
    bool probing() const { return probe_open_; }

    /// One clause-weighting step: smoothing with probability sp, otherwise
    /// increase the weights of falsified clauses.
    void update_weights(Rng& rng);

    /// Replaces the current assignment (weights are kept) and rebuilds all
    /// derived structures. The best solution is updated if improved.
    void reset_assignment(const Assignment& a);

private:
    struct Occurrence {
        ClauseId clause;
        bool positive;
    };

    SearchState(const Formula& f, const WeightingParams& wp);
    void rebuild();
    void apply_flip(Var v);
    void add_score(Var v, Score delta);
    void mark_falsified(ClauseId c);
    void mark_satisfied(ClauseId c);
    void record_if_better();
    void check_var(Var v) const;

    const Formula* formula_;
    WeightingParams wp_;

    std::vector<std::uint32_t> lit_begin_;
    std::vector<Literal> lits_;
    std::vector<std::uint32_t> occ_begin_;
    std::vector<Occurrence> occ_;
    std::vector<std::uint8_t> hard_;

    std::vector<std::uint8_t> values_;  // indexed by Var, slot 0 unused
    std::vector<Score> dyn_;
    std::vector<std::uint32_t> sat_count_;
    std::vector<Var> true_xor_;  // xor of variables of true literals
    std::vector<Score> score_;
    IndexedSet good_;
    IndexedSet unsat_hard_;
    IndexedSet unsat_soft_;
    Weight unsat_soft_weight_ = 0;

    Cost best_cost_;
    Assignment best_;
    std::uint64_t flips_ = 0;

    bool probe_open_ = false;
    bool sets_frozen_ = false;
    std::uint64_t probe_serial_ = 0;
};

}  // namespace fpsmax

#endif
