#include "fpsmax/engine.hpp"

#include <algorithm>
#include <string>

namespace fpsmax {

WeightingParams WeightingParams::defaults_for(const Formula& f) {
    WeightingParams wp;
    if (!f.is_weighted()) return wp;
    const std::size_t n_soft = f.num_soft();
    Weight soft_sum = 0;
    for (const Clause& c : f.clauses()) {
        if (!c.is_hard()) soft_sum += c.weight;
    }
    Score mean_ceil = n_soft == 0 ? 1 : static_cast<Score>((soft_sum + n_soft - 1) / n_soft);
    wp.hard_init = std::max<Score>(1, mean_ceil);
    wp.h_inc = wp.hard_init;
    wp.s_inc = 1;
    const Weight max_w = f.max_soft_weight();
    constexpr Weight limit = static_cast<Weight>(INT64_MAX) / 10;
    wp.soft_cap = max_w > limit ? INT64_MAX : static_cast<Score>(std::max<Weight>(1, max_w) * 10);
    return wp;
}

void WeightingParams::validate() const {
    if (hard_init < 1 || h_inc < 1 || s_inc < 1 || soft_cap < 1) {
        throw EngineError("weighting constants must be positive");
    }
    if (!(sp >= 0.0 && sp <= 1.0)) throw EngineError("smoothing probability must lie in [0, 1]");
}

SearchState::SearchState(const Formula& f, const WeightingParams& wp) : formula_(&f), wp_(wp) {
    wp_.validate();
    const std::size_t m = f.num_clauses();
    const Var n = f.num_vars();

    lit_begin_.reserve(m + 1);
    lit_begin_.push_back(0);
    std::vector<std::uint32_t> occ_count(n + 2, 0);
    for (const Clause& c : f.clauses()) {
        for (const Literal& l : c.literals) {
            lits_.push_back(l);
            ++occ_count[l.var];
        }
        lit_begin_.push_back(static_cast<std::uint32_t>(lits_.size()));
    }
    occ_begin_.assign(n + 2, 0);
    for (Var v = 1; v <= n + 1; ++v) occ_begin_[v] = occ_begin_[v - 1] + occ_count[v - 1];
    occ_.resize(lits_.size());
    std::vector<std::uint32_t> fill(occ_begin_.begin(), occ_begin_.end());
    hard_.resize(m);
    dyn_.resize(m);
    for (ClauseId c = 0; c < m; ++c) {
        const Clause& cl = f.clause(c);
        hard_[c] = cl.is_hard() ? 1 : 0;
        dyn_[c] = initial_weight(c);
        for (const Literal& l : cl.literals) occ_[fill[l.var]++] = {c, l.positive};
    }

    values_.assign(n + 1, 0);
    sat_count_.assign(m, 0);
    true_xor_.assign(m, 0);
    score_.assign(n + 1, 0);
    good_ = IndexedSet(n + 1);
    unsat_hard_ = IndexedSet(m);
    unsat_soft_ = IndexedSet(m);
}

SearchState::SearchState(const Formula& f, const WeightingParams& wp, Rng& rng) : SearchState(f, wp) {
    for (Var v = 1; v <= f.num_vars(); ++v) values_[v] = rng.coin() ? 1 : 0;
    rebuild();
}

SearchState::SearchState(const Formula& f, const WeightingParams& wp, const Assignment& initial)
    : SearchState(f, wp) {
    reset_assignment(initial);
}

Score SearchState::initial_weight(ClauseId c) const {
    const Clause& cl = formula_->clause(c);
    if (cl.is_hard()) return wp_.hard_init;
    return static_cast<Score>(std::min<Weight>(cl.weight, static_cast<Weight>(INT64_MAX)));
}

Assignment SearchState::assignment() const {
    return Assignment(std::vector<std::uint8_t>(values_.begin() + 1, values_.end()));
}

Cost SearchState::current_cost() const {
    if (formula_->trivially_infeasible() || !unsat_hard_.empty()) return Cost::infeasible();
    return Cost{formula_->cost_offset() + unsat_soft_weight_};
}

void SearchState::reset_assignment(const Assignment& a) {
    if (probe_open_) throw EngineError("reset_assignment during an open probe");
    if (a.size() != formula_->num_vars()) throw EngineError("assignment length does not match formula");
    for (Var v = 1; v <= formula_->num_vars(); ++v) values_[v] = a[v] ? 1 : 0;
    rebuild();
}

void SearchState::rebuild() {
    const std::size_t m = formula_->num_clauses();
    std::fill(score_.begin(), score_.end(), 0);
    good_.clear();
    unsat_hard_.clear();
    unsat_soft_.clear();
    unsat_soft_weight_ = 0;
    for (ClauseId c = 0; c < m; ++c) {
        std::uint32_t count = 0;
        Var x = 0;
        for (const Literal& l : literals(c)) {
            if (value(l.var) == l.positive) {
                ++count;
                x ^= l.var;
            }
        }
        sat_count_[c] = count;
        true_xor_[c] = x;
        if (count == 0) {
            mark_falsified(c);
            for (const Literal& l : literals(c)) score_[l.var] += dyn_[c];
        } else if (count == 1) {
            score_[x] -= dyn_[c];
        }
    }
    for (Var v = 1; v <= formula_->num_vars(); ++v) good_.assign(score_[v] > 0, v);
    record_if_better();
}

void SearchState::check_var(Var v) const {
    if (v == 0 || v > formula_->num_vars()) {
        throw EngineError("variable " + std::to_string(v) + " out of range");
    }
}

void SearchState::add_score(Var v, Score delta) {
    score_[v] += delta;
    if (!sets_frozen_) good_.assign(score_[v] > 0, v);
}

void SearchState::mark_falsified(ClauseId c) {
    if (hard_[c]) {
        if (!sets_frozen_) unsat_hard_.insert(c);
    } else {
        unsat_soft_weight_ += formula_->clause(c).weight;
        if (!sets_frozen_) unsat_soft_.insert(c);
    }
}

void SearchState::mark_satisfied(ClauseId c) {
    if (hard_[c]) {
        if (!sets_frozen_) unsat_hard_.erase(c);
    } else {
        unsat_soft_weight_ -= formula_->clause(c).weight;
        if (!sets_frozen_) unsat_soft_.erase(c);
    }
}

void SearchState::apply_flip(Var v) {
    values_[v] ^= 1;
    const bool now = values_[v] != 0;
    for (std::uint32_t i = occ_begin_[v]; i < occ_begin_[v + 1]; ++i) {
        const ClauseId c = occ_[i].clause;
        const Score w = dyn_[c];
        true_xor_[c] ^= v;
        if (occ_[i].positive == now) {
            const std::uint32_t count = ++sat_count_[c];
            if (count == 1) {
                mark_satisfied(c);
                for (const Literal& l : literals(c)) add_score(l.var, -w);
                add_score(v, -w);
            } else if (count == 2) {
                add_score(true_xor_[c] ^ v, w);
            }
        } else {
            const std::uint32_t count = --sat_count_[c];
            if (count == 0) {
                mark_falsified(c);
                for (const Literal& l : literals(c)) add_score(l.var, w);
                add_score(v, w);
            } else if (count == 1) {
                add_score(true_xor_[c], -w);
            }
        }
    }
}

void SearchState::record_if_better() {
    Cost cost = current_cost();
    if (cost.feasible() && cost < best_cost_) {
        best_cost_ = cost;
        best_ = assignment();
    }
}

void SearchState::flip(Var v) {
    check_var(v);
    if (probe_open_) throw EngineError("flip during an open probe");
    apply_flip(v);
    ++flips_;
    record_if_better();
}

ProbeToken SearchState::begin_probe(Var v) {
    check_var(v);
    if (probe_open_) throw EngineError("probes do not nest");
    probe_open_ = true;
    good_.open_journal();
    unsat_hard_.open_journal();
    unsat_soft_.open_journal();
    apply_flip(v);
    return {v, ++probe_serial_};
}

void SearchState::end_probe(ProbeToken token) {
    if (!probe_open_) throw EngineError("no open probe");
    if (token.serial != probe_serial_ || token.var == 0) throw EngineError("probe token mismatch");
    sets_frozen_ = true;
    apply_flip(token.var);
    sets_frozen_ = false;
    good_.rollback();
    unsat_hard_.rollback();
    unsat_soft_.rollback();
    probe_open_ = false;
}

void SearchState::update_weights(Rng& rng) {
    if (probe_open_) throw EngineError("update_weights during an open probe");
    if (rng.chance(wp_.sp)) {
        for (ClauseId c = 0; c < dyn_.size(); ++c) {
            if (sat_count_[c] == 0 || dyn_[c] <= initial_weight(c)) continue;
            --dyn_[c];
            if (sat_count_[c] == 1) add_score(true_xor_[c], 1);
        }
        return;
    }
    for (std::uint32_t c : unsat_hard_.items()) {
        dyn_[c] += wp_.h_inc;
        for (const Literal& l : literals(c)) add_score(l.var, wp_.h_inc);
    }
    for (std::uint32_t c : unsat_soft_.items()) {
        if (dyn_[c] >= wp_.soft_cap) continue;
        const Score inc = std::min(wp_.s_inc, wp_.soft_cap - dyn_[c]);
        dyn_[c] += inc;
        for (const Literal& l : literals(c)) add_score(l.var, inc);
    }
}

}  // namespace fpsmax
