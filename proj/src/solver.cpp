#include "fpsmax/solver.hpp"

#include <stdexcept>
#include <string>

namespace fpsmax {

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::Fps: return "fps";
        case Mode::Single: return "single";
        case Mode::FpsRandomWalk: return "fps-rw";
        case Mode::FpsAlways: return "fps-always";
        case Mode::FpsNoStop: return "fps-nostop";
    }
    return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
    for (Mode m : {Mode::Fps, Mode::Single, Mode::FpsRandomWalk, Mode::FpsAlways, Mode::FpsNoStop}) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

SolverConfig SolverConfig::for_mode(Mode mode) {
    SolverConfig cfg;
    switch (mode) {
        case Mode::Fps: break;
        case Mode::Single: cfg.strategy = Strategy::SingleFlip; break;
        case Mode::FpsRandomWalk: cfg.escape = Escape::RandomWalk; break;
        case Mode::FpsAlways: cfg.lookahead_always = true; break;
        case Mode::FpsNoStop: cfg.early_stop = false; break;
    }
    return cfg;
}

void SolverConfig::validate() const {
    if (sc_num < 1) throw std::invalid_argument("sc_num must be at least 1");
    if (sv_num < 1) throw std::invalid_argument("sv_num must be at least 1");
    if (!(time_limit.count() > 0.0)) throw std::invalid_argument("time limit must be positive");
    if (max_flips && *max_flips == 0) throw std::invalid_argument("max_flips must be positive");
    if (weighting) weighting->validate();
}

std::vector<ClauseId> sample_falsified_clauses(const SearchState& s, std::uint32_t sc_num, Rng& rng) {
    const IndexedSet& pool = s.falsified_hard().empty() ? s.falsified_soft() : s.falsified_hard();
    if (pool.empty()) throw EngineError("no falsified clauses to sample");
    std::vector<ClauseId> out(sc_num);
    for (auto& c : out) c = pool[rng.below(pool.size())];
    return out;
}

namespace {

WeightingParams weighting_for(const Formula& f, const SolverConfig& cfg) {
    cfg.validate();
    return cfg.weighting ? *cfg.weighting : WeightingParams::defaults_for(f);
}

}  // namespace

Solver::Solver(const Formula& f, const SolverConfig& cfg)
    : formula_(f),
      cfg_(cfg),
      start_(std::chrono::steady_clock::now()),
      rng_(cfg.seed),
      state_(f, weighting_for(f, cfg), rng_),
      fv_mark_(f.num_vars() + 1, 0) {
    fv_.reserve(cfg_.sc_num);
}

StepOutcome Solver::step() { return cfg_.strategy == Strategy::FPS ? fps_step() : single_flip_step(); }

StepOutcome Solver::single_flip_step() {
    const IndexedSet& good = state_.good_vars();
    if (!good.empty()) {
        Var v = good[rng_.below(good.size())];
        state_.flip(v);
        return {StepOutcome::Kind::GoodVar, v, 0};
    }
    if (!state_.has_falsified()) return {};
    state_.update_weights(rng_);
    return random_walk_escape();
}

StepOutcome Solver::random_walk_escape() {
    const IndexedSet& pool = state_.falsified_hard().empty() ? state_.falsified_soft() : state_.falsified_hard();
    if (pool.empty()) return {};
    const ClauseId c = pool[rng_.below(pool.size())];
    Var best = 0;
    Score best_score = 0;
    std::uint64_t ties = 0;
    for (const Literal& l : state_.literals(c)) {
        const Score sc = state_.score(l.var);
        if (best == 0 || sc > best_score) {
            best = l.var;
            best_score = sc;
            ties = 1;
        } else if (sc == best_score && rng_.below(++ties) == 0) {
            best = l.var;
        }
    }
    state_.flip(best);
    return {StepOutcome::Kind::RandomWalk, best, 0};
}

StepOutcome Solver::fps_step() {
    const IndexedSet& good = state_.good_vars();
    if (!cfg_.lookahead_always && !good.empty()) {
        Var v = good[rng_.below(good.size())];
        state_.flip(v);
        return {StepOutcome::Kind::GoodVar, v, 0};
    }
    if (!state_.has_falsified()) return {};
    state_.update_weights(rng_);
    return lookahead();
}

Var Solver::second_level_pick(Var first) {
    const IndexedSet& good = state_.good_vars();
    const std::size_t skip = good.contains(first) ? good.position(first) : kNoSkip;
    if (good.size() - (skip == kNoSkip ? 0 : 1) == 0) return 0;
    return bms_pick(good.items(), cfg_.sv_num, rng_, [&](Var v) { return state_.score(v); }, skip);
}

StepOutcome Solver::lookahead() {
    const std::vector<ClauseId> sampled = sample_falsified_clauses(state_, cfg_.sc_num, rng_);
    ++fv_stamp_;
    fv_.clear();
    for (ClauseId c : sampled) {
        auto lits = state_.literals(c);
        const Var v = lits[rng_.below(lits.size())].var;
        if (fv_mark_[v] != fv_stamp_) {
            fv_mark_[v] = fv_stamp_;
            fv_.push_back(v);
        }
    }

    Var v1 = fv_.front();
    Score s1 = state_.score(v1);
    for (Var v : fv_) {
        if (state_.score(v) > s1) {
            v1 = v;
            s1 = state_.score(v);
        }
    }

    bool have_pair = false;
    Score s2 = 0;
    Var pair_first = 0;
    Var pair_second = 0;
    for (Var fv : fv_) {
        const Score first_score = state_.score(fv);
        const ProbeToken token = state_.begin_probe(fv);
        const Var sv = second_level_pick(fv);
        const Score second_score = sv != 0 ? state_.score(sv) : 0;
        state_.end_probe(token);
        if (sv == 0) continue;

        const Score total = first_score + second_score;
        if (cfg_.early_stop && total > 0) {
            state_.flip(fv);
            state_.flip(sv);
            return {StepOutcome::Kind::EarlyStopPair, fv, sv};
        }
        if (!have_pair || total > s2) {
            have_pair = true;
            s2 = total;
            pair_first = fv;
            pair_second = sv;
        }
    }

    const bool improving_pair = have_pair && s2 > 0;
    if (!improving_pair && cfg_.escape == Escape::RandomWalk) return random_walk_escape();
    if (improving_pair || (have_pair && s2 >= s1)) {
        state_.flip(pair_first);
        state_.flip(pair_second);
        return {StepOutcome::Kind::Pair, pair_first, pair_second};
    }
    state_.flip(v1);
    return {StepOutcome::Kind::BestSingle, v1, 0};
}

RunResult Solver::run(const ImprovementCallback& on_improve) {
    RunResult result;
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); };
    Cost reported;
    auto report = [&] {
        const Cost best = state_.best_cost();
        if (!(best < reported)) return;
        reported = best;
        const double t = elapsed();
        result.time_to_best_s = t;
        result.improvement_trace.emplace_back(t, best.value());
        if (on_improve) on_improve(best.value(), t);
    };

    report();
    const Weight floor = formula_.cost_offset();
    std::uint64_t iterations = 0;
    while (!formula_.trivially_infeasible()) {
        if (state_.best_cost().feasible() && state_.best_cost().value() == floor) break;
        if (cfg_.max_flips && state_.flips() >= *cfg_.max_flips) break;
        if ((iterations++ & 15) == 0 && elapsed() >= cfg_.time_limit.count()) break;
        if (step().kind == StepOutcome::Kind::None) break;
        report();
    }

    result.flips = state_.flips();
    result.elapsed_s = elapsed();
    result.best_cost = state_.best_cost();
    if (result.best_cost.feasible()) {
        result.status = RunStatus::Feasible;
        result.best_assignment = state_.best_assignment();
    }
    return result;
}

RunResult solve(const Formula& f, const SolverConfig& cfg, const ImprovementCallback& on_improve) {
    Solver solver(f, cfg);
    RunResult result = solver.run(on_improve);
    if (result.best_assignment && evaluate_cost(f, *result.best_assignment) != result.best_cost) {
        throw std::logic_error("best assignment does not re-evaluate to the reported cost");
    }
    return result;
}

}  // namespace fpsmax
