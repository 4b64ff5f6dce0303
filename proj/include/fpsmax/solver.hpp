#ifndef FPSMAX_SOLVER_HPP
#define FPSMAX_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fpsmax/engine.hpp"
#include "fpsmax/formula.hpp"
#include "fpsmax/rng.hpp"

namespace fpsmax {

enum class Strategy { SingleFlip, FPS };
enum class Escape { BestOfSampled, RandomWalk };

/// Named presets: FPS defaults and its three ablations, plus the
/// single-flip baseline.
enum class Mode { Fps, Single, FpsRandomWalk, FpsAlways, FpsNoStop };

const char* to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

struct SolverConfig {
    Strategy strategy = Strategy::FPS;
    std::uint32_t sc_num = 10;
    std::uint32_t sv_num = 50;
    Escape escape = Escape::BestOfSampled;
    bool lookahead_always = false;
    bool early_stop = true;
    std::chrono::duration<double> time_limit{300.0};
    std::optional<std::uint64_t> max_flips;
    std::uint64_t seed = 1;
    /// Unset means WeightingParams::defaults_for(formula).
    std::optional<WeightingParams> weighting;

    static SolverConfig for_mode(Mode mode);
    void validate() const;
};

enum class RunStatus { Feasible, NoFeasibleFound };

struct RunResult {
    RunStatus status = RunStatus::NoFeasibleFound;
    Cost best_cost;
    std::optional<Assignment> best_assignment;
    std::uint64_t flips = 0;
    double elapsed_s = 0.0;
    double time_to_best_s = 0.0;
    std::vector<std::pair<double, Weight>> improvement_trace;
};

/// Called with (cost, elapsed seconds) each time the best cost improves.
using ImprovementCallback = std::function<void(Weight, double)>;

/// What one step did; used by callers that need to observe decisions.
struct StepOutcome {
    enum class Kind { None, GoodVar, RandomWalk, BestSingle, Pair, EarlyStopPair };
    Kind kind = Kind::None;
    Var first = 0;
    Var second = 0;
};

/// Draws sc_num falsified clauses uniformly with replacement, from the
/// falsified hard clauses if any exist, otherwise from the falsified soft
/// clauses. Throws EngineError when nothing is falsified.
std::vector<ClauseId> sample_falsified_clauses(const SearchState& s, std::uint32_t sc_num, Rng& rng);

inline constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();

/// Best from Multiple Selections: sv_num uniform draws with replacement,
/// returns the draw with the highest score (first drawn wins ties). The
/// candidate at position `skip`, if given, is excluded from the draws.
template <typename ScoreFn>
Var bms_pick(std::span<const Var> candidates, std::uint32_t sv_num, Rng& rng, ScoreFn&& score,
             std::size_t skip = kNoSkip) {
    const bool skipping = skip < candidates.size();
    const std::size_t n = candidates.size() - (skipping ? 1 : 0);
    if (n == 0) throw EngineError("bms_pick on an empty candidate set");
    auto draw = [&]() {
        std::size_t i = rng.below(n);
        return candidates[skipping && i >= skip ? i + 1 : i];
    };
    Var best = draw();
    Score best_score = score(best);
    for (std::uint32_t i = 1; i < sv_num; ++i) {
        Var v = draw();
        Score sv = score(v);
        if (sv > best_score) {
            best = v;
            best_score = sv;
        }
    }
    return best;
}

/// Local search driver for one run: Algorithm-1 style single flipping or
/// FPS (two-level look-ahead at single-flip local optima).
class Solver {
public:
    Solver(const Formula& f, const SolverConfig& cfg);

    SearchState& state() { return state_; }
    const SearchState& state() const { return state_; }
    Rng& rng() { return rng_; }

    StepOutcome step();
    StepOutcome single_flip_step();
    StepOutcome fps_step();

    /// First-level variables sampled by the last FPS look-ahead, in order.
    std::span<const Var> first_level() const { return fv_; }

    RunResult run(const ImprovementCallback& on_improve = {});

private:
    StepOutcome random_walk_escape();
    StepOutcome lookahead();
    Var second_level_pick(Var first);

    const Formula& formula_;
    SolverConfig cfg_;
    std::chrono::steady_clock::time_point start_;
    Rng rng_;
    SearchState state_;

    std::vector<Var> fv_;
    std::vector<std::uint64_t> fv_mark_;
    std::uint64_t fv_stamp_ = 0;
};

/// Runs a full search and re-verifies the reported best assignment with
/// evaluate_cost before returning.
RunResult solve(const Formula& f, const SolverConfig& cfg, const ImprovementCallback& on_improve = {});

}  // namespace fpsmax

#endif
