#ifndef FPSMAX_GENERATOR_HPP
#define FPSMAX_GENERATOR_HPP

#include <cstdint>

#include "fpsmax/formula.hpp"

namespace fpsmax {

/// Random (W)PMS instances for testing and benchmarking.
struct GeneratorParams {
    Var num_vars = 50;
    std::uint32_t num_hard = 150;
    std::uint32_t num_soft = 100;
    std::uint32_t hard_len = 3;      // exact hard clause length (capped at num_vars)
    std::uint32_t soft_len_max = 2;  // soft clause lengths are uniform in [1, soft_len_max]
    Weight max_weight = 1;           // 1 gives a PMS instance
    bool planted = true;             // hard clauses satisfied by a hidden assignment
    std::uint64_t seed = 1;
};

Formula generate_formula(const GeneratorParams& p);

}  // namespace fpsmax

#endif
