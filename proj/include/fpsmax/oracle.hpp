#ifndef FPSMAX_ORACLE_HPP
#define FPSMAX_ORACLE_HPP

#include <optional>

#include "fpsmax/formula.hpp"

namespace fpsmax {

inline constexpr Var kExactSolveMaxVars = 26;

struct ExactResult {
    Cost cost;
    std::optional<Assignment> witness;
};

/// Minimum cost over all 2^n assignments by plain enumeration. The witness
/// is the first optimal assignment in binary counting order (variable 1 is
/// the least significant bit). Throws FormulaError above kExactSolveMaxVars.
ExactResult exact_solve(const Formula& f);

}  // namespace fpsmax

#endif
