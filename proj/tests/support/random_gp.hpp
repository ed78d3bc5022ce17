#pragma once

#include "gpseq/gp_expr.hpp"

#include <random>

namespace gpseq::testing {

inline ExactReal random_constant(std::mt19937_64& rng)
{
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return ExactReal::sqrt(2);
    case 1: return ExactReal::sqrt(3);
    case 2: {
        ExactReal phi = ExactReal::sqrt(5) - ExactReal(1);
        phi *= Rational(1, 2);
        return phi;
    }
    case 3: return ExactReal(Rational(std::uniform_int_distribution<int>(-7, 7)(rng),
                                      std::uniform_int_distribution<int>(1, 5)(rng)));
    default: return ExactReal(std::uniform_int_distribution<int>(-3, 3)(rng));
    }
}

/// Random expression tree of depth <= depth.
inline GPExpr random_expr(std::mt19937_64& rng, int depth)
{
    const int leaf = depth <= 1 ? 1 : 0;
    const int k = std::uniform_int_distribution<int>(leaf ? 0 : 2, leaf ? 1 : 8)(rng);
    switch (k) {
    case 0: return GPExpr::constant(random_constant(rng));
    case 1: return GPExpr::var();
    case 2: return GPExpr::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return GPExpr::sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return GPExpr::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return GPExpr::pow(random_expr(rng, depth - 1), std::uniform_int_distribution<unsigned>(0, 2)(rng));
    case 6:
    case 7: return GPExpr::floor(random_expr(rng, depth - 1));
    default: return GPExpr::frac(random_expr(rng, depth - 1));
    }
}

} // namespace gpseq::testing
