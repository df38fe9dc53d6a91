#pragma once

// Quadratic residuosity and square roots modulo p and p^k.

#include "qfmod/modring.hpp"
#include "qfmod/random.hpp"

#include <array>
#include <vector>

namespace qfmod {

/// Retry cap for the random non-residue search.
inline constexpr int kNonResidueRetryCap = 64;

/// True iff x^2 = t (mod p^k) is solvable. t = 0 mod p^k counts as a square.
bool is_square(const PrimePower& pp, const Integer& t);

/// Both roots of x^2 = t (mod p), ascending. Tonelli-Shanks with a random
/// non-residue. Throws NonResidue, or LasVegasFailure once the retry cap
/// is exhausted.
std::array<Integer, 2> sqrt_unit_mod_p(const Integer& p, const Integer& t, RandomSource& rng);

/// Both roots of x^2 = t (mod p^k) for an odd prime and a unit residue t,
/// ascending. The mod-p root is lifted by doubling the precision each step.
std::array<Integer, 2> lift_sqrt_odd(const PrimePower& pp, const Integer& t, RandomSource& rng);

/// The complete root set of x^2 = t (mod 2^k) for odd t, ascending: one root
/// for k = 1, two for k = 2, four otherwise. Throws NotASquare unless
/// t = 1 mod min(8, 2^k).
std::vector<Integer> sqrt_unit_mod_2k(Exponent k, const Integer& t);

}  // namespace qfmod
