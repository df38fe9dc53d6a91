#pragma once

// Brute-force enumeration and a chi-square uniformity test. Used as the
// independent reference for the fast algorithms.

#include "qfmod/counting.hpp"
#include "qfmod/matrix.hpp"
#include "qfmod/modring.hpp"

#include <cstdint>
#include <vector>

namespace qfmod {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Counts for every t in [0, q) at once, by exhaustive enumeration.
struct RepTally {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> total;
  std::vector<std::uint64_t> primitive;

  RepCounts at(std::uint64_t t) const;
};

struct Enumeration {
  std::vector<std::vector<std::uint64_t>> vectors;
  RepCounts counts;
};

/// Tally over (Z/q)^n where q = prod of the given prime powers. A vector
/// is primitive iff for every prime some component is a unit. Throws
/// BudgetExceeded if q^n > budget.
RepTally tally_reps(const QuadraticForm& q, const std::vector<PrimePower>& factors,
                    std::uint64_t budget = kDefaultBudget);
RepTally tally_reps(const QuadraticForm& q, const PrimePower& pp, std::uint64_t budget = kDefaultBudget);

/// All solutions of x'Qx = t, in odometer order (last coordinate fastest).
Enumeration enumerate_reps(const QuadraticForm& q, const PrimePower& pp, const Integer& t,
                           std::uint64_t budget = kDefaultBudget);
Enumeration enumerate_reps(const QuadraticForm& q, const std::vector<PrimePower>& factors, const Integer& t,
                           std::uint64_t budget = kDefaultBudget);

struct ChiSquare {
  Rational statistic;
  double critical = 0.0;
  bool pass = false;
};

/// Pearson statistic of the histogram against the uniform law on
/// support_size cells (missing cells count as 0), tested at alpha = 0.001.
/// Throws InsufficientSamples if fewer than 5 * support_size observations,
/// DomainError if support_size is 0 or above 256.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& observed, std::uint64_t support_size);

/// Upper 0.001 quantile of chi-square with df in [1, 255] degrees of freedom.
double chi_square_critical(std::uint64_t df);

}  // namespace qfmod
