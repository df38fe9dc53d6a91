#pragma once

// Las Vegas uniform sampling of representations.

#include "qfmod/blockdiag.hpp"
#include "qfmod/counting.hpp"
#include "qfmod/random.hpp"
#include "qfmod/symbols.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfmod {

enum class RepKind { Any, Primitive, NonPrimitive };

std::string to_string(RepKind kind);

enum class SampleStatus { Solution, NoSolution, Fail };

struct SampleOutcome {
  SampleStatus status = SampleStatus::NoSolution;
  std::vector<Integer> x;

  static SampleOutcome solution(std::vector<Integer> x) { return {SampleStatus::Solution, std::move(x)}; }
  static SampleOutcome no_solution() { return {SampleStatus::NoSolution, {}}; }
  static SampleOutcome fail() { return {SampleStatus::Fail, {}}; }
  bool ok() const { return status == SampleStatus::Solution; }
};

/// Retry cap for every rejection loop and for full restarts.
inline constexpr int kRetryCap = 64;

/// Counters for the rejection steps. Trials count single iterations.
struct SamplerStats {
  std::uint64_t split_trials = 0;
  std::uint64_t split_rejections = 0;
  std::uint64_t symbol_trials = 0;
  std::uint64_t symbol_rejections = 0;
  std::uint64_t restarts = 0;
  std::uint64_t failures = 0;

  SamplerStats& operator+=(const SamplerStats& o);
  double split_rejection_rate() const;
};

/// Uniform element of the class of g. Throws LasVegasFailure (odd p only)
/// once the retry cap is hit, DomainError if the class is empty.
Integer sample_symbol_elem(const PrimePower& pp, const PkSymbol& g, RandomSource& rng,
                           SamplerStats* stats = nullptr);

/// Uniform (a, b) with symbols g1, g2 and a + b = t. std::nullopt when no
/// such pair exists; throws LasVegasFailure.
std::optional<std::pair<Integer, Integer>> sample_split(const PrimePower& pp, const Integer& t, const PkSymbol& g1,
                                                        const PkSymbol& g2, RandomSource& rng,
                                                        SamplerStats* stats = nullptr);

/// Uniform solution of d x^2 = t (mod p^k) of the given kind. Fail is
/// reported as an outcome, never thrown.
SampleOutcome sample_type1(const Integer& d, const PrimePower& pp, const Integer& t, RepKind kind,
                           RandomSource& rng);

/// Uniform solution of the type II block equation (mod 2^k). Never fails.
SampleOutcome sample_type2(const TypeII& blk, Exponent k, const Integer& t, RepKind kind, RandomSource& rng);

/// Samples solutions of x'Qx = t (mod p^k), reusing one diagonalization and
/// one set of count tables across calls.
class FormSampler {
 public:
  FormSampler(const QuadraticForm& q, const PrimePower& pp);

  const FormCounter& counter() const { return counter_; }
  const SamplerStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

  /// Retries whole draws up to kRetryCap times before reporting Fail.
  SampleOutcome sample(const Integer& t, RepKind kind, RandomSource& rng);

 private:
  std::vector<Integer> draw(std::size_t level, const Integer& t, RepKind kind, RandomSource& rng);
  std::vector<Integer> draw_block(std::size_t level, const Integer& t, RepKind kind, RandomSource& rng);

  FormCounter counter_;
  SamplerStats stats_;
};

SampleOutcome sample_form(const QuadraticForm& q, const PrimePower& pp, const Integer& t, RepKind kind,
                          RandomSource& rng);

/// x = r_i (mod m_i) for pairwise coprime m_i; result in [0, prod m_i).
Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli);

/// Samples x'Qx = t (mod prod p_i^k_i) by sampling per prime power and
/// recombining. NonPrimitive draws the set of primes where x is
/// non-primitive with probability proportional to its count.
class CompositeSampler {
 public:
  CompositeSampler(const QuadraticForm& q, std::vector<PrimePower> factors);

  RepCounts counts(const Integer& t) const;
  SampleOutcome sample(const Integer& t, RepKind kind, RandomSource& rng);
  SamplerStats stats() const;

 private:
  std::vector<PrimePower> factors_;
  std::vector<FormSampler> samplers_;
};

SampleOutcome sample_composite(const QuadraticForm& q, const std::vector<PrimePower>& factors, const Integer& t,
                               RepKind kind, RandomSource& rng);

}  // namespace qfmod
