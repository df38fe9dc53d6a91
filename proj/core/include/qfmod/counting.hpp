#pragma once

// Exact representation counts for blocks, forms, and composite moduli.

#include "qfmod/blockdiag.hpp"
#include "qfmod/matrix.hpp"
#include "qfmod/modring.hpp"
#include "qfmod/symbols.hpp"

#include <string>
#include <vector>

namespace qfmod {

struct RepCounts {
  Integer total;
  Integer primitive;
  Integer nonprimitive;

  static RepCounts from(Integer primitive, Integer nonprimitive) {
    Integer total = primitive + nonprimitive;
    return {std::move(total), std::move(primitive), std::move(nonprimitive)};
  }
  friend bool operator==(const RepCounts&, const RepCounts&) = default;
  std::string to_string() const;
};

/// d x^2 = t (mod p^k), p odd; t is any element with symbol gt.
RepCounts count_type1_odd(const Integer& d, const PrimePower& pp, const PkSymbol& gt);

/// d x^2 = t (mod 2^k).
RepCounts count_type1_two(const Integer& d, Exponent k, const PkSymbol& gt);

/// 2^(ell+1) (a x^2 + b x y + c y^2) = t (mod 2^k), b odd.
RepCounts count_type2(const TypeII& blk, Exponent k, const PkSymbol& gt);

/// Counts for a*x^2 + b*x*y + c*y^2 = s (mod 2^m), b odd, m >= 0.
RepCounts count_type2_star(const Integer& a, const Integer& b, const Integer& c, const Integer& s, Exponent m);

RepCounts count_block(const Block& blk, const PrimePower& pp, const PkSymbol& gt);

/// Per-symbol count tables for one form, built once and queried for many t.
class FormCounter {
 public:
  FormCounter(const QuadraticForm& q, const PrimePower& pp);

  const PrimePower& modulus() const { return pp_; }
  const BlockDiagForm& diagonal() const { return bd_; }
  const std::vector<PkSymbol>& symbols() const { return syms_; }
  const std::vector<std::vector<SplitEntry>>& splits() const { return splits_; }

  /// Counts of block j alone, indexed by symbol.
  const std::vector<RepCounts>& block_table(std::size_t j) const { return block_tables_[j]; }
  /// Counts of blocks j.. combined, indexed by symbol.
  const std::vector<RepCounts>& suffix_table(std::size_t j) const { return suffix_tables_[j]; }
  std::size_t num_blocks() const { return bd_.blocks.size(); }

  RepCounts count(const Integer& t) const;
  RepCounts count(const PkSymbol& g) const;

 private:
  PrimePower pp_;
  std::size_t n_;
  BlockDiagForm bd_;
  std::vector<PkSymbol> syms_;
  std::vector<std::vector<SplitEntry>> splits_;
  std::vector<std::vector<RepCounts>> block_tables_;
  std::vector<std::vector<RepCounts>> suffix_tables_;
};

RepCounts count_form(const QuadraticForm& q, const PrimePower& pp, const Integer& t);

/// Reduced A_{p^s}(Q, t) / p^(s(n-1)) with s = 1 + ord_p(8 t det Q).
/// Throws SingularForm if det Q = 0 and ZeroTarget if t = 0.
Rational local_density(const QuadraticForm& q, const Integer& p, const Integer& t);

/// The level s = 1 + ord_p(8 t det Q) used by local_density.
Exponent stable_level(const QuadraticForm& q, const Integer& p, const Integer& t);

/// Counts mod q = prod p_i^k_i. A vector is primitive iff it is primitive
/// at every prime. Throws DomainError on a repeated prime.
RepCounts count_composite(const QuadraticForm& q, const std::vector<PrimePower>& factors, const Integer& t);

void require_coprime_factors(const std::vector<PrimePower>& factors);

}  // namespace qfmod
