#pragma once

// p^k-symbols, class sizes and split sizes.

#include "qfmod/modring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qfmod {

/// (ord, sgn) of an element of Z/p^k. ord is infinite iff sgn == 0.
struct PkSymbol {
  Order ord;
  SignValue sgn = 0;

  static PkSymbol zero() { return {}; }
  bool is_zero() const { return ord.is_infinite(); }

  friend bool operator==(const PkSymbol&, const PkSymbol&) = default;
  std::string to_string() const;
};

PkSymbol symbol_of(const PrimePower& pp, const Integer& t);

/// True if the pair is a well-formed symbol for pp (it may still have an
/// empty class when p = 2 and ord is close to k).
bool is_valid_symbol(const PrimePower& pp, const PkSymbol& s);

/// Number of elements of Z/p^k with symbol s. For p = 2 and k - ord < 3
/// this is 1 if sgn < 2^(k-ord) and 0 otherwise.
Integer class_size(const PrimePower& pp, const PkSymbol& s);

/// All symbols in index order: 2k+1 for odd p, 4k+1 for p = 2.
std::vector<PkSymbol> enumerate_symbols(const PrimePower& pp);
std::size_t symbol_count(const PrimePower& pp);
/// Position of s in enumerate_symbols(pp).
std::size_t symbol_index(const PrimePower& pp, const PkSymbol& s);

/// The canonical element p^ord * u of a non-empty class, with u = sgn for
/// p = 2 and u the least positive unit of the right residuosity otherwise.
Integer representative(const PrimePower& pp, const PkSymbol& s);

/// Number of x mod p with (x/p) = s1 and ((x + a)/p) = s2, where (a/p) = leg_a.
Integer split_pair_count_mod_p(const Integer& p, int leg_a, int s1, int s2);

/// |{(a, b) : symbol(a) = g1, symbol(b) = g2, a + b = t}| for any t with
/// symbol g.
Integer split_class_size(const PrimePower& pp, const PkSymbol& g, const PkSymbol& g1, const PkSymbol& g2);

struct SplitEntry {
  std::size_t left;
  std::size_t right;
  Integer size;
};

/// For every target symbol index, the (g1, g2) pairs with non-zero split
/// size. Built in O(symbols^2) by solving for g2 wherever it is forced.
std::vector<std::vector<SplitEntry>> split_table(const PrimePower& pp);

}  // namespace qfmod
