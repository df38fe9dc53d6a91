#include "qfmod/symbols.hpp"

#include "qfmod/errors.hpp"

#include <algorithm>
#include <utility>

namespace qfmod {

std::string PkSymbol::to_string() const {
  return "(" + ord.to_string() + ", " + std::to_string(sgn) + ")";
}

PkSymbol symbol_of(const PrimePower& pp, const Integer& t) {
  const Valuation v = valuation(pp, pp.reduce(t));
  if (v.ord.is_infinite()) return PkSymbol::zero();
  if (pp.is_two()) return {v.ord, static_cast<SignValue>(mpz_fdiv_ui(v.cop.get_mpz_t(), 8))};
  return {v.ord, legendre(v.cop, pp.p())};
}

bool is_valid_symbol(const PrimePower& pp, const PkSymbol& s) {
  if (s.is_zero()) return s.sgn == 0;
  if (s.ord.value() >= pp.k()) return false;
  if (pp.is_two()) return s.sgn == 1 || s.sgn == 3 || s.sgn == 5 || s.sgn == 7;
  return s.sgn == 1 || s.sgn == -1;
}

namespace {

void require_valid(const PrimePower& pp, const PkSymbol& s) {
  if (!is_valid_symbol(pp, s)) throw DomainError("invalid symbol " + s.to_string());
}

// Sign of 2^o * v: v reduced to the precision the symbol keeps.
SignValue two_sign(const PrimePower& pp, Exponent o, long v) {
  const long m = pp.k() - o >= 3 ? 8 : (1L << (pp.k() - o));
  return static_cast<SignValue>(((v % m) + m) % m);
}

int legendre_minus_one(const Integer& p) { return mpz_fdiv_ui(p.get_mpz_t(), 4) == 1 ? 1 : -1; }

PkSymbol negated(const PrimePower& pp, const PkSymbol& s) {
  if (s.is_zero()) return s;
  const Exponent o = s.ord.value();
  if (pp.is_two()) return {s.ord, two_sign(pp, o, -s.sgn)};
  return {s.ord, legendre_minus_one(pp.p()) * s.sgn};
}

// Symbol of t - a for t of symbol g and a of symbol g1, ord g != ord g1.
PkSymbol forced_partner(const PrimePower& pp, const PkSymbol& g, const PkSymbol& g1) {
  const Exponent o = g.ord.value();
  const Exponent o1 = g1.ord.value();
  if (!pp.is_two()) {
    if (o < o1) return g;
    return {g1.ord, legendre_minus_one(pp.p()) * g1.sgn};
  }
  const Exponent d = o < o1 ? o1 - o : o - o1;
  const long shift = d >= 3 ? 0 : (1L << d);
  if (o < o1) return {g.ord, two_sign(pp, o, g.sgn - shift * g1.sgn)};
  return {g1.ord, two_sign(pp, o1, shift * g.sgn - g1.sgn)};
}

}  // namespace

Integer class_size(const PrimePower& pp, const PkSymbol& s) {
  require_valid(pp, s);
  if (s.is_zero()) return Integer{1};
  const Exponent room = pp.k() - s.ord.value();
  if (!pp.is_two()) return (pp.p() - 1) / 2 * pp.power(room - 1);
  if (room >= 3) return ipow(Integer{2}, room - 3);
  return s.sgn < (1 << room) ? Integer{1} : Integer{0};
}

std::size_t symbol_count(const PrimePower& pp) { return (pp.is_two() ? 4 : 2) * pp.k() + 1; }

std::vector<PkSymbol> enumerate_symbols(const PrimePower& pp) {
  std::vector<PkSymbol> out;
  out.reserve(symbol_count(pp));
  out.push_back(PkSymbol::zero());
  for (Exponent o = 0; o < pp.k(); ++o) {
    if (pp.is_two()) {
      for (SignValue s : {1, 3, 5, 7}) out.push_back({Order{o}, s});
    } else {
      out.push_back({Order{o}, 1});
      out.push_back({Order{o}, -1});
    }
  }
  return out;
}

std::size_t symbol_index(const PrimePower& pp, const PkSymbol& s) {
  require_valid(pp, s);
  if (s.is_zero()) return 0;
  const std::size_t o = s.ord.value();
  if (pp.is_two()) return 1 + 4 * o + static_cast<std::size_t>(s.sgn - 1) / 2;
  return 1 + 2 * o + (s.sgn == 1 ? 0 : 1);
}

Integer representative(const PrimePower& pp, const PkSymbol& s) {
  if (class_size(pp, s) == 0) throw DomainError("empty symbol class " + s.to_string());
  if (s.is_zero()) return Integer{0};
  const Integer scale = pp.power(s.ord.value());
  if (pp.is_two()) return scale * s.sgn;
  Integer u = 1;
  while (legendre(u, pp.p()) != s.sgn) ++u;
  return scale * u;
}

Integer split_pair_count_mod_p(const Integer& p, int leg_a, int s1, int s2) {
  if (p == 2) throw DomainError("split_pair_count_mod_p: p must be odd");
  const long p_mod_4 = static_cast<long>(mpz_fdiv_ui(p.get_mpz_t(), 4));
  const long cross = static_cast<long>(leg_a + s1) * (leg_a * legendre_minus_one(p) + s2);
  return (p - p_mod_4 - cross) / 4;
}

Integer split_class_size(const PrimePower& pp, const PkSymbol& g, const PkSymbol& g1, const PkSymbol& g2) {
  if (class_size(pp, g) == 0 || class_size(pp, g1) == 0 || class_size(pp, g2) == 0) return Integer{0};

  if (g.is_zero()) {
    if (g1.is_zero() || g2.is_zero()) return Integer{g1.is_zero() && g2.is_zero() ? 1 : 0};
    return g2 == negated(pp, g1) ? class_size(pp, g1) : Integer{0};
  }
  if (g1.is_zero()) return Integer{g2 == g ? 1 : 0};
  if (g2.is_zero()) return Integer{g1 == g ? 1 : 0};

  PkSymbol x = g1;
  PkSymbol y = g2;
  if (x.ord == g.ord) std::swap(x, y);
  if (x.ord == g.ord) {
    // Both summands and the target share one order.
    if (pp.is_two()) return Integer{0};
    const Exponent o = g.ord.value();
    return split_pair_count_mod_p(pp.p(), x.sgn, y.sgn, g.sgn) * pp.power(pp.k() - o - 1);
  }
  return y == forced_partner(pp, g, x) ? class_size(pp, x) : Integer{0};
}

std::vector<std::vector<SplitEntry>> split_table(const PrimePower& pp) {
  const std::vector<PkSymbol> syms = enumerate_symbols(pp);
  std::vector<Integer> sizes;
  sizes.reserve(syms.size());
  for (const auto& s : syms) sizes.push_back(class_size(pp, s));

  std::vector<std::vector<SplitEntry>> table(syms.size());
  for (std::size_t gi = 0; gi < syms.size(); ++gi) {
    const PkSymbol& g = syms[gi];
    if (sizes[gi] == 0) continue;
    auto& row = table[gi];
    auto push = [&](std::size_t l, const PkSymbol& right, const Integer& size) {
      if (size == 0) return;
      const std::size_t r = symbol_index(pp, right);
      if (sizes[r] == 0) return;
      row.push_back({l, r, size});
    };
    for (std::size_t li = 0; li < syms.size(); ++li) {
      const PkSymbol& g1 = syms[li];
      if (sizes[li] == 0) continue;
      if (g.is_zero()) {
        push(li, negated(pp, g1), sizes[li]);
      } else if (g1.is_zero()) {
        push(li, g, Integer{1});
      } else if (g1.ord != g.ord) {
        push(li, forced_partner(pp, g, g1), sizes[li]);
      } else {
        for (std::size_t ri = 0; ri < syms.size(); ++ri) {
          if (sizes[ri] == 0) continue;
          Integer s = split_class_size(pp, g, g1, syms[ri]);
          if (s != 0) row.push_back({li, ri, std::move(s)});
        }
      }
    }
  }
  return table;
}

}  // namespace qfmod
