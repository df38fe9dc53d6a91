#include "qfmod/sqroots.hpp"

#include "qfmod/errors.hpp"

#include <algorithm>

namespace qfmod {

bool is_square(const PrimePower& pp, const Integer& t) {
  const Integer r = pp.reduce(t);
  if (r == 0) return true;
  Valuation v = valuation(pp, r);
  const Exponent ord = v.ord.value();
  if (ord % 2 != 0) return false;
  if (!pp.is_two()) return legendre(v.cop, pp.p()) == 1;
  const Exponent room = pp.k() - ord;
  const unsigned long m = room >= 3 ? 8 : (1UL << room);
  return mpz_fdiv_ui(v.cop.get_mpz_t(), m) == 1;
}

std::array<Integer, 2> sqrt_unit_mod_p(const Integer& p, const Integer& t, RandomSource& rng) {
  if (p == 2) throw DomainError("sqrt_unit_mod_p: p must be odd");
  const Integer a = mod(t, p);
  if (legendre(a, p) != 1) throw NonResidue("no square root: " + a.get_str() + " mod " + p.get_str());

  Integer root;
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
    root = powmod(a, (p + 1) / 4, p);
  } else {
    // p - 1 = q * 2^s with q odd.
    Integer q = p - 1;
    Exponent s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;

    Integer z;
    int tries = 0;
    for (;; ++tries) {
      if (tries == kNonResidueRetryCap) throw LasVegasFailure("non-residue search exhausted");
      z = uniform_below(p - 1, rng) + 1;
      if (legendre(z, p) == -1) break;
    }

    Integer c = powmod(z, q, p);
    Integer x = powmod(a, (q + 1) / 2, p);
    Integer b = powmod(a, q, p);
    Exponent m = s;
    while (b != 1) {
      Exponent i = 0;
      Integer b2 = b;
      while (b2 != 1) {
        b2 = mod(b2 * b2, p);
        ++i;
      }
      Integer f = powmod(c, ipow(Integer{2}, m - i - 1), p);
      x = mod(x * f, p);
      c = mod(f * f, p);
      b = mod(b * c, p);
      m = i;
    }
    root = x;
  }
  Integer other = mod(-root, p);
  if (other < root) std::swap(root, other);
  return {root, other};
}

std::array<Integer, 2> lift_sqrt_odd(const PrimePower& pp, const Integer& t, RandomSource& rng) {
  if (pp.is_two()) throw DomainError("lift_sqrt_odd: p must be odd");
  const Integer target = pp.reduce(t);
  if (mpz_divisible_p(target.get_mpz_t(), pp.p().get_mpz_t())) throw NotAUnit("lift_sqrt_odd: t is not a unit");

  Integer a = sqrt_unit_mod_p(pp.p(), target, rng)[0];
  Exponent e = 1;
  while (e < pp.k()) {
    const Exponent next = std::min<Exponent>(2 * e, pp.k());
    const Integer pe = pp.power(e);
    const Integer step_mod = pp.power(next - e);
    // a^2 = t mod p^e; solve (a + p^e b)^2 = t mod p^next.
    Integer quotient = (target - a * a) / pe;
    Integer b = mod(quotient * inverse_mod(2 * a, step_mod), step_mod);
    a = mod(a + pe * b, pp.power(next));
    e = next;
  }
  Integer other = pp.reduce(-a);
  if (other < a) std::swap(a, other);
  return {a, other};
}

std::vector<Integer> sqrt_unit_mod_2k(Exponent k, const Integer& t) {
  if (k == 0) throw DomainError("sqrt_unit_mod_2k: k must be positive");
  if (mpz_even_p(t.get_mpz_t())) throw NotASquare("sqrt_unit_mod_2k: t is even");
  const unsigned long m = k >= 3 ? 8 : (1UL << k);
  if (mpz_fdiv_ui(t.get_mpz_t(), m) != 1) throw NotASquare("not a square mod 2^" + std::to_string(k));

  if (k == 1) return {Integer{1}};
  if (k == 2) return {Integer{1}, Integer{3}};
  if (k == 3) return {Integer{1}, Integer{3}, Integer{5}, Integer{7}};

  // b is a root mod 2^j; fix digit j of b^2 by adding 2^(j-1) d.
  Integer b = 1;
  for (Exponent j = 3; j < k; ++j) {
    const Integer two_j = ipow(Integer{2}, j);
    Integer diff = t - b * b;
    Integer d = mod(diff / two_j, Integer{2});
    b = mod(b + ipow(Integer{2}, j - 1) * d, two_j * 2);
  }
  const Integer modulus = ipow(Integer{2}, k);
  const Integer half = modulus / 2;
  std::vector<Integer> roots{mod(b, modulus), mod(-b, modulus), mod(half + b, modulus), mod(half - b, modulus)};
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace qfmod
