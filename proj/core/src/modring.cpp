#include "qfmod/modring.hpp"

#include "qfmod/errors.hpp"

#include <utility>

namespace qfmod {

namespace {

// Probabilistic primality rounds; GMP runs a BPSW test first.
constexpr int kPrimalityRounds = 30;

}  // namespace

Exponent Order::value() const {
  if (infinite_) throw DomainError("order is infinite");
  return value_;
}

std::string Order::to_string() const {
  return infinite_ ? std::string{"inf"} : std::to_string(value_);
}

PrimePower::PrimePower(Integer p, Exponent k) : p_{std::move(p)}, k_{k} {
  if (k_ == 0) throw DomainError("prime power exponent must be positive");
  if (p_ < 2 || mpz_probab_prime_p(p_.get_mpz_t(), kPrimalityRounds) == 0) {
    throw DomainError("not a prime: " + p_.get_str());
  }
  modulus_ = ipow(p_, k_);
}

Integer PrimePower::power(Exponent e) const { return ipow(p_, e); }

Integer PrimePower::reduce(const Integer& a) const { return mod(a, modulus_); }

Integer ipow(const Integer& base, Exponent e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer powmod(const Integer& base, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

Valuation valuation(const Integer& p, const Integer& a) {
  if (a == 0) return {Order::infinity(), Integer{0}};
  Integer cop;
  Exponent e = mpz_remove(cop.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return {Order{e}, cop};
}

Valuation valuation(const PrimePower& pp, const Integer& a) {
  return valuation(pp.p(), a);
}

int legendre(const Integer& t, const Integer& p) {
  Integer r = mod(t, p);
  if (r == 0) throw DomainError("legendre: p divides t");
  Integer e = (p - 1) / 2;
  Integer v = powmod(r, e, p);
  return v == 1 ? 1 : -1;
}

int kronecker2(const Integer& t) {
  if (mpz_even_p(t.get_mpz_t())) throw DomainError("kronecker2: t is even");
  unsigned long r = mpz_fdiv_ui(t.get_mpz_t(), 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

SignValue sign_p(const PrimePower& pp, const Integer& t) {
  Valuation v = valuation(pp, pp.reduce(t));
  if (v.ord.is_infinite()) return 0;
  if (pp.is_two()) return static_cast<SignValue>(mpz_fdiv_ui(v.cop.get_mpz_t(), 8));
  return legendre(v.cop, pp.p());
}

std::vector<Integer> digits(const PrimePower& pp, const Integer& x) {
  std::vector<Integer> out;
  out.reserve(pp.k());
  Integer rest = pp.reduce(x);
  for (Exponent i = 0; i < pp.k(); ++i) {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), pp.p().get_mpz_t());
    out.push_back(r);
    rest = q;
  }
  return out;
}

Integer recompose(const PrimePower& pp, const std::vector<Integer>& digits) {
  Integer acc = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = acc * pp.p() + *it;
  return pp.reduce(acc);
}

Integer inverse_mod(const Integer& u, const Integer& m) {
  Integer r;
  if (m == 1) return Integer{0};
  if (mpz_invert(r.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NotAUnit("not a unit: " + u.get_str() + " mod " + m.get_str());
  }
  return r;
}

Integer inverse(const PrimePower& pp, const Integer& u) {
  return inverse_mod(u, pp.modulus());
}

}  // namespace qfmod
