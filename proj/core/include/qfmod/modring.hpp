#pragma once

// Exact arithmetic over Z/p^k on arbitrary-precision integers.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace qfmod {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = unsigned long;

/// A p-adic order: a natural number or infinity (the order of 0).
class Order {
 public:
  static constexpr Order infinity() { return Order{true, 0}; }
  constexpr Order() = default;
  constexpr explicit Order(Exponent v) : infinite_{false}, value_{v} {}

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Requires is_finite().
  Exponent value() const;

  // Infinity compares greater than every finite order.
  constexpr auto operator<=>(const Order&) const = default;

  std::string to_string() const;

 private:
  constexpr Order(bool inf, Exponent v) : infinite_{inf}, value_{v} {}

  bool infinite_ = true;
  Exponent value_ = 0;
};

/// The modulus p^k. The primality of p is checked on construction.
class PrimePower {
 public:
  /// Throws DomainError if p is not prime or k == 0.
  PrimePower(Integer p, Exponent k);
  PrimePower(unsigned long p, Exponent k) : PrimePower(Integer{p}, k) {}

  const Integer& p() const { return p_; }
  Exponent k() const { return k_; }
  /// p^k.
  const Integer& modulus() const { return modulus_; }
  bool is_two() const { return p_ == 2; }

  /// p^e for any e (not reduced).
  Integer power(Exponent e) const;
  /// The representative of a in [0, p^k).
  Integer reduce(const Integer& a) const;

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.k_ == b.k_ && a.p_ == b.p_;
  }

 private:
  Integer p_;
  Exponent k_;
  Integer modulus_;
};

/// ord_p(a) together with cop_p(a) = a / p^ord. For a = 0: (infinity, 0).
struct Valuation {
  Order ord;
  Integer cop;
};

/// Sign values: 0, +1, -1 for odd p; 0, 1, 3, 5, 7 for p = 2.
using SignValue = int;

Integer ipow(const Integer& base, Exponent e);
Integer mod(const Integer& a, const Integer& m);
Integer powmod(const Integer& base, const Integer& e, const Integer& m);

/// Valuation of the integer a itself (not reduced mod p^k).
Valuation valuation(const PrimePower& pp, const Integer& a);
/// Valuation of a at the prime p.
Valuation valuation(const Integer& p, const Integer& a);

/// Legendre symbol by Euler's criterion. Throws DomainError if p | t.
int legendre(const Integer& t, const Integer& p);

/// Kronecker symbol (t/2) for odd t. Throws DomainError for even t.
int kronecker2(const Integer& t);

/// p-sign of t mod p^k.
SignValue sign_p(const PrimePower& pp, const Integer& t);

/// The k base-p digits of x mod p^k, least significant first.
std::vector<Integer> digits(const PrimePower& pp, const Integer& x);
Integer recompose(const PrimePower& pp, const std::vector<Integer>& digits);

/// u^-1 mod p^k. Throws NotAUnit if p | u.
Integer inverse(const PrimePower& pp, const Integer& u);
/// u^-1 mod m for gcd(u, m) = 1. Throws NotAUnit otherwise.
Integer inverse_mod(const Integer& u, const Integer& m);

}  // namespace qfmod
