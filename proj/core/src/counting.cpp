#include "qfmod/counting.hpp"

#include "qfmod/errors.hpp"

#include <set>
#include <utility>

namespace qfmod {

std::string RepCounts::to_string() const {
  return "(" + total.get_str() + ", " + primitive.get_str() + ", " + nonprimitive.get_str() + ")";
}

namespace {

RepCounts none() { return RepCounts::from(Integer{0}, Integer{0}); }

Integer pow2(Exponent e) { return ipow(Integer{2}, e); }

// ceil((k - od) / 2) for od < k.
Exponent zero_depth(Exponent k, Exponent od) { return (k - od + 1) / 2; }

}  // namespace

RepCounts count_type1_odd(const Integer& d, const PrimePower& pp, const PkSymbol& gt) {
  if (pp.is_two()) throw DomainError("count_type1_odd: p must be odd");
  const Integer dd = pp.reduce(d);
  const Exponent k = pp.k();

  if (gt.is_zero()) {
    if (dd == 0) return RepCounts::from((pp.p() - 1) * pp.power(k - 1), pp.power(k - 1));
    const Exponent od = valuation(pp, dd).ord.value();
    return RepCounts::from(Integer{0}, pp.power(k - zero_depth(k, od)));
  }
  if (dd == 0) return none();
  const Valuation vd = valuation(pp, dd);
  const Exponent od = vd.ord.value();
  const Exponent ot = gt.ord.value();
  if (ot < od || (ot - od) % 2 != 0) return none();
  if (legendre(vd.cop, pp.p()) * gt.sgn != 1) return none();

  Integer reps = 2 * pp.power((ot + od) / 2);
  if (ot == od) return RepCounts::from(std::move(reps), Integer{0});
  return RepCounts::from(Integer{0}, std::move(reps));
}

RepCounts count_type1_two(const Integer& d, Exponent k, const PkSymbol& gt) {
  const PrimePower pp{Integer{2}, k};
  const Integer dd = pp.reduce(d);

  if (gt.is_zero()) {
    if (dd == 0) return RepCounts::from(pow2(k - 1), pow2(k - 1));
    const Exponent od = valuation(pp, dd).ord.value();
    return RepCounts::from(Integer{0}, pow2(k - zero_depth(k, od)));
  }
  if (dd == 0) return none();
  const Valuation vd = valuation(pp, dd);
  const Exponent od = vd.ord.value();
  const Exponent ot = gt.ord.value();
  if (ot < od || (ot - od) % 2 != 0) return none();

  const Exponent room = k - ot;
  const unsigned long m = room >= 3 ? 8 : (1UL << room);
  if (mpz_fdiv_ui(vd.cop.get_mpz_t(), m) != static_cast<unsigned long>(gt.sgn) % m) return none();

  Integer reps = (room >= 3 ? 4 : room) * pow2((ot + od) / 2);
  if (ot == od) return RepCounts::from(std::move(reps), Integer{0});
  return RepCounts::from(Integer{0}, std::move(reps));
}

RepCounts count_type2_star(const Integer& a, const Integer& b, const Integer& c, const Integer& s, Exponent m) {
  if (m == 0) return RepCounts::from(Integer{0}, Integer{1});
  const Integer modulus = pow2(m);
  const Integer sm = mod(s, modulus);
  const bool odd = mpz_odd_p(sm.get_mpz_t()) != 0;

  // Parity seeds (1,0), (0,1), (1,1): Q* takes the values a, c, a+b+c mod 2.
  int seeds = 0;
  for (const Integer& v : {Integer{a}, Integer{c}, Integer{a + b + c}}) {
    if ((mpz_odd_p(v.get_mpz_t()) != 0) == odd) ++seeds;
  }
  Integer prim = seeds * pow2(m - 1);

  Integer nprim = 0;
  if (m == 1) {
    nprim = odd ? 0 : 1;
  } else if (mpz_divisible_2exp_p(sm.get_mpz_t(), 2)) {
    nprim = 4 * count_type2_star(a, b, c, sm / 4, m - 2).total;
  }
  return RepCounts::from(std::move(prim), std::move(nprim));
}

RepCounts count_type2(const TypeII& blk, Exponent k, const PkSymbol& gt) {
  if (mpz_even_p(blk.b.get_mpz_t())) throw DomainError("count_type2: b must be odd");
  const PrimePower pp{Integer{2}, k};
  if (blk.ell + 1 >= k) {
    if (!gt.is_zero()) return none();
    return RepCounts::from(3 * ipow(Integer{4}, k - 1), ipow(Integer{4}, k - 1));
  }
  const Integer t = representative(pp, gt);
  const Integer shift = pow2(blk.ell + 1);
  if (!mpz_divisible_p(t.get_mpz_t(), shift.get_mpz_t())) return none();

  const RepCounts star = count_type2_star(blk.a, blk.b, blk.c, t / shift, k - blk.ell - 1);
  const Integer free = ipow(Integer{4}, blk.ell + 1);
  return RepCounts::from(star.primitive * free, star.nonprimitive * free);
}

RepCounts count_block(const Block& blk, const PrimePower& pp, const PkSymbol& gt) {
  if (const auto* b1 = std::get_if<TypeI>(&blk)) {
    return pp.is_two() ? count_type1_two(b1->d, pp.k(), gt) : count_type1_odd(b1->d, pp, gt);
  }
  if (!pp.is_two()) throw DomainError("type II block over an odd prime");
  return count_type2(std::get<TypeII>(blk), pp.k(), gt);
}

FormCounter::FormCounter(const QuadraticForm& q, const PrimePower& pp)
    : pp_{pp},
      n_{q.dim()},
      bd_{block_diagonalize(q, pp)},
      syms_{enumerate_symbols(pp)},
      splits_{split_table(pp)} {
  const std::size_t m = bd_.blocks.size();
  const std::size_t ns = syms_.size();
  block_tables_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto& table = block_tables_[j];
    table.reserve(ns);
    for (const auto& g : syms_) {
      table.push_back(class_size(pp_, g) == 0 ? none() : count_block(bd_.blocks[j], pp_, g));
    }
  }

  suffix_tables_.resize(m);
  if (m == 0) return;
  suffix_tables_[m - 1] = block_tables_[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) {
    const auto& head = block_tables_[j];
    const auto& tail = suffix_tables_[j + 1];
    auto& out = suffix_tables_[j];
    out.assign(ns, none());
    for (std::size_t gi = 0; gi < ns; ++gi) {
      Integer total = 0;
      Integer nprim = 0;
      for (const auto& e : splits_[gi]) {
        total += e.size * head[e.left].total * tail[e.right].total;
        nprim += e.size * head[e.left].nonprimitive * tail[e.right].nonprimitive;
      }
      out[gi] = RepCounts::from(total - nprim, nprim);
    }
  }
}

RepCounts FormCounter::count(const PkSymbol& g) const {
  if (suffix_tables_.empty()) return g.is_zero() ? RepCounts::from(Integer{0}, Integer{1}) : none();
  return suffix_tables_[0][symbol_index(pp_, g)];
}

RepCounts FormCounter::count(const Integer& t) const { return count(symbol_of(pp_, t)); }

RepCounts count_form(const QuadraticForm& q, const PrimePower& pp, const Integer& t) {
  return FormCounter{q, pp}.count(t);
}

Exponent stable_level(const QuadraticForm& q, const Integer& p, const Integer& t) {
  const Integer det = determinant(q.matrix());
  if (det == 0) throw SingularForm("determinant is zero");
  if (t == 0) throw ZeroTarget("target must be non-zero");
  const PrimePower pp{p, 1};
  return 1 + valuation(pp, 8 * t * det).ord.value();
}

Rational local_density(const QuadraticForm& q, const Integer& p, const Integer& t) {
  const Exponent s = stable_level(q, p, t);
  const PrimePower pp{p, s};
  Rational r{count_form(q, pp, t).total, ipow(p, s * (q.dim() - 1))};
  r.canonicalize();
  return r;
}

void require_coprime_factors(const std::vector<PrimePower>& factors) {
  std::set<Integer> seen;
  for (const auto& f : factors) {
    if (!seen.insert(f.p()).second) throw DomainError("repeated prime " + f.p().get_str());
  }
}

RepCounts count_composite(const QuadraticForm& q, const std::vector<PrimePower>& factors, const Integer& t) {
  require_coprime_factors(factors);
  Integer total = 1;
  Integer prim = 1;
  for (const auto& f : factors) {
    const RepCounts c = count_form(q, f, t);
    total *= c.total;
    prim *= c.primitive;
  }
  return RepCounts::from(prim, total - prim);
}

}  // namespace qfmod
