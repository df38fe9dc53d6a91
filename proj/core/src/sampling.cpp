#include "qfmod/sampling.hpp"

#include "qfmod/errors.hpp"
#include "qfmod/sqroots.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace qfmod {

std::string to_string(RepKind kind) {
  switch (kind) {
    case RepKind::Any: return "any";
    case RepKind::Primitive: return "primitive";
    case RepKind::NonPrimitive: return "nonprimitive";
  }
  return "?";
}

SamplerStats& SamplerStats::operator+=(const SamplerStats& o) {
  split_trials += o.split_trials;
  split_rejections += o.split_rejections;
  symbol_trials += o.symbol_trials;
  symbol_rejections += o.symbol_rejections;
  restarts += o.restarts;
  failures += o.failures;
  return *this;
}

double SamplerStats::split_rejection_rate() const {
  if (split_trials == 0) return 0.0;
  return static_cast<double>(split_rejections) / static_cast<double>(split_trials);
}

namespace {

Integer pow2(Exponent e) { return ipow(Integer{2}, e); }

const Integer& count_of(const RepCounts& c, RepKind kind) {
  switch (kind) {
    case RepKind::Primitive: return c.primitive;
    case RepKind::NonPrimitive: return c.nonprimitive;
    case RepKind::Any: break;
  }
  return c.total;
}

// Any becomes Primitive or NonPrimitive with probability proportional to
// the counts. Requires a non-zero count for kind.
RepKind resolve(const RepCounts& c, RepKind kind, RandomSource& rng) {
  if (kind != RepKind::Any) return kind;
  return uniform_below(c.total, rng) < c.primitive ? RepKind::Primitive : RepKind::NonPrimitive;
}

// Runs fn, repeating it after a LasVegasFailure. Each attempt draws from the
// same conditional distribution, so the accepted result stays uniform.
template <typename Fn>
auto retrying(SamplerStats* stats, Fn&& fn) {
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const LasVegasFailure&) {
      if (attempt >= kRetryCap) throw;
      if (stats) ++stats->restarts;
    }
  }
}

std::optional<Integer> draw_type1(const Integer& d, const PrimePower& pp, const Integer& t, RepKind kind,
                                  RandomSource& rng) {
  const PkSymbol g = symbol_of(pp, t);
  const RepCounts counts = count_block(TypeI{d}, pp, g);
  if (count_of(counts, kind) == 0) return std::nullopt;
  kind = resolve(counts, kind, rng);

  const Integer& p = pp.p();
  const Exponent k = pp.k();
  const Integer dd = pp.reduce(d);

  if (g.is_zero()) {
    if (dd == 0) {
      if (kind == RepKind::Primitive) return 1 + uniform_below(p - 1, rng) + p * uniform_below(pp.power(k - 1), rng);
      return p * uniform_below(pp.power(k - 1), rng);
    }
    const Exponent od = valuation(pp, dd).ord.value();
    const Exponent e = (k - od + 1) / 2;
    return pp.power(e) * uniform_below(pp.power(k - e), rng);
  }

  const Valuation vd = valuation(pp, dd);
  const Valuation vt = valuation(pp, pp.reduce(t));
  const Exponent od = vd.ord.value();
  const Exponent ot = vt.ord.value();
  const Exponent e = (ot - od) / 2;
  const Exponent room = k - ot;
  const Integer room_mod = pp.power(room);
  const Integer target = mod(vt.cop * inverse_mod(vd.cop, room_mod), room_mod);

  Integer root;
  if (pp.is_two()) {
    const std::vector<Integer> roots = sqrt_unit_mod_2k(room, target);
    root = roots[uniform_below(std::uint64_t{roots.size()}, rng)];
  } else {
    const auto roots = lift_sqrt_odd(PrimePower{p, room}, target, rng);
    root = roots[uniform_below(std::uint64_t{2}, rng)];
  }
  const Integer u = root + room_mod * uniform_below(pp.power(ot - e), rng);
  return pp.reduce(pp.power(e) * u);
}

Integer star_value(const Integer& a, const Integer& b, const Integer& c, const Integer& y1, const Integer& y2) {
  return a * y1 * y1 + b * y1 * y2 + c * y2 * y2;
}

// Solution of a y1^2 + b y1 y2 + c y2^2 = s (mod 2^m), m >= 1.
std::array<Integer, 2> draw_star(const Integer& a, const Integer& b, const Integer& c, const Integer& s, Exponent m,
                                 RepKind kind, RandomSource& rng) {
  const Integer sm = mod(s, pow2(m));
  kind = resolve(count_type2_star(a, b, c, sm, m), kind, rng);

  if (kind == RepKind::NonPrimitive) {
    if (m == 1) return {Integer{0}, Integer{0}};
    std::array<Integer, 2> z;
    if (m == 2) {
      z = {Integer{uniform_below(std::uint64_t{2}, rng)}, Integer{uniform_below(std::uint64_t{2}, rng)}};
    } else {
      z = draw_star(a, b, c, sm / 4, m - 2, RepKind::Any, rng);
      const Integer top = pow2(m - 2);
      z[0] += top * uniform_below(std::uint64_t{2}, rng);
      z[1] += top * uniform_below(std::uint64_t{2}, rng);
    }
    return {2 * z[0], 2 * z[1]};
  }

  const bool odd = mpz_odd_p(sm.get_mpz_t()) != 0;
  std::vector<std::array<Integer, 2>> seeds;
  for (const std::array<Integer, 2>& seed : {std::array<Integer, 2>{1, 0}, {0, 1}, {1, 1}}) {
    const Integer v = star_value(a, b, c, seed[0], seed[1]);
    if ((mpz_odd_p(v.get_mpz_t()) != 0) == odd) seeds.push_back(seed);
  }
  std::array<Integer, 2> y = seeds[uniform_below(std::uint64_t{seeds.size()}, rng)];
  // Lift one bit at a time: only b(y1 e2 + y2 e1) matters mod 2^(i+1).
  for (Exponent i = 1; i < m; ++i) {
    const Integer step = pow2(i);
    const Integer r = mod((sm - star_value(a, b, c, y[0], y[1])) / step, Integer{2});
    Integer e1, e2;
    if (mpz_odd_p(y[0].get_mpz_t())) {
      e1 = uniform_below(std::uint64_t{2}, rng);
      e2 = mod(r - e1 * y[1], Integer{2});
    } else {
      e1 = r;
      e2 = uniform_below(std::uint64_t{2}, rng);
    }
    y[0] += step * e1;
    y[1] += step * e2;
  }
  return y;
}

std::optional<std::array<Integer, 2>> draw_type2(const TypeII& blk, Exponent k, const Integer& t, RepKind kind,
                                                 RandomSource& rng) {
  const PrimePower pp{Integer{2}, k};
  const Integer tt = pp.reduce(t);
  const RepCounts counts = count_type2(blk, k, symbol_of(pp, tt));
  if (count_of(counts, kind) == 0) return std::nullopt;
  kind = resolve(counts, kind, rng);

  if (blk.ell + 1 >= k) {
    const Integer half = pow2(k - 1);
    std::array<Integer, 2> x{2 * uniform_below(half, rng), 2 * uniform_below(half, rng)};
    if (kind == RepKind::Primitive) {
      const std::uint64_t seed = 1 + uniform_below(std::uint64_t{3}, rng);
      x[0] += seed & 1;
      x[1] += seed >> 1;
    }
    return x;
  }

  const Exponent kp = k - blk.ell - 1;
  const Integer tp = tt / pow2(blk.ell + 1);
  std::array<Integer, 2> y = draw_star(blk.a, blk.b, blk.c, tp, kp, kind, rng);
  const Integer free = pow2(blk.ell + 1);
  const Integer step = pow2(kp);
  for (auto& v : y) v = pp.reduce(v + step * uniform_below(free, rng));
  return y;
}

// Uniform a' mod p with (a'/p) = s1 and ((t0 - a')/p) = s2.
Integer draw_split_digit(const Integer& p, const Integer& t0, int s1, int s2, RandomSource& rng,
                         SamplerStats* stats) {
  auto accepts = [&](const Integer& u) {
    const Integer rest = mod(t0 - u, p);
    return rest != 0 && legendre(u, p) == s1 && legendre(rest, p) == s2;
  };
  if (p <= 7) {
    std::vector<Integer> ok;
    for (Integer u = 1; u < p; ++u) {
      if (accepts(u)) ok.push_back(u);
    }
    if (ok.empty()) throw DomainError("empty split class");
    return ok[uniform_below(std::uint64_t{ok.size()}, rng)];
  }
  for (int trial = 0; trial < kRetryCap; ++trial) {
    const Integer u = 1 + uniform_below(p - 1, rng);
    if (stats) ++stats->split_trials;
    if (accepts(u)) return u;
    if (stats) ++stats->split_rejections;
  }
  throw LasVegasFailure("split rejection sampling exhausted");
}

}  // namespace

Integer sample_symbol_elem(const PrimePower& pp, const PkSymbol& g, RandomSource& rng, SamplerStats* stats) {
  if (class_size(pp, g) == 0) throw DomainError("empty symbol class " + g.to_string());
  if (g.is_zero()) return Integer{0};
  const Exponent o = g.ord.value();
  const Exponent room = pp.k() - o;
  const Integer scale = pp.power(o);
  if (pp.is_two()) {
    if (room < 3) return scale * g.sgn;
    return scale * (g.sgn + 8 * uniform_below(pow2(room - 3), rng));
  }
  const Integer& p = pp.p();
  for (int trial = 0; trial < kRetryCap; ++trial) {
    const Integer u0 = 1 + uniform_below(p - 1, rng);
    if (stats) ++stats->symbol_trials;
    if (legendre(u0, p) == g.sgn) return scale * (u0 + p * uniform_below(pp.power(room - 1), rng));
    if (stats) ++stats->symbol_rejections;
  }
  throw LasVegasFailure("symbol class sampling exhausted");
}

std::optional<std::pair<Integer, Integer>> sample_split(const PrimePower& pp, const Integer& t, const PkSymbol& g1,
                                                        const PkSymbol& g2, RandomSource& rng, SamplerStats* stats) {
  const Integer tt = pp.reduce(t);
  const PkSymbol g = symbol_of(pp, tt);
  if (split_class_size(pp, g, g1, g2) == 0) return std::nullopt;

  auto pair_from_left = [&](const Integer& a) { return std::make_pair(a, pp.reduce(tt - a)); };
  if (g.is_zero()) return pair_from_left(sample_symbol_elem(pp, g1, rng, stats));
  if (g1.is_zero()) return std::make_pair(Integer{0}, tt);
  if (g2.is_zero()) return std::make_pair(tt, Integer{0});
  if (g1.ord != g.ord) return pair_from_left(sample_symbol_elem(pp, g1, rng, stats));
  if (g2.ord != g.ord) {
    const Integer b = sample_symbol_elem(pp, g2, rng, stats);
    return std::make_pair(pp.reduce(tt - b), b);
  }

  // All three orders agree (odd p): only the lowest digit is constrained.
  const Exponent o = g.ord.value();
  const Integer scale = pp.power(o);
  const Integer& p = pp.p();
  const Integer t0 = mod(tt / scale, p);
  const Integer u0 = draw_split_digit(p, t0, g1.sgn, g2.sgn, rng, stats);
  const Integer a = pp.reduce(scale * (u0 + p * uniform_below(pp.power(pp.k() - o - 1), rng)));
  return pair_from_left(a);
}

SampleOutcome sample_type1(const Integer& d, const PrimePower& pp, const Integer& t, RepKind kind,
                           RandomSource& rng) {
  try {
    auto x = retrying(nullptr, [&] { return draw_type1(d, pp, t, kind, rng); });
    if (!x) return SampleOutcome::no_solution();
    return SampleOutcome::solution({std::move(*x)});
  } catch (const LasVegasFailure&) {
    return SampleOutcome::fail();
  }
}

SampleOutcome sample_type2(const TypeII& blk, Exponent k, const Integer& t, RepKind kind, RandomSource& rng) {
  auto x = draw_type2(blk, k, t, kind, rng);
  if (!x) return SampleOutcome::no_solution();
  return SampleOutcome::solution({std::move((*x)[0]), std::move((*x)[1])});
}

FormSampler::FormSampler(const QuadraticForm& q, const PrimePower& pp) : counter_{q, pp} {}

std::vector<Integer> FormSampler::draw_block(std::size_t level, const Integer& t, RepKind kind, RandomSource& rng) {
  const PrimePower& pp = counter_.modulus();
  const Block& blk = counter_.diagonal().blocks[level];
  if (const auto* b1 = std::get_if<TypeI>(&blk)) {
    auto x = retrying(&stats_, [&] { return draw_type1(b1->d, pp, t, kind, rng); });
    if (!x) throw std::logic_error("block table promised a solution");
    return {std::move(*x)};
  }
  auto x = draw_type2(std::get<TypeII>(blk), pp.k(), t, kind, rng);
  if (!x) throw std::logic_error("block table promised a solution");
  return {std::move((*x)[0]), std::move((*x)[1])};
}

std::vector<Integer> FormSampler::draw(std::size_t level, const Integer& t, RepKind kind, RandomSource& rng) {
  if (level + 1 == counter_.num_blocks()) return draw_block(level, t, kind, rng);

  const PrimePower& pp = counter_.modulus();
  const std::size_t gi = symbol_index(pp, symbol_of(pp, t));
  const auto& head = counter_.block_table(level);
  const auto& tail = counter_.suffix_table(level + 1);

  struct Cell {
    const SplitEntry* entry;
    RepKind head_kind;
    RepKind tail_kind;
    Integer weight;
  };
  std::vector<Cell> cells;
  Integer total = 0;
  auto add = [&](const SplitEntry& e, RepKind hk, RepKind tk) {
    Integer w = e.size * count_of(head[e.left], hk) * count_of(tail[e.right], tk);
    if (w == 0) return;
    total += w;
    cells.push_back({&e, hk, tk, std::move(w)});
  };
  for (const auto& e : counter_.splits()[gi]) {
    switch (kind) {
      case RepKind::Any:
        add(e, RepKind::Any, RepKind::Any);
        break;
      case RepKind::NonPrimitive:
        add(e, RepKind::NonPrimitive, RepKind::NonPrimitive);
        break;
      case RepKind::Primitive:
        add(e, RepKind::NonPrimitive, RepKind::Primitive);
        add(e, RepKind::Primitive, RepKind::NonPrimitive);
        add(e, RepKind::Primitive, RepKind::Primitive);
        break;
    }
  }
  if (total == 0) throw std::logic_error("suffix table promised a solution");

  Integer r = uniform_below(total, rng);
  const Cell* pick = &cells.back();
  for (const auto& c : cells) {
    if (r < c.weight) {
      pick = &c;
      break;
    }
    r -= c.weight;
  }

  const auto& syms = counter_.symbols();
  const auto split = retrying(&stats_, [&] {
    return sample_split(pp, t, syms[pick->entry->left], syms[pick->entry->right], rng, &stats_);
  });
  if (!split) throw std::logic_error("split table promised a pair");

  std::vector<Integer> x = draw_block(level, split->first, pick->head_kind, rng);
  std::vector<Integer> rest = draw(level + 1, split->second, pick->tail_kind, rng);
  x.insert(x.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
  return x;
}

SampleOutcome FormSampler::sample(const Integer& t, RepKind kind, RandomSource& rng) {
  const PrimePower& pp = counter_.modulus();
  const Integer tt = pp.reduce(t);
  const RepCounts counts = counter_.count(tt);
  if (count_of(counts, kind) == 0) return SampleOutcome::no_solution();
  if (counter_.num_blocks() == 0) return SampleOutcome::solution({});

  // Fix the kind first so that retries cannot skew the kind mixture.
  const RepKind resolved = resolve(counts, kind, rng);
  const Matrix& u = counter_.diagonal().U;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    try {
      const std::vector<Integer> y = draw(0, tt, resolved, rng);
      std::vector<Integer> x(y.size());
      for (std::size_t i = 0; i < u.rows(); ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < u.cols(); ++j) acc += u(i, j) * y[j];
        x[i] = pp.reduce(acc);
      }
      return SampleOutcome::solution(std::move(x));
    } catch (const LasVegasFailure&) {
      ++stats_.restarts;
    }
  }
  ++stats_.failures;
  return SampleOutcome::fail();
}

SampleOutcome sample_form(const QuadraticForm& q, const PrimePower& pp, const Integer& t, RepKind kind,
                          RandomSource& rng) {
  return FormSampler{q, pp}.sample(t, kind, rng);
}

Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
  if (residues.size() != moduli.size()) throw DomainError("crt: size mismatch");
  Integer x = 0;
  Integer m = 1;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    const Integer& mi = moduli[i];
    const Integer step = mod((residues[i] - x) * inverse_mod(mod(m, mi), mi), mi);
    x += m * step;
    m *= mi;
  }
  return mod(x, m);
}

CompositeSampler::CompositeSampler(const QuadraticForm& q, std::vector<PrimePower> factors)
    : factors_{std::move(factors)} {
  require_coprime_factors(factors_);
  if (factors_.empty()) throw DomainError("no prime power factors");
  samplers_.reserve(factors_.size());
  for (const auto& f : factors_) samplers_.emplace_back(q, f);
}

RepCounts CompositeSampler::counts(const Integer& t) const {
  Integer total = 1;
  Integer prim = 1;
  for (const auto& s : samplers_) {
    const RepCounts c = s.counter().count(t);
    total *= c.total;
    prim *= c.primitive;
  }
  return RepCounts::from(prim, total - prim);
}

SampleOutcome CompositeSampler::sample(const Integer& t, RepKind kind, RandomSource& rng) {
  const std::size_t r = samplers_.size();
  if (count_of(counts(t), kind) == 0) return SampleOutcome::no_solution();

  std::vector<RepKind> kinds(r, kind);
  if (kind == RepKind::NonPrimitive) {
    // Non-primitive somewhere: choose the exact set of such primes.
    if (r >= 24) throw DomainError("too many prime factors");
    std::vector<RepCounts> per;
    for (const auto& s : samplers_) per.push_back(s.counter().count(t));
    std::vector<Integer> weights(std::size_t{1} << r);
    Integer total = 0;
    for (std::size_t mask = 1; mask < weights.size(); ++mask) {
      Integer w = 1;
      for (std::size_t i = 0; i < r; ++i) w *= (mask >> i & 1) ? per[i].nonprimitive : per[i].primitive;
      total += w;
      weights[mask] = std::move(w);
    }
    Integer pick = uniform_below(total, rng);
    std::size_t chosen = weights.size() - 1;
    for (std::size_t mask = 1; mask < weights.size(); ++mask) {
      if (pick < weights[mask]) {
        chosen = mask;
        break;
      }
      pick -= weights[mask];
    }
    for (std::size_t i = 0; i < r; ++i)
      kinds[i] = (chosen >> i & 1) ? RepKind::NonPrimitive : RepKind::Primitive;
  }

  std::vector<std::vector<Integer>> parts;
  std::vector<Integer> moduli;
  for (std::size_t i = 0; i < r; ++i) {
    SampleOutcome o = samplers_[i].sample(t, kinds[i], rng);
    if (!o.ok()) return o;
    parts.push_back(std::move(o.x));
    moduli.push_back(factors_[i].modulus());
  }
  const std::size_t n = parts.front().size();
  std::vector<Integer> x(n);
  std::vector<Integer> residues(r);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) residues[i] = parts[i][j];
    x[j] = crt(residues, moduli);
  }
  return SampleOutcome::solution(std::move(x));
}

SamplerStats CompositeSampler::stats() const {
  SamplerStats s;
  for (const auto& f : samplers_) s += f.stats();
  return s;
}

SampleOutcome sample_composite(const QuadraticForm& q, const std::vector<PrimePower>& factors, const Integer& t,
                               RepKind kind, RandomSource& rng) {
  return CompositeSampler{q, factors}.sample(t, kind, rng);
}

}  // namespace qfmod
