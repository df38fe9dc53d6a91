#include "qfmod/errors.hpp"
#include "qfmod/oracle.hpp"
#include "qfmod/sampling.hpp"
#include "testutil.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace qfmod;
using qfmod::testing::random_form;

namespace {

using Vec = std::vector<Integer>;

bool is_primitive(const Vec& x, const Integer& p) {
  for (const auto& c : x)
    if (mod(c, p) != 0) return true;
  return false;
}

bool matches_kind(const Vec& x, const Integer& p, RepKind kind) {
  if (kind == RepKind::Any) return true;
  return is_primitive(x, p) == (kind == RepKind::Primitive);
}

// Draws and histograms; asserts validity on every draw.
std::map<Vec, std::uint64_t> histogram(const QuadraticForm& q, const PrimePower& pp, const Integer& t, RepKind kind,
                                       std::uint64_t draws, std::uint64_t seed) {
  FormSampler s{q, pp};
  RandomSource rng{seed};
  std::map<Vec, std::uint64_t> h;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto out = s.sample(t, kind, rng);
    EXPECT_TRUE(out.ok());
    if (!out.ok()) break;
    EXPECT_EQ(q.evaluate(out.x, pp.modulus()), pp.reduce(t));
    EXPECT_TRUE(matches_kind(out.x, pp.p(), kind));
    ++h[out.x];
  }
  return h;
}

std::vector<std::uint64_t> cells(const std::map<Vec, std::uint64_t>& h) {
  std::vector<std::uint64_t> c;
  for (const auto& [v, n] : h) c.push_back(n);
  return c;
}

std::set<Vec> keys(const std::map<Vec, std::uint64_t>& h) {
  std::set<Vec> s;
  for (const auto& [v, n] : h) s.insert(v);
  return s;
}

std::set<Vec> oracle_set(const QuadraticForm& q, const PrimePower& pp, const Integer& t, RepKind kind) {
  std::set<Vec> s;
  for (const auto& v : enumerate_reps(q, pp, t).vectors) {
    Vec x(v.begin(), v.end());
    if (matches_kind(x, pp.p(), kind)) s.insert(x);
  }
  return s;
}

}  // namespace

TEST(SampleSymbolElem, Examples) {
  RandomSource rng{1};
  EXPECT_EQ(sample_symbol_elem(PrimePower{5UL, 3}, PkSymbol::zero(), rng), 0);
  for (int i = 0; i < 20; ++i)
    EXPECT_EQ(sample_symbol_elem(PrimePower{3UL, 1}, PkSymbol{Order{0}, -1}, rng), 2);
  std::map<Integer, std::uint64_t> h;
  for (int i = 0; i < 400; ++i) ++h[sample_symbol_elem(PrimePower{2UL, 4}, PkSymbol{Order{0}, 1}, rng)];
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.count(Integer{1}) + h.count(Integer{9}), 2u);
  EXPECT_TRUE(chi_square_uniform({h[Integer{1}], h[Integer{9}]}, 2).pass);
}

TEST(SampleSymbolElem, UniformOverEveryClass) {
  RandomSource rng{2};
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const PrimePower pp{p, 3};
    for (const auto& g : enumerate_symbols(pp)) {
      const Integer size = class_size(pp, g);
      if (size == 0) continue;
      std::map<Integer, std::uint64_t> h;
      const std::uint64_t draws = 50 * size.get_ui();
      for (std::uint64_t i = 0; i < draws; ++i) {
        const Integer v = sample_symbol_elem(pp, g, rng);
        EXPECT_EQ(symbol_of(pp, v), g);
        ++h[v];
      }
      EXPECT_EQ(h.size(), size.get_ui()) << g.to_string();
      std::vector<std::uint64_t> c;
      for (const auto& [v, n] : h) c.push_back(n);
      EXPECT_TRUE(chi_square_uniform(c, size.get_ui()).pass) << p << " " << g.to_string();
    }
  }
}

TEST(SampleSplit, Examples) {
  RandomSource rng{3};
  const PrimePower p5{5UL, 1};
  const PkSymbol nr{Order{0}, -1};
  for (int i = 0; i < 20; ++i) {
    const auto r = sample_split(p5, Integer{1}, nr, nr, rng);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, std::make_pair(Integer{3}, Integer{3}));
  }
  // 1 = a + b with both of order 1 mod 5 is impossible.
  EXPECT_FALSE(sample_split(p5, Integer{1}, PkSymbol::zero(), PkSymbol::zero(), rng).has_value());
}

TEST(SampleSplit, LargePrimeUniformOverSplitClass) {
  RandomSource rng{4};
  SamplerStats stats;
  const PrimePower pp{29UL, 2};
  const PkSymbol plus{Order{0}, 1};
  const PkSymbol minus{Order{0}, -1};
  const Integer t{3};
  const auto expected = split_class_size(pp, symbol_of(pp, t), plus, minus);
  std::map<Integer, std::uint64_t> h;
  const std::uint64_t draws = 20 * expected.get_ui();
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto r = sample_split(pp, t, plus, minus, rng, &stats);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(pp.reduce(r->first + r->second), t);
    EXPECT_EQ(symbol_of(pp, r->first), plus);
    EXPECT_EQ(symbol_of(pp, r->second), minus);
    ++h[r->first];
  }
  EXPECT_EQ(h.size(), expected.get_ui());
  std::vector<std::uint64_t> c;
  for (const auto& [v, n] : h) c.push_back(n);
  EXPECT_TRUE(chi_square_uniform(c, expected.get_ui()).pass);
  EXPECT_GT(stats.split_trials, 0u);
  EXPECT_LT(stats.split_rejection_rate(), 0.9);
}

TEST(SampleType1, Examples) {
  RandomSource rng{5};
  std::set<Integer> seen;
  for (int i = 0; i < 100; ++i) {
    const auto out = sample_type1(Integer{1}, PrimePower{5UL, 2}, Integer{1}, RepKind::Primitive, rng);
    ASSERT_TRUE(out.ok());
    seen.insert(out.x.at(0));
  }
  EXPECT_EQ(seen, (std::set<Integer>{1, 24}));
  seen.clear();
  for (int i = 0; i < 100; ++i) {
    const auto out = sample_type1(Integer{1}, PrimePower{3UL, 2}, Integer{0}, RepKind::NonPrimitive, rng);
    ASSERT_TRUE(out.ok());
    seen.insert(out.x.at(0));
  }
  EXPECT_EQ(seen, (std::set<Integer>{0, 3, 6}));
  EXPECT_EQ(sample_type1(Integer{1}, PrimePower{5UL, 1}, Integer{2}, RepKind::Any, rng).status,
            SampleStatus::NoSolution);
}

TEST(SampleType2, Examples) {
  RandomSource rng{6};
  const TypeII hyp{0, 0, 1, 0};
  std::map<Vec, std::uint64_t> h;
  for (int i = 0; i < 400; ++i) {
    const auto out = sample_type2(hyp, 2, Integer{2}, RepKind::Any, rng);
    ASSERT_TRUE(out.ok());
    ++h[out.x];
  }
  EXPECT_EQ(keys(h), (std::set<Vec>{{1, 1}, {1, 3}, {3, 1}, {3, 3}}));
  EXPECT_TRUE(chi_square_uniform(cells(h), 4).pass);
  EXPECT_EQ(sample_type2(hyp, 2, Integer{1}, RepKind::Any, rng).status, SampleStatus::NoSolution);

  const TypeII deep{2, 1, 1, 1};
  std::set<Vec> seen;
  for (int i = 0; i < 400; ++i) {
    const auto out = sample_type2(deep, 2, Integer{0}, RepKind::NonPrimitive, rng);
    ASSERT_TRUE(out.ok());
    seen.insert(out.x);
  }
  EXPECT_EQ(seen, (std::set<Vec>{{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
}

TEST(SampleForm, Examples) {
  RandomSource rng{7};
  auto h = histogram(QuadraticForm{{1}}, PrimePower{3UL, 1}, Integer{1}, RepKind::Any, 200, 7);
  EXPECT_EQ(keys(h), (std::set<Vec>{{1}, {2}}));
  EXPECT_TRUE(chi_square_uniform(cells(h), 2).pass);

  const QuadraticForm i2{{1, 0}, {0, 1}};
  h = histogram(i2, PrimePower{5UL, 1}, Integer{1}, RepKind::Any, 400, 8);
  EXPECT_EQ(keys(h), (std::set<Vec>{{0, 1}, {0, 4}, {1, 0}, {4, 0}}));
  EXPECT_TRUE(chi_square_uniform(cells(h), 4).pass);

  const auto c = count_form(i2, PrimePower{5UL, 1}, Integer{3});
  const auto out = sample_form(i2, PrimePower{5UL, 1}, Integer{3}, RepKind::Any, rng);
  EXPECT_EQ(out.ok(), c.total > 0);
}

TEST(SampleForm, NoSolutionWhenKindEmpty) {
  RandomSource rng{9};
  // x^2 = 0 mod 3 has only the non-primitive root.
  EXPECT_EQ(sample_form(QuadraticForm{{1}}, PrimePower{3UL, 1}, Integer{0}, RepKind::Primitive, rng).status,
            SampleStatus::NoSolution);
  const auto out = sample_form(QuadraticForm{{1}}, PrimePower{3UL, 1}, Integer{0}, RepKind::NonPrimitive, rng);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.x, (Vec{0}));
}

TEST(SampleForm, SupportAndUniformityOnRandomForms) {
  std::mt19937_64 g{31};
  std::uint64_t seed = 100;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    for (Exponent k = 1; k <= 3; ++k) {
      const PrimePower pp{p, k};
      for (std::size_t n = 1; n <= 2; ++n) {
        const auto q = random_form(pp, n, g);
        const Integer t{static_cast<unsigned long>(g() % pp.modulus().get_ui())};
        for (RepKind kind : {RepKind::Any, RepKind::Primitive, RepKind::NonPrimitive}) {
          const auto support = oracle_set(q, pp, t, kind);
          if (support.empty() || support.size() > 64) continue;
          const auto h = histogram(q, pp, t, kind, 100 * support.size(), ++seed);
          EXPECT_EQ(keys(h), support) << p << "^" << k << " n=" << n << " " << to_string(kind);
          EXPECT_TRUE(chi_square_uniform(cells(h), support.size()).pass)
              << p << "^" << k << " n=" << n << " " << to_string(kind);
        }
      }
    }
  }
}

TEST(SampleForm, ValidOnLargerInstances) {
  std::mt19937_64 g{32};
  RandomSource rng{33};
  for (unsigned long p : {2UL, 3UL, 11UL, 1000003UL}) {
    const PrimePower pp{p, 6};
    for (int rep = 0; rep < 10; ++rep) {
      const auto q = random_form(pp, 2 + g() % 4, g);
      FormSampler s{q, pp};
      Vec x0;
      for (std::size_t i = 0; i < q.dim(); ++i) x0.emplace_back(static_cast<unsigned long>(p * i + 1));
      const Integer t = q.evaluate(x0, pp.modulus());
      for (RepKind kind : {RepKind::Any, RepKind::Primitive, RepKind::NonPrimitive}) {
        const auto c = s.counter().count(t);
        const Integer avail = kind == RepKind::Any ? c.total : kind == RepKind::Primitive ? c.primitive : c.nonprimitive;
        const auto out = s.sample(t, kind, rng);
        if (avail == 0) {
          EXPECT_EQ(out.status, SampleStatus::NoSolution);
          continue;
        }
        ASSERT_TRUE(out.ok()) << p;
        EXPECT_EQ(q.evaluate(out.x, pp.modulus()), t);
        EXPECT_TRUE(matches_kind(out.x, pp.p(), kind));
      }
    }
  }
}

TEST(SampleForm, TwoAdicNeverFails) {
  std::mt19937_64 g{34};
  RandomSource rng{35};
  const PrimePower pp{2UL, 5};
  for (int rep = 0; rep < 40; ++rep) {
    const auto q = random_form(pp, 1 + g() % 3, g);
    FormSampler s{q, pp};
    const Integer t{static_cast<unsigned long>(g() % 32)};
    for (int i = 0; i < 20; ++i) EXPECT_NE(s.sample(t, RepKind::Any, rng).status, SampleStatus::Fail);
    EXPECT_EQ(s.stats().failures, 0u);
  }
}

TEST(SampleForm, DeterministicForSeed) {
  const QuadraticForm q{{2, 1, 0}, {1, 4, 3}, {0, 3, 6}};
  const PrimePower pp{7UL, 3};
  FormSampler a{q, pp};
  FormSampler b{q, pp};
  RandomSource ra{77};
  RandomSource rb{77};
  for (int i = 0; i < 50; ++i) {
    const auto x = a.sample(Integer{5}, RepKind::Any, ra);
    const auto y = b.sample(Integer{5}, RepKind::Any, rb);
    EXPECT_EQ(x.status, y.status);
    EXPECT_EQ(x.x, y.x);
  }
}

TEST(Crt, Examples) {
  EXPECT_EQ(crt({Integer{1}, Integer{4}}, {Integer{3}, Integer{5}}), 4);
  EXPECT_EQ(crt({Integer{2}, Integer{3}, Integer{1}}, {Integer{3}, Integer{5}, Integer{7}}), 8);
  EXPECT_EQ(crt({Integer{6}}, {Integer{9}}), 6);
}

TEST(SampleComposite, Examples) {
  RandomSource rng{40};
  const QuadraticForm one{{1}};
  const std::vector<PrimePower> f15{PrimePower{3UL, 1}, PrimePower{5UL, 1}};
  std::map<Vec, std::uint64_t> h;
  for (int i = 0; i < 400; ++i) {
    const auto out = sample_composite(one, f15, Integer{1}, RepKind::Any, rng);
    ASSERT_TRUE(out.ok());
    ++h[out.x];
  }
  EXPECT_EQ(keys(h), (std::set<Vec>{{1}, {4}, {11}, {14}}));
  EXPECT_TRUE(chi_square_uniform(cells(h), 4).pass);
  EXPECT_EQ(sample_composite(one, f15, Integer{7}, RepKind::Any, rng).status, SampleStatus::NoSolution);
}

TEST(SampleComposite, SingleFactorMatchesFormSampler) {
  const QuadraticForm q{{1, 0}, {0, 3}};
  const PrimePower pp{5UL, 2};
  RandomSource a{50};
  RandomSource b{50};
  CompositeSampler cs{q, {pp}};
  FormSampler fs{q, pp};
  for (int i = 0; i < 30; ++i) EXPECT_EQ(cs.sample(Integer{4}, RepKind::Any, a).x, fs.sample(Integer{4}, RepKind::Any, b).x);
}

TEST(SampleComposite, SupportAndUniformity) {
  const QuadraticForm q{{1, 0}, {0, 2}};
  const std::vector<PrimePower> f{PrimePower{2UL, 2}, PrimePower{3UL, 1}};
  const auto e = enumerate_reps(q, f, Integer{3});
  CompositeSampler cs{q, f};
  RandomSource rng{60};
  for (RepKind kind : {RepKind::Any, RepKind::Primitive, RepKind::NonPrimitive}) {
    std::set<Vec> support;
    for (const auto& v : e.vectors) {
      Vec x(v.begin(), v.end());
      bool prim = true;
      for (const auto& pp : f) prim = prim && is_primitive(x, pp.p());
      if (kind == RepKind::Any || prim == (kind == RepKind::Primitive)) support.insert(x);
    }
    if (support.empty()) {
      EXPECT_EQ(cs.sample(Integer{3}, kind, rng).status, SampleStatus::NoSolution);
      continue;
    }
    std::map<Vec, std::uint64_t> h;
    for (std::size_t i = 0; i < 200 * support.size(); ++i) {
      const auto out = cs.sample(Integer{3}, kind, rng);
      ASSERT_TRUE(out.ok());
      ++h[out.x];
    }
    EXPECT_EQ(keys(h), support) << to_string(kind);
    EXPECT_TRUE(chi_square_uniform(cells(h), support.size()).pass) << to_string(kind);
  }
}
