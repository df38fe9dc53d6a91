#include "qfmod/errors.hpp"
#include "qfmod/symbols.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace qfmod;

namespace {

const PkSymbol kInf = PkSymbol::zero();

PkSymbol sym(Exponent o, SignValue s) { return PkSymbol{Order{o}, s}; }

std::vector<PrimePower> small_moduli(unsigned long limit) {
  std::vector<PrimePower> out;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    for (Exponent k = 1;; ++k) {
      const PrimePower pp{p, k};
      if (pp.modulus() > limit) break;
      out.push_back(pp);
    }
  }
  return out;
}

}  // namespace

TEST(SymbolOf, Examples) {
  EXPECT_EQ(symbol_of(PrimePower{5UL, 2}, Integer{4}), sym(0, 1));
  EXPECT_EQ(symbol_of(PrimePower{2UL, 4}, Integer{12}), sym(2, 3));
  EXPECT_EQ(symbol_of(PrimePower{3UL, 2}, Integer{0}), kInf);
  EXPECT_EQ(symbol_of(PrimePower{3UL, 2}, Integer{9}), kInf);
  EXPECT_EQ(symbol_of(PrimePower{3UL, 2}, Integer{-1}), sym(0, -1));
}

TEST(ClassSize, Examples) {
  EXPECT_EQ(class_size(PrimePower{2UL, 4}, sym(0, 1)), 2);
  EXPECT_EQ(class_size(PrimePower{5UL, 2}, sym(1, 1)), 2);
  EXPECT_EQ(class_size(PrimePower{3UL, 1}, sym(0, -1)), 1);
  EXPECT_EQ(class_size(PrimePower{3UL, 1}, kInf), 1);
}

TEST(ClassSize, MatchesEnumeration) {
  for (const auto& pp : small_moduli(1024)) {
    std::map<std::size_t, unsigned long> seen;
    for (unsigned long t = 0; t < pp.modulus().get_ui(); ++t) ++seen[symbol_index(pp, symbol_of(pp, Integer{t}))];
    for (const auto& g : enumerate_symbols(pp))
      EXPECT_EQ(class_size(pp, g), seen[symbol_index(pp, g)]) << pp.p() << "^" << pp.k() << " " << g.to_string();
  }
}

TEST(ClassSize, PartitionsTheRing) {
  for (const auto& pp : small_moduli(4096)) {
    Integer sum = 0;
    for (const auto& g : enumerate_symbols(pp)) sum += class_size(pp, g);
    EXPECT_EQ(sum, pp.modulus());
  }
  const PrimePower big{Integer{1000003}, 5};
  Integer sum = 0;
  for (const auto& g : enumerate_symbols(big)) sum += class_size(big, g);
  EXPECT_EQ(sum, big.modulus());
}

TEST(EnumerateSymbols, Counts) {
  const auto s = enumerate_symbols(PrimePower{3UL, 2});
  EXPECT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0], kInf);
  const auto t = enumerate_symbols(PrimePower{2UL, 1});
  EXPECT_EQ(t, (std::vector<PkSymbol>{kInf, sym(0, 1), sym(0, 3), sym(0, 5), sym(0, 7)}));
  EXPECT_EQ(symbol_count(PrimePower{7UL, 6}), 13u);
  EXPECT_EQ(symbol_count(PrimePower{2UL, 6}), 25u);
}

TEST(EnumerateSymbols, IndexIsPosition) {
  for (const auto& pp : small_moduli(512)) {
    const auto s = enumerate_symbols(pp);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_EQ(symbol_index(pp, s[i]), i);
      EXPECT_TRUE(is_valid_symbol(pp, s[i]));
    }
  }
}

TEST(Symbols, InfinityOnlyWithSignZero) {
  const PrimePower pp{5UL, 2};
  EXPECT_FALSE(is_valid_symbol(pp, PkSymbol{Order::infinity(), 1}));
  EXPECT_FALSE(is_valid_symbol(pp, sym(0, 0)));
  EXPECT_FALSE(is_valid_symbol(pp, sym(2, 1)));
  EXPECT_FALSE(is_valid_symbol(PrimePower{2UL, 3}, sym(0, 2)));
}

TEST(Representative, HasItsSymbol) {
  for (const auto& pp : small_moduli(512))
    for (const auto& g : enumerate_symbols(pp)) {
      if (class_size(pp, g) == 0) continue;
      EXPECT_EQ(symbol_of(pp, representative(pp, g)), g);
    }
}

TEST(SplitPairCountModP, Examples) {
  EXPECT_EQ(split_pair_count_mod_p(Integer{13}, 1, 1, 1), 2);
  EXPECT_EQ(split_pair_count_mod_p(Integer{7}, 1, 1, -1), 2);
  EXPECT_EQ(split_pair_count_mod_p(Integer{5}, 1, 1, 1), 0);
}

TEST(SplitPairCountModP, MatchesBruteForce) {
  for (unsigned long p : {3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL}) {
    for (unsigned long a = 1; a < p; ++a) {
      const int la = legendre(Integer{a}, Integer{p});
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          unsigned long n = 0;
          for (unsigned long x = 1; x < p; ++x) {
            const unsigned long y = (x + a) % p;
            if (y == 0) continue;
            if (legendre(Integer{x}, Integer{p}) == s1 && legendre(Integer{y}, Integer{p}) == s2) ++n;
          }
          EXPECT_EQ(split_pair_count_mod_p(Integer{p}, la, s1, s2), n) << p << " a=" << a;
        }
    }
  }
}

TEST(SplitClassSize, Examples) {
  EXPECT_EQ(split_class_size(PrimePower{5UL, 1}, sym(0, 1), sym(0, -1), sym(0, -1)), 1);
  EXPECT_EQ(split_class_size(PrimePower{3UL, 2}, kInf, kInf, kInf), 1);
  for (Exponent k = 1; k <= 5; ++k) {
    const PrimePower pp{2UL, k};
    for (const auto& g : enumerate_symbols(pp)) {
      if (g.is_zero()) continue;
      for (const auto& g1 : enumerate_symbols(pp))
        for (const auto& g2 : enumerate_symbols(pp))
          if (g1.ord == g.ord && g2.ord == g.ord) EXPECT_EQ(split_class_size(pp, g, g1, g2), 0);
    }
  }
}

TEST(SplitClassSize, MatchesBruteForceEverywhere) {
  for (const auto& pp : small_moduli(2401)) {
    if (pp.k() > 4) continue;
    const unsigned long q = pp.modulus().get_ui();
    const auto syms = enumerate_symbols(pp);
    const std::size_t ns = syms.size();
    std::vector<std::size_t> idx(q);
    for (unsigned long a = 0; a < q; ++a) idx[a] = symbol_index(pp, symbol_of(pp, Integer{a}));
    for (const auto& g : syms) {
      if (class_size(pp, g) == 0) continue;
      const unsigned long t = representative(pp, g).get_ui();
      std::vector<unsigned long> pairs(ns * ns, 0);
      for (unsigned long a = 0; a < q; ++a) ++pairs[idx[a] * ns + idx[(t + q - a) % q]];
      for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j)
          ASSERT_EQ(split_class_size(pp, g, syms[i], syms[j]), pairs[i * ns + j])
              << pp.p() << "^" << pp.k() << " " << g.to_string() << " " << syms[i].to_string() << " "
              << syms[j].to_string();
    }
  }
}

TEST(SplitClassSize, CompleteAndSymmetric) {
  for (const auto& pp : small_moduli(512)) {
    const auto syms = enumerate_symbols(pp);
    for (const auto& g : syms) {
      if (class_size(pp, g) == 0) continue;
      Integer sum = 0;
      for (const auto& g1 : syms)
        for (const auto& g2 : syms) {
          const Integer s = split_class_size(pp, g, g1, g2);
          sum += s;
          EXPECT_EQ(s, split_class_size(pp, g, g2, g1));
        }
      EXPECT_EQ(sum, pp.modulus()) << pp.p() << "^" << pp.k() << " " << g.to_string();
    }
  }
}

TEST(SplitTable, ListsExactlyTheNonZeroSplits) {
  for (const auto& pp : small_moduli(256)) {
    const auto syms = enumerate_symbols(pp);
    const auto table = split_table(pp);
    ASSERT_EQ(table.size(), syms.size());
    for (std::size_t g = 0; g < syms.size(); ++g) {
      std::size_t nonzero = 0;
      for (const auto& g1 : syms)
        for (const auto& g2 : syms) nonzero += split_class_size(pp, syms[g], g1, g2) != 0 ? 1 : 0;
      if (class_size(pp, syms[g]) == 0) continue;
      EXPECT_EQ(table[g].size(), nonzero);
      for (const auto& e : table[g]) EXPECT_EQ(e.size, split_class_size(pp, syms[g], syms[e.left], syms[e.right]));
    }
  }
}

TEST(SplitClassSize, LargePrimeCompleteness) {
  const PrimePower pp{Integer{1009}, 3};
  const auto syms = enumerate_symbols(pp);
  for (const auto& g : syms) {
    Integer sum = 0;
    for (const auto& g1 : syms)
      for (const auto& g2 : syms) sum += split_class_size(pp, g, g1, g2);
    EXPECT_EQ(sum, pp.modulus());
  }
}
