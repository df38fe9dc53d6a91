#include "qfmod/random.hpp"

#include "qfmod/errors.hpp"

#include <bit>

namespace qfmod {

std::uint64_t uniform_below(std::uint64_t n, RandomSource& rng) {
  if (n == 0) throw DomainError("uniform_below: n must be positive");
  if (n == 1) return 0;
  const std::uint64_t top = n - 1;
  const int bits = std::bit_width(top);
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  for (;;) {
    std::uint64_t v = rng.next_word() & mask;
    if (v <= top) return v;
  }
}

Integer uniform_below(const Integer& n, RandomSource& rng) {
  if (n < 1) throw DomainError("uniform_below: n must be positive");
  if (n.fits_ulong_p()) return Integer{uniform_below(std::uint64_t{n.get_ui()}, rng)};

  const Integer top = n - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t spare = words * 64 - bits;
  for (;;) {
    Integer v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng.next_word();
      if (w == 0 && spare > 0) word >>= spare;
      v <<= 64;
      v += Integer{static_cast<unsigned long>(word)};
    }
    if (v <= top) return v;
  }
}

}  // namespace qfmod
