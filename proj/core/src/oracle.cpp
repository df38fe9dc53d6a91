#include "qfmod/oracle.hpp"

#include "qfmod/errors.hpp"

#include <array>

namespace qfmod {

namespace {

// Upper 0.001 quantiles, df = 1..255.
constexpr std::array<double, 255> kCritical = {
    10.827566, 13.815511, 16.266236, 18.466827, 20.515006, 22.457744,
    24.321886, 26.124482, 27.877165, 29.588298, 31.264134, 32.909490,
    34.528179, 36.123274, 37.697298, 39.252355, 40.790217, 42.312396,
    43.820196, 45.314747, 46.797038, 48.267942, 49.728232, 51.178598,
    52.619656, 54.051962, 55.476020, 56.892285, 58.301173, 59.703064,
    61.098306, 62.487219, 63.870099, 65.247217, 66.618829, 67.985168,
    69.346452, 70.702887, 72.054663, 73.401958, 74.744938, 76.083763,
    77.418578, 78.749524, 80.076732, 81.400326, 82.720423, 84.037134,
    85.350565, 86.660815, 87.967980, 89.272151, 90.573412, 91.871847,
    93.167533, 94.460545, 95.750954, 97.038829, 98.324234, 99.607233,
    100.887885, 102.166248, 103.442377, 104.716325, 105.988143, 107.257880,
    108.525582, 109.791296, 111.055066, 112.316932, 113.576936, 114.835117,
    116.091513, 117.346161, 118.599095, 119.850350, 121.099959, 122.347954,
    123.594366, 124.839224, 126.082558, 127.324397, 128.564766, 129.803693,
    131.041204, 132.277323, 133.512074, 134.745481, 135.977567, 137.208354,
    138.437864, 139.666117, 140.893134, 142.118935, 143.343540, 144.566966,
    145.789233, 147.010358, 148.230359, 149.449253, 150.667056, 151.883784,
    153.099453, 154.314080, 155.527677, 156.740261, 157.951845, 159.162444,
    160.372071, 161.580740, 162.788463, 163.995253, 165.201123, 166.406085,
    167.610151, 168.813332, 170.015640, 171.217086, 172.417682, 173.617436,
    174.816361, 176.014467, 177.211763, 178.408259, 179.603965, 180.798891,
    181.993045, 183.186437, 184.379076, 185.570970, 186.762129, 187.952559,
    189.142271, 190.331271, 191.519567, 192.707169, 193.894082, 195.080315,
    196.265875, 197.450770, 198.635005, 199.818590, 201.001529, 202.183831,
    203.365501, 204.546546, 205.726973, 206.906787, 208.085996, 209.264605,
    210.442620, 211.620047, 212.796891, 213.973160, 215.148857, 216.323989,
    217.498561, 218.672578, 219.846046, 221.018970, 222.191355, 223.363205,
    224.534526, 225.705324, 226.875601, 228.045364, 229.214616, 230.383363,
    231.551609, 232.719359, 233.886616, 235.053385, 236.219670, 237.385476,
    238.550806, 239.715665, 240.880057, 242.043985, 243.207454, 244.370467,
    245.533029, 246.695142, 247.856811, 249.018039, 250.178830, 251.339187,
    252.499114, 253.658615, 254.817692, 255.976349, 257.134589, 258.292416,
    259.449833, 260.606843, 261.763449, 262.919654, 264.075461, 265.230874,
    266.385895, 267.540528, 268.694774, 269.848638, 271.002122, 272.155228,
    273.307960, 274.460320, 275.612310, 276.763935, 277.915195, 279.066095,
    280.216636, 281.366820, 282.516652, 283.666132, 284.815263, 285.964049,
    287.112490, 288.260590, 289.408352, 290.555776, 291.702866, 292.849624,
    293.996051, 295.142152, 296.287926, 297.433377, 298.578507, 299.723318,
    300.867812, 302.011991, 303.155857, 304.299412, 305.442658, 306.585598,
    307.728232, 308.870564, 310.012594, 311.154326, 312.295760, 313.436899,
    314.577744, 315.718298, 316.858561, 317.998537, 319.138226, 320.277630,
    321.416752, 322.555592, 323.694153, 324.832437, 325.970444, 327.108176,
    328.245636, 329.382825, 330.519744,
};

struct Walk {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> entries;  // Q mod q, row-major
  std::vector<std::uint64_t> primes;
};

Walk prepare(const QuadraticForm& form, const std::vector<PrimePower>& factors, std::uint64_t budget) {
  require_coprime_factors(factors);
  if (factors.empty()) throw DomainError("no prime power factors");
  Integer q = 1;
  for (const auto& f : factors) q *= f.modulus();
  const Integer space = ipow(q, form.dim());
  if (space > Integer{static_cast<unsigned long>(budget)}) {
    throw BudgetExceeded("enumeration needs " + space.get_str() + " vectors, budget " + std::to_string(budget));
  }
  Walk w;
  w.q = q.get_ui();
  w.n = form.dim();
  for (std::size_t i = 0; i < w.n; ++i)
    for (std::size_t j = 0; j < w.n; ++j) w.entries.push_back(mod(form(i, j), q).get_ui());
  for (const auto& f : factors) w.primes.push_back(f.p().get_ui());
  return w;
}

// Calls visit(x, value, primitive) for every x in (Z/q)^n, last coordinate
// fastest. The value along the last coordinate is updated by differences.
template <typename Visit>
void walk(const Walk& w, Visit&& visit) {
  const std::uint64_t q = w.q;
  const std::size_t n = w.n;
  const std::uint32_t full = (std::uint32_t{1} << w.primes.size()) - 1;
  std::vector<std::uint64_t> x(n, 0);
  if (n == 0) {
    visit(x, std::uint64_t{0}, full == 0);
    return;
  }
  auto entry = [&](std::size_t i, std::size_t j) { return w.entries[i * n + j]; };

  std::vector<std::uint32_t> unit_mask(q, 0);
  for (std::uint64_t z = 0; z < q; ++z)
    for (std::size_t i = 0; i < w.primes.size(); ++i)
      if (z % w.primes[i] != 0) unit_mask[z] |= std::uint32_t{1} << i;

  const std::size_t last = n - 1;
  const std::uint64_t qn = entry(last, last);
  for (;;) {
    std::uint64_t c0 = 0;
    std::uint64_t c1 = 0;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < last; ++i) {
      mask |= unit_mask[x[i]];
      for (std::size_t j = 0; j < last; ++j) c0 = (c0 + entry(i, j) * x[i] % q * x[j]) % q;
      c1 = (c1 + 2 * entry(i, last) * x[i]) % q;
    }
    std::uint64_t value = c0;
    std::uint64_t diff = (c1 + qn) % q;
    const std::uint64_t accel = 2 * qn % q;
    for (std::uint64_t z = 0; z < q; ++z) {
      x[last] = z;
      visit(x, value, (mask | unit_mask[z]) == full);
      value = (value + diff) % q;
      diff = (diff + accel) % q;
    }
    x[last] = 0;
    std::size_t i = last;
    while (i > 0) {
      --i;
      if (++x[i] < q) break;
      x[i] = 0;
      if (i == 0) return;
    }
    if (last == 0) return;
  }
}

}  // namespace

RepCounts RepTally::at(std::uint64_t t) const {
  const std::uint64_t r = t % modulus;
  return RepCounts::from(Integer{static_cast<unsigned long>(primitive[r])},
                         Integer{static_cast<unsigned long>(total[r] - primitive[r])});
}

RepTally tally_reps(const QuadraticForm& q, const std::vector<PrimePower>& factors, std::uint64_t budget) {
  const Walk w = prepare(q, factors, budget);
  RepTally tally;
  tally.modulus = w.q;
  tally.total.assign(w.q, 0);
  tally.primitive.assign(w.q, 0);
  walk(w, [&](const std::vector<std::uint64_t>&, std::uint64_t value, bool prim) {
    ++tally.total[value];
    if (prim) ++tally.primitive[value];
  });
  return tally;
}

RepTally tally_reps(const QuadraticForm& q, const PrimePower& pp, std::uint64_t budget) {
  return tally_reps(q, std::vector<PrimePower>{pp}, budget);
}

Enumeration enumerate_reps(const QuadraticForm& q, const std::vector<PrimePower>& factors, const Integer& t,
                           std::uint64_t budget) {
  const Walk w = prepare(q, factors, budget);
  const std::uint64_t target = mod(t, Integer{static_cast<unsigned long>(w.q)}).get_ui();
  Enumeration out;
  std::uint64_t prim = 0;
  walk(w, [&](const std::vector<std::uint64_t>& x, std::uint64_t value, bool primitive) {
    if (value != target) return;
    out.vectors.push_back(x);
    if (primitive) ++prim;
  });
  const std::uint64_t total = out.vectors.size();
  out.counts = RepCounts::from(Integer{static_cast<unsigned long>(prim)},
                               Integer{static_cast<unsigned long>(total - prim)});
  return out;
}

Enumeration enumerate_reps(const QuadraticForm& q, const PrimePower& pp, const Integer& t, std::uint64_t budget) {
  return enumerate_reps(q, std::vector<PrimePower>{pp}, t, budget);
}

double chi_square_critical(std::uint64_t df) {
  if (df == 0 || df > kCritical.size()) throw DomainError("chi-square table covers 1..255 degrees of freedom");
  return kCritical[df - 1];
}

ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& observed, std::uint64_t support_size) {
  if (support_size == 0 || support_size > kCritical.size() + 1) {
    throw DomainError("support size must be in [1, 256]");
  }
  if (observed.size() > support_size) throw DomainError("histogram has more cells than the support");
  Integer n = 0;
  Integer squares = 0;
  for (std::uint64_t o : observed) {
    const Integer v{static_cast<unsigned long>(o)};
    n += v;
    squares += v * v;
  }
  if (n < 5 * Integer{static_cast<unsigned long>(support_size)}) {
    throw InsufficientSamples("need at least " + std::to_string(5 * support_size) + " observations");
  }
  ChiSquare out;
  if (support_size == 1) {
    out.statistic = 0;
    out.pass = true;
    return out;
  }
  // sum (O - N/K)^2 / (N/K) = (K sum O^2 - N^2) / N
  out.statistic = Rational{Integer{static_cast<unsigned long>(support_size)} * squares - n * n, n};
  out.statistic.canonicalize();
  out.critical = chi_square_critical(support_size - 1);
  out.pass = out.statistic.get_d() < out.critical;
  return out;
}

}  // namespace qfmod
