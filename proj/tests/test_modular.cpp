#include <gmpxx.h>

#include <set>
#include <vector>

#include "doctest.h"
#include "ntst/modular.hpp"
#include "ntst/rng.hpp"

using namespace ntst;

namespace {

mpz_class detExactBareiss(std::vector<mpz_class> a, int s) {
  // fraction-free elimination to cross-check the modular determinant
  if (s == 0) return 1;
  mpz_class prev = 1, sign = 1;
  for (int k = 0; k + 1 < s; ++k) {
    if (a[k * s + k] == 0) {
      int swap = -1;
      for (int i = k + 1; i < s; ++i)
        if (a[i * s + k] != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < s; ++j) std::swap(a[k * s + j], a[swap * s + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < s; ++i)
      for (int j = k + 1; j < s; ++j) {
        a[i * s + j] = (a[i * s + j] * a[k * s + k] - a[i * s + k] * a[k * s + j]) / prev;
      }
    prev = a[k * s + k];
  }
  return sign * a[(s - 1) * s + (s - 1)];
}

}  // namespace

TEST_CASE("modulusPrimes returns distinct 62-bit primes") {
  std::vector<uint64_t> ps = modulusPrimes(8);
  REQUIRE(ps.size() == 8);
  std::set<uint64_t> uniq(ps.begin(), ps.end());
  CHECK(uniq.size() == 8);
  for (uint64_t p : ps) {
    CHECK(p > (uint64_t(1) << 61));
    CHECK(p < (uint64_t(1) << 62));
    mpz_class z(p);  // fits: p < 2^62
    CHECK(mpz_probab_prime_p(z.get_mpz_t(), 40) > 0);
  }
  // deterministic: asking again gives the same list
  CHECK(modulusPrimes(3) == std::vector<uint64_t>(ps.begin(), ps.begin() + 3));
}

TEST_CASE("Mont64 arithmetic matches GMP") {
  uint64_t p = modulusPrimes(1)[0];
  Mont64 mont = Mont64::make(p);
  mpz_class mp(p);
  Rng rng(99);
  for (int it = 0; it < 200; ++it) {
    uint64_t a = rng.next() % p, b = rng.next() % p;
    mpz_class za(a), zb(b);
    uint64_t ma = mont.toM(a), mb = mont.toM(b);
    CHECK(mont.fromM(mont.mul(ma, mb)) == mpz_class(za * zb % mp).get_ui());
    CHECK(mont.fromM(mont.add(ma, mb)) == mpz_class((za + zb) % mp).get_ui());
    CHECK(mont.fromM(mont.sub(ma, mb)) == mpz_class(((za - zb) % mp + mp) % mp).get_ui());
    if (a != 0) {
      // a * a^{-1} == 1
      CHECK(mont.mul(ma, mont.inv(ma)) == mont.one);
    }
    uint64_t e = rng.next() % 1000;
    mpz_class ze;
    mpz_powm_ui(ze.get_mpz_t(), za.get_mpz_t(), e, mp.get_mpz_t());
    CHECK(mont.fromM(mont.pow(ma, e)) == ze.get_ui());
  }
  CHECK(mont.fromM(mont.one) == 1);
  CHECK(mont.toM(0) == 0);
}

TEST_CASE("detMod agrees with exact fraction-free elimination") {
  uint64_t p = modulusPrimes(1)[0];
  Mont64 mont = Mont64::make(p);
  mpz_class mp(p);
  Rng rng(123);
  for (int s = 0; s <= 6; ++s) {
    for (int it = 0; it < 20; ++it) {
      std::vector<mpz_class> exact(s * s);
      std::vector<uint64_t> modm(s * s);
      for (int i = 0; i < s * s; ++i) {
        long v = rng.range(-9, 9);
        exact[i] = v;
        uint64_t res = mpz_class((mpz_class(v) % mp + mp) % mp).get_ui();
        modm[i] = mont.toM(res);
      }
      mpz_class want = detExactBareiss(exact, s) % mp;
      if (want < 0) want += mp;
      std::vector<uint64_t> work = modm;
      CHECK(mont.fromM(detMod(work, s, mont)) == want.get_ui());
    }
  }
  // singular matrix
  std::vector<uint64_t> sing = {mont.toM(1), mont.toM(2), mont.toM(2), mont.toM(4)};
  CHECK(detMod(sing, 2, mont) == 0);
}

TEST_CASE("interpolate reconstructs polynomial coefficients") {
  uint64_t p = modulusPrimes(1)[0];
  Mont64 mont = Mont64::make(p);
  Rng rng(5);
  for (int deg = 0; deg <= 7; ++deg) {
    std::vector<uint64_t> coeff(deg + 1);
    for (auto& c : coeff) c = mont.toM(rng.next() % p);
    std::vector<uint64_t> points, values;
    for (int i = 0; i <= deg; ++i) {
      uint64_t x = i + 1;  // distinct plain points
      points.push_back(x);
      uint64_t xm = mont.toM(x), acc = 0, powx = mont.one;
      for (int j = 0; j <= deg; ++j) {
        acc = mont.add(acc, mont.mul(coeff[j], powx));
        powx = mont.mul(powx, xm);
      }
      values.push_back(acc);
    }
    std::vector<uint64_t> got = interpolate(points, values, mont);
    REQUIRE(got.size() == coeff.size());
    for (size_t i = 0; i < coeff.size(); ++i) CHECK(got[i] == coeff[i]);
  }
}

TEST_CASE("crtSigned recovers signed integers") {
  std::vector<uint64_t> primes = modulusPrimes(3);
  mpz_class prod = 1;
  for (uint64_t p : primes) prod *= mpz_class(p);
  Rng rng(31);
  std::vector<mpz_class> samples = {0, 1, -1, 12345, -987654321};
  for (int it = 0; it < 30; ++it) {
    mpz_class x = mpz_class(rng.next()) * (rng.chance(0.5) ? 1 : -1);
    samples.push_back(x);
  }
  for (const mpz_class& x : samples) {
    REQUIRE(2 * abs(x) < prod);
    std::vector<uint64_t> residues;
    for (uint64_t p : primes) {
      mpz_class r = x % mpz_class(p);
      if (r < 0) r += mpz_class(p);
      residues.push_back(r.get_ui());
    }
    CHECK(crtSigned(residues, primes) == x);
  }
}
