#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace ntst {

/// Montgomery arithmetic mod an odd prime p < 2^63. All mul/pow/inv operate on
/// values in Montgomery form; add/sub work in either form.
struct Mont64 {
  uint64_t p = 0, pInv = 0, r2 = 0, one = 0;

  static Mont64 make(uint64_t p);

  uint64_t toM(uint64_t x) const { return mul(x % p, r2); }
  uint64_t fromM(uint64_t x) const { return redc((unsigned __int128)x); }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
  uint64_t mul(uint64_t a, uint64_t b) const { return redc((unsigned __int128)a * b); }
  uint64_t pow(uint64_t base, uint64_t e) const {
    uint64_t acc = one;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }

 private:
  uint64_t redc(unsigned __int128 t) const {
    uint64_t m = (uint64_t)t * pInv;
    unsigned __int128 u = (t + (unsigned __int128)m * p) >> 64;
    uint64_t r = (uint64_t)u;
    return r >= p ? r - p : r;
  }
};

/// Deterministic list of distinct 62-bit primes (via mpz_nextprime).
std::vector<uint64_t> modulusPrimes(int count);

/// Determinant of the s-by-s row-major matrix `a` (Montgomery form, consumed).
/// Returns the determinant in Montgomery form; 0 for singular matrices.
uint64_t detMod(std::vector<uint64_t>& a, int s, const Mont64& mont);

/// Coefficients (Montgomery form, degree = points.size()-1) of the unique
/// polynomial through (points[i], values[i]); points are distinct plain
/// integers mod p, values are in Montgomery form.
std::vector<uint64_t> interpolate(const std::vector<uint64_t>& points,
                                  const std::vector<uint64_t>& values, const Mont64& mont);

/// Combines residues (plain form) under the given primes into the unique
/// integer in (-P/2, P/2], P = product of primes.
mpz_class crtSigned(const std::vector<uint64_t>& residues, const std::vector<uint64_t>& primes);

}  // namespace ntst
