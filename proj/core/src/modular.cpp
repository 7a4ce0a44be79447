#include "ntst/modular.hpp"

#include <mutex>

#include "ntst/errors.hpp"

namespace ntst {

Mont64 Mont64::make(uint64_t p) {
  internalCheck(p > 2 && (p & 1) && p < (1ull << 63), "modulus must be an odd prime < 2^63");
  Mont64 m;
  m.p = p;
  // pInv = -p^{-1} mod 2^64 by Newton iteration.
  uint64_t inv = p;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  m.pInv = ~inv + 1;  // inv satisfies p*inv = 1 mod 2^64; we need the negative
  // r2 = 2^128 mod p
  mpz_class rr;
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_ui_pow_ui(rr.get_mpz_t(), 2, 128);
  rr %= pz;
  m.r2 = mpz_get_ui(rr.get_mpz_t());
  m.one = m.toM(1);
  return m;
}

std::vector<uint64_t> modulusPrimes(int count) {
  static std::mutex mutex;
  static std::vector<uint64_t> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if ((int)cache.size() < count) {
    mpz_class p = cache.empty() ? mpz_class(mpz_class(1) << 61) : mpz_class(cache.back());
    while ((int)cache.size() < count) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      cache.push_back(mpz_get_ui(p.get_mpz_t()));
    }
  }
  return {cache.begin(), cache.begin() + count};
}

uint64_t detMod(std::vector<uint64_t>& a, int s, const Mont64& mont) {
  if (s == 0) return mont.one;
  uint64_t det = mont.one;
  bool negate = false;
  for (int col = 0; col < s; ++col) {
    int piv = -1;
    for (int r = col; r < s; ++r)
      if (a[(size_t)r * s + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int c = col; c < s; ++c) std::swap(a[(size_t)piv * s + c], a[(size_t)col * s + c]);
      negate = !negate;
    }
    uint64_t pv = a[(size_t)col * s + col];
    det = mont.mul(det, pv);
    uint64_t pinv = mont.inv(pv);
    for (int r = col + 1; r < s; ++r) {
      uint64_t f = a[(size_t)r * s + col];
      if (!f) continue;
      f = mont.mul(f, pinv);
      uint64_t* rowR = &a[(size_t)r * s];
      const uint64_t* rowC = &a[(size_t)col * s];
      for (int c = col; c < s; ++c) rowR[c] = mont.sub(rowR[c], mont.mul(f, rowC[c]));
    }
  }
  return negate ? mont.neg(det) : det;
}

std::vector<uint64_t> interpolate(const std::vector<uint64_t>& points,
                                  const std::vector<uint64_t>& values, const Mont64& mont) {
  int d = (int)points.size();
  internalCheck(d == (int)values.size() && d > 0, "interpolation arity mismatch");
  std::vector<uint64_t> ptsM(d);
  for (int i = 0; i < d; ++i) ptsM[i] = mont.toM(points[i]);
  // master = prod (x - t_i), degree d
  std::vector<uint64_t> master(d + 1, 0);
  master[0] = mont.one;
  for (int i = 0; i < d; ++i) {
    // multiply by (x - t_i)
    for (int c = i + 1; c >= 1; --c)
      master[c] = mont.sub(c - 1 >= 0 ? master[c - 1] : 0, mont.mul(master[c], ptsM[i]));
    master[0] = mont.mul(master[0], mont.neg(ptsM[i]));
  }
  std::vector<uint64_t> coeffs(d, 0), q(d, 0);
  for (int i = 0; i < d; ++i) {
    // synthetic division: q = master / (x - t_i)
    uint64_t carry = master[d];
    for (int c = d - 1; c >= 0; --c) {
      q[c] = carry;
      carry = mont.add(master[c], mont.mul(carry, ptsM[i]));
    }
    // denom = q(t_i)
    uint64_t denom = 0;
    for (int c = d - 1; c >= 0; --c) denom = mont.add(mont.mul(denom, ptsM[i]), q[c]);
    internalCheck(denom != 0, "interpolation points must be distinct");
    uint64_t scale = mont.mul(values[i], mont.inv(denom));
    for (int c = 0; c < d; ++c) coeffs[c] = mont.add(coeffs[c], mont.mul(scale, q[c]));
  }
  return coeffs;
}

mpz_class crtSigned(const std::vector<uint64_t>& residues, const std::vector<uint64_t>& primes) {
  internalCheck(residues.size() == primes.size() && !primes.empty(), "CRT arity mismatch");
  mpz_class x = 0, mod = 1;
  for (size_t i = 0; i < primes.size(); ++i) {
    mpz_class p = mpz_class();
    mpz_import(p.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &primes[i]);
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &residues[i]);
    if (i == 0) {
      x = r;
      mod = p;
      continue;
    }
    mpz_class diff = (r - x) % p;
    if (diff < 0) diff += p;
    mpz_class modInv;
    mpz_class modRed = mod % p;
    internalCheck(mpz_invert(modInv.get_mpz_t(), modRed.get_mpz_t(), p.get_mpz_t()) != 0,
                  "CRT moduli must be coprime");
    mpz_class t = (diff * modInv) % p;
    x += mod * t;
    mod *= p;
  }
  if (x > mod / 2) x -= mod;
  return x;
}

}  // namespace ntst
