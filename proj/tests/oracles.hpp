// Test-side reference computations. Nothing here calls into the library's
// algorithms; only the value types are shared.
#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "laxton/arith.hpp"

namespace oracle {

using laxton::Int;
using laxton::Rat;

using Mat = std::array<Rat, 4>;  // row-major 2x2

inline Mat mat_mul(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Multiplication by w1 - w0*t on Q[t]/(f) in the basis (1, t), where t*1 = t and t*t = P t - Q.
inline Mat mult_matrix(const Rat& w1, const Rat& w0, const Rat& P, const Rat& Q) {
  // t acts as [[0, -Q], [1, P]] on coordinate columns (c0, c1).
  return {w1, w0 * Q, -w0, w1 - w0 * P};
}

// Product of classes via matrices acting on 1.
inline std::pair<Rat, Rat> class_product(const Rat& a1, const Rat& a0, const Rat& b1, const Rat& b0, const Rat& P,
                                         const Rat& Q) {
  Mat m = mat_mul(mult_matrix(a1, a0, P, Q), mult_matrix(b1, b0, P, Q));
  // m * (1, 0)^T = (c0, c1) with element c0 + c1 t = w1 - w0 t.
  return {m[0], -m[2]};
}

// Terms by plain iteration of w_{n+2} = P w_{n+1} - Q w_n from (w0, w1).
inline std::vector<Int> iterate(const Int& w0, const Int& w1, const Int& P, const Int& Q, std::size_t n) {
  std::vector<Int> out{w0, w1};
  while (out.size() < n) {
    std::size_t k = out.size();
    out.push_back(P * out[k - 1] - Q * out[k - 2]);
  }
  out.resize(n);
  return out;
}

// Least n > 0 with p | U_n, from exact big-integer Lucas numbers.
inline std::uint64_t rank_exact(const Int& P, const Int& Q, std::uint64_t p) {
  Int a = 0, b = 1;
  for (std::uint64_t n = 1;; ++n) {
    if (b % Int(static_cast<unsigned long>(p)) == 0) return n;
    Int c = P * b - Q * a;
    a = b;
    b = c;
  }
}

// Distinct roots of t^2 - P t + Q modulo p by trial.
inline std::uint64_t roots_mod_p(long P, long Q, std::uint64_t p) {
  std::uint64_t cnt = 0;
  long pp = static_cast<long>(p);
  for (long t = 0; t < pp; ++t) {
    long v = ((t * t - P * t + Q) % pp + pp) % pp;
    if (v == 0) ++cnt;
  }
  return cnt;
}

// #{x : x^d = 1} in Z/d1 x Z/d2 x ...
inline std::uint64_t torsion_count(const std::vector<std::uint64_t>& inv, std::uint64_t d) {
  std::uint64_t c = 1;
  for (auto x : inv) c *= std::gcd(x, d);
  return c;
}

// Legendre symbol by Euler's criterion.
inline int euler(long a, std::uint64_t p) {
  long pp = static_cast<long>(p);
  a = ((a % pp) + pp) % pp;
  if (a == 0) return 0;
  std::uint64_t r = 1, b = static_cast<std::uint64_t>(a), e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((__uint128_t)r * b % p);
    b = static_cast<std::uint64_t>((__uint128_t)b * b % p);
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  Int integer(long bound) { return Int(range(-bound, bound)); }
  Rat rational(long bound) {
    Int d(range(1, bound));
    Rat q(integer(bound), d);
    q.canonicalize();
    return q;
  }
  // (P, Q) with Q != 0 and D != 0.
  std::pair<long, long> pq(long bound) {
    for (;;) {
      long P = range(-bound, bound), Q = range(-bound, bound);
      if (Q != 0 && P * P - 4 * Q != 0) return {P, Q};
    }
  }
};

}  // namespace oracle
