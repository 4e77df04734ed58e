#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "laxton/error.hpp"

namespace laxton {

using Int = mpz_class;
using Rat = mpq_class;

/// A rational prime. Construction fails unless the value is prime.
///
/// Values below 2^64 are checked with deterministic Miller-Rabin (witnesses
/// 2..37, sufficient for all 64-bit inputs). Larger values fall back to
/// GMP's mpz_probab_prime_p with 40 rounds (BPSW plus 40 random-base
/// Miller-Rabin rounds), which has no known counterexample.
class PrimeP {
 public:
  explicit PrimeP(const Int& p);
  explicit PrimeP(std::uint64_t p) : PrimeP(Int(std::to_string(p))) {}

  const Int& value() const noexcept { return p_; }
  /// The prime as a machine word; throws TooLarge if it does not fit.
  std::uint64_t word() const;
  bool operator==(const PrimeP& other) const { return p_ == other.p_; }

 private:
  Int p_;
};

bool is_prime_u64(std::uint64_t n);
bool is_prime(const Int& n);
std::vector<std::uint64_t> primes_below(std::uint64_t bound);

/// Exponent of p in a nonzero integer.
long vp_int(const Int& n, const PrimeP& p);
/// Exponent of p in a nonzero rational; throws "valuation of zero".
long vp_rat(const Rat& q, const PrimeP& p);

/// Prime factorization of |n| (n != 0), primes ascending. Desk-scale:
/// trial division plus Pollard rho on the cofactor when it fits in 64 bits.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

/// D = m * a^2 with m squarefree (sign carried by m) and a > 0.
struct SquarefreeSplit {
  Int m;
  Int a;
};
SquarefreeSplit squarefree_split(const Int& d);

std::optional<Int> exact_sqrt(const Int& n);
int kronecker(const Int& a, const Int& n);

/// Nonnegative residue of a modulo m > 0.
Int mod(const Int& a, const Int& m);
/// Residue of a rational modulo m > 0; throws NotInvertible if gcd(den, m) > 1.
Int mod(const Rat& q, const Int& m);
/// Inverse modulo m; throws NotInvertible.
Int inv_mod(const Int& a, const Int& m);
Int pow_int(const Int& base, unsigned long e);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// Distinct prime factors of n > 0, ascending.
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

/// n/d in lowest terms; d != 0.
Rat frac(const Int& n, const Int& d);

/// Fits the value in int64 or throws TooLarge.
std::int64_t to_i64(const Int& n);

/// Natural log of |q| for q != 0, stable for very large or very small values.
long double log_abs(const Rat& q);

}  // namespace laxton
