#include "laxton/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace laxton {

namespace {

bool fits_u64(const Int& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t as_u64(const Int& n) {
  // mpz_get_ui is 64-bit on LP64 targets.
  return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t()));
}

Int from_u64(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

std::uint64_t rho_factor(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = rho_factor(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

PrimeP::PrimeP(const Int& p) : p_(p) {
  if (!is_prime(p_)) throw Error(ErrorKind::InvalidInput, p_.get_str() + " is not prime");
}

std::uint64_t PrimeP::word() const {
  if (!fits_u64(p_)) throw Error(ErrorKind::TooLarge, "prime exceeds 64 bits");
  return as_u64(p_);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::uint64_t r = m, nr = a % m;
  while (nr) {
    std::uint64_t q = r / nr;
    std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
    t = nt;
    nt = tmp;
    std::uint64_t rtmp = r - q * nr;
    r = nr;
    nr = rtmp;
  }
  if (r != 1) throw Error(ErrorKind::NotInvertible, "not invertible modulo " + std::to_string(m));
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : small) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (auto a : small) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(as_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 3) return out;
  std::vector<bool> sieve(bound, true);
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < bound; j += i) sieve[j] = false;
  }
  return out;
}

long vp_int(const Int& n, const PrimeP& p) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "valuation of zero");
  Int rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.value().get_mpz_t()));
}

long vp_rat(const Rat& q, const PrimeP& p) {
  if (q == 0) throw Error(ErrorKind::InvalidInput, "valuation of zero");
  return vp_int(q.get_num(), p) - vp_int(q.get_den(), p);
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "cannot factor zero");
  Int rest = abs(n);
  std::vector<std::pair<Int, unsigned>> out;
  auto take = [&](const Int& q) {
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), q.get_mpz_t())) {
      rest /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  };
  for (unsigned long q = 2; q < 1000 && rest > 1; ++q) take(Int(q));
  if (rest == 1) return out;
  if (!fits_u64(rest)) {
    if (is_prime(rest)) {
      out.emplace_back(rest, 1);
      return out;
    }
    throw Error(ErrorKind::TooLarge, "cofactor " + rest.get_str() + " too large to factor");
  }
  std::vector<std::uint64_t> fs;
  factor_u64(as_u64(rest), fs);
  std::sort(fs.begin(), fs.end());
  for (std::size_t i = 0; i < fs.size();) {
    std::size_t j = i;
    while (j < fs.size() && fs[j] == fs[i]) ++j;
    out.emplace_back(from_u64(fs[i]), static_cast<unsigned>(j - i));
    i = j;
  }
  return out;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n <= 1) return out;
  for (auto& [q, e] : factorize(from_u64(n))) out.push_back(as_u64(q));
  return out;
}

SquarefreeSplit squarefree_split(const Int& d) {
  if (d == 0) throw Error(ErrorKind::InvalidInput, "degenerate discriminant");
  SquarefreeSplit out{d < 0 ? Int(-1) : Int(1), Int(1)};
  for (auto& [q, e] : factorize(d)) {
    if (e % 2) out.m *= q;
    out.a *= pow_int(q, e / 2);
  }
  return out;
}

std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  return Int(sqrt(n));
}

int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int mod(const Rat& q, const Int& m) {
  if (q.get_den() == 1) return mod(q.get_num(), m);
  return mod(Int(q.get_num() * inv_mod(q.get_den(), m)), m);
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorKind::NotInvertible, a.get_str() + " is not invertible modulo " + m.get_str());
  return r;
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat frac(const Int& n, const Int& d) {
  if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::int64_t to_i64(const Int& n) {
  if (!n.fits_slong_p()) throw Error(ErrorKind::TooLarge, n.get_str() + " does not fit in 64 bits");
  return n.get_si();
}

long double log_abs(const Rat& q) {
  if (q == 0) throw Error(ErrorKind::InvalidInput, "log of zero");
  auto log_z = [](const Int& z) {
    long e = 0;
    double mant = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::fabs(static_cast<long double>(mant))) + static_cast<long double>(e) * std::log(2.0L);
  };
  return log_z(q.get_num()) - log_z(q.get_den());
}

}  // namespace laxton
