#include "laxton/unit_quotient.hpp"

#include <map>

#include "laxton/finite_group.hpp"

namespace laxton {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t reduce(const Int& x, std::uint64_t n) {
  return static_cast<std::uint64_t>(mpz_get_ui(mod(x, Int(static_cast<unsigned long>(n))).get_mpz_t()));
}

void check_args(const RecurrenceParams& params, std::uint64_t p) {
  if (params.reducible()) throw Error(ErrorKind::Domain, "no quadratic order");
  if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
}

}  // namespace

ResidueRing::ResidueRing(const Int& m, std::uint64_t p_, unsigned k_, Basis basis) : p(p_), k(k_), pk(ipow(p_, k_)) {
  if (basis == Basis::Standard && mod(m, Int(4)) == 1) {
    tr = 1 % pk;
    nm = reduce(Int((1 - m) / 4), pk);
  } else {
    tr = 0;
    nm = reduce(Int(-m), pk);
  }
}

std::uint64_t ResidueRing::norm(std::uint64_t x, std::uint64_t y) const {
  std::uint64_t a = mul_mod(x, x, pk);
  std::uint64_t b = mul_mod(tr, mul_mod(x, y, pk), pk);
  std::uint64_t c = mul_mod(nm, mul_mod(y, y, pk), pk);
  return (a + b + c) % pk;
}

void ResidueRing::mul(std::uint64_t& x, std::uint64_t& y, std::uint64_t u, std::uint64_t v) const {
  std::uint64_t yv = mul_mod(y, v, pk);
  std::uint64_t nx = (mul_mod(x, u, pk) + pk - mul_mod(nm, yv, pk)) % pk;
  std::uint64_t ny = (mul_mod(x, v, pk) + mul_mod(y, u, pk) + mul_mod(tr, yv, pk)) % pk;
  x = nx;
  y = ny;
}

void ResidueRing::pow(std::uint64_t& x, std::uint64_t& y, std::uint64_t e) const {
  std::uint64_t rx = 1 % pk, ry = 0, bx = x, by = y;
  while (e) {
    if (e & 1) mul(rx, ry, bx, by);
    mul(bx, by, bx, by);
    e >>= 1;
  }
  x = rx;
  y = ry;
}

std::uint64_t unit_quotient_order(const ResidueRing& ring) {
  std::uint64_t affine = 0;
  for (std::uint64_t x = 0; x < ring.p; ++x)
    if (ring.is_unit(x, 1)) ++affine;
  return ipow(ring.p, ring.k - 1) * (affine + 1);
}

std::vector<std::uint64_t> unit_quotient(const RecurrenceParams& params, std::uint64_t p, unsigned k, Basis basis) {
  check_args(params, p);
  if (k == 0) return {};
  ResidueRing ring(params.m, p, k, basis);
  // Classes mod scalars: (x, 1) with the norm a unit, and (1, y) with p | y.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps;
  for (std::uint64_t x = 0; x < ring.pk; ++x)
    if (ring.is_unit(x, 1)) reps.emplace_back(x, 1);
  for (std::uint64_t y = 0; y < ring.pk; y += p) reps.emplace_back(1 % ring.pk, y);
  const std::uint64_t n = reps.size();
  std::vector<std::uint64_t> orders(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    auto [x0, y0] = reps[static_cast<std::size_t>(i)];
    orders[static_cast<std::size_t>(i)] = order_by_descent(n, [&](std::uint64_t d) {
      std::uint64_t x = x0, y = y0;
      ring.pow(x, y, d);
      return y == 0;
    });
  }
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto o : orders) ++hist[o];
  return invariants_from_orders(n, hist);
}

std::vector<std::uint64_t> unit_quotient_reference(const RecurrenceParams& params, std::uint64_t p, unsigned k,
                                                   Basis basis) {
  check_args(params, p);
  if (k == 0) return {};
  ResidueRing ring(params.m, p, k, basis);
  if (ring.pk > 10000) throw Error(ErrorKind::TooLarge, "p^(2k) exceeds 10^8");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> units;
  for (std::uint64_t x = 0; x < ring.pk; ++x)
    for (std::uint64_t y = 0; y < ring.pk; ++y)
      if (ring.is_unit(x, y)) units.emplace_back(x, y);
  const std::uint64_t scalars = ipow(p, k - 1) * (p - 1);
  const std::uint64_t n = units.size() / scalars;
  return invariants_from_torsion(n, [&](std::uint64_t q) {
    std::uint64_t c = 0;
    for (auto [x, y] : units) {
      ring.pow(x, y, q);
      if (y == 0) ++c;
    }
    return c / scalars;
  });
}

}  // namespace laxton
