#include "laxton/padic.hpp"

namespace laxton {

namespace {

Int lift_odd(const Int& m, const Int& r0, const Int& p, unsigned k) {
  Int pk = pow_int(p, k);
  Int r = r0;
  Int cur = p;
  while (cur < pk) {
    cur *= cur;
    if (cur > pk) cur = pk;
    // Newton step r <- r - (r^2 - m) / 2r.
    Int num = mod(Int(r * r - m), cur);
    r = mod(Int(r - num * inv_mod(Int(2 * r), cur)), cur);
  }
  return mod(r, pk);
}

Int lift_two(const Int& m, unsigned k) {
  Int r = 1;
  for (unsigned j = 3; j < k; ++j) {
    Int next = pow_int(2, j + 1);
    if (mod(Int(r * r - m), next) != 0) r += pow_int(2, j - 1);
  }
  return mod(r, pow_int(2, k));
}

}  // namespace

Int sqrt_mod_prime(const Int& n_in, const PrimeP& prime) {
  const Int& p = prime.value();
  Int n = mod(n_in, p);
  if (n == 0 || kronecker(n, p) != 1) throw Error(ErrorKind::Domain, "not a nonzero square modulo " + p.get_str());
  Int pm1 = p - 1;
  Int q = pm1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  auto pw = [&](const Int& b, const Int& e) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  Int z = 2;
  while (kronecker(z, p) != -1) ++z;
  Int c = pw(z, q);
  Int r = pw(n, Int((q + 1) / 2));
  Int t = pw(n, q);
  unsigned long mbits = s;
  while (t != 1) {
    unsigned long i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = mod(Int(tt * tt), p);
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < mbits; ++j) b = mod(Int(b * b), p);
    r = mod(Int(r * b), p);
    c = mod(Int(b * b), p);
    t = mod(Int(t * c), p);
    mbits = i;
  }
  Int other = p - r;
  return r < other ? r : other;
}

PadicCtx PadicCtx::for_field(const Int& m, const PrimeP& p, unsigned k) {
  if (splitting_of_field(m, p) != Splitting::Split)
    throw Error(ErrorKind::Domain, "p does not split in Q(sqrt(" + m.get_str() + "))");
  if (k < 2) k = 2;
  if (p.value() == 2) {
    if (k < 4) k = 4;
    return PadicCtx(p, m, k, lift_two(m, k));
  }
  Int r0 = sqrt_mod_prime(m, p);
  return PadicCtx(p, m, k, lift_odd(m, r0, p.value(), k));
}

PadicCtx PadicCtx::raised() const {
  unsigned k = 2 * k_;
  if (p_.value() == 2) return PadicCtx(p_, m_, k, lift_two(m_, k));
  return PadicCtx(p_, m_, k, lift_odd(m_, mod(root_, p_.value()), p_.value(), k));
}

Int PadicCtx::lifted_root(const Int& a) const { return mod(Int(a * root_), pow_int(p_.value(), k_)); }

namespace {

// alpha = (X + Y sqrt m) / c with integers X, Y, c.
struct IntegralForm {
  Int X, Y, c;
};

IntegralForm integral_form(const QuadElem& alpha) {
  Int c;
  mpz_lcm(c.get_mpz_t(), alpha.x().get_den_mpz_t(), alpha.y().get_den_mpz_t());
  Int X = alpha.x().get_num() * (c / alpha.x().get_den());
  Int Y = alpha.y().get_num() * (c / alpha.y().get_den());
  return {X, Y, c};
}

}  // namespace

std::vector<long> valuations_above_p(const QuadElem& alpha, const PadicCtx& start) {
  if (alpha.is_zero()) throw Error(ErrorKind::InvalidInput, "valuation of zero");
  const PrimeP& p = start.prime();
  auto f = integral_form(alpha);
  long vc = vp_int(f.c, p);
  PadicCtx ctx = start;
  for (;;) {
    Int mod_k = ctx.modulus();
    Int plus = mod(Int(f.X + f.Y * ctx.sqrt_m()), mod_k);
    Int minus = mod(Int(f.X - f.Y * ctx.sqrt_m()), mod_k);
    if (plus != 0 && minus != 0) return {vp_int(plus, p) - vc, vp_int(minus, p) - vc};
    ctx = ctx.raised();
  }
}

std::vector<long> valuations_above_p(const QuadElem& alpha, const PrimeP& p) {
  if (alpha.is_zero()) throw Error(ErrorKind::InvalidInput, "valuation of zero");
  if (alpha.split()) {
    if (alpha.x() == 0 || alpha.y() == 0) throw Error(ErrorKind::InvalidInput, "valuation of zero divisor");
    return {vp_rat(alpha.x(), p), vp_rat(alpha.y(), p)};
  }
  switch (splitting_of_field(alpha.m(), p)) {
    case Splitting::Inert: return {vp_rat(alpha.norm(), p) / 2};
    case Splitting::Ramified: return {vp_rat(alpha.norm(), p)};
    case Splitting::Split: return valuations_above_p(alpha, PadicCtx::for_field(alpha.m(), p));
    case Splitting::RationalField: break;
  }
  throw Error(ErrorKind::Domain, "unreachable splitting type");
}

}  // namespace laxton
