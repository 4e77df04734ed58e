#include "laxton/equivalence.hpp"

#include <cmath>

#include "laxton/padic.hpp"

namespace laxton {

namespace {

Int lcm_den(const Rat& a, const Rat& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  return l;
}

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Primitive integer pair with the first nonzero entry positive.
std::pair<Int, Int> primitive(const Rat& u, const Rat& v) {
  Int l = lcm_den(u, v);
  Int x = u.get_num() * (l / u.get_den());
  Int y = v.get_num() * (l / v.get_den());
  Int g = gcd_int(x, y);
  x /= g;
  y /= g;
  if (x < 0 || (x == 0 && y < 0)) {
    x = -x;
    y = -y;
  }
  return {x, y};
}

bool proportional(const ClassVector& a, const ClassVector& c) {
  return a.ctx().canonical(a.w1() * c.w0() - a.w0() * c.w1()) == 0;
}

Rat ratio_of(const ClassVector& a, const ClassVector& c) {
  const RingCtx& ctx = a.ctx();
  if (ctx.kind() == RingKind::PrimeField) {
    if (c.w1() != 0) return ctx.canonical(a.w1() * ctx.inverse(c.w1()));
    return ctx.canonical(a.w0() * ctx.inverse(c.w0()));
  }
  // Z_(p) sits inside Q; the caller decides whether the ratio is a unit.
  if (c.w1() != 0) return a.w1() / c.w1();
  return a.w0() / c.w0();
}

// a = lambda B^nu b with lambda a unit?
std::optional<Rat> try_shift(const ClassVector& a, const ClassVector& b, long nu) {
  ClassVector c = b_act(b, nu);
  if (!proportional(a, c)) return std::nullopt;
  Rat lambda = ratio_of(a, c);
  if (!a.ctx().is_unit(lambda)) return std::nullopt;
  return lambda;
}

StarDecision found(long nu, Rat lambda, std::optional<long> period, std::string reason) {
  StarDecision d;
  d.equivalent = true;
  d.nu = nu;
  d.lambda = std::move(lambda);
  d.period = period;
  d.reason = std::move(reason);
  return d;
}

StarDecision not_found(std::string reason) {
  StarDecision d;
  d.reason = std::move(reason);
  return d;
}

StarDecision check_window(const ClassVector& a, const ClassVector& b, long lo, long hi, std::optional<long> period,
                          const std::string& how) {
  for (long nu = lo; nu <= hi; ++nu) {
    if (auto lambda = try_shift(a, b, nu)) return found(nu, *lambda, period, how);
  }
  return not_found(how + ": no shift in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

long round_ratio(long double num, long double den) {
  long double q = num / den;
  if (!std::isfinite(q) || std::fabs(q) > 1e6L) throw Error(ErrorKind::TooLarge, "shift candidate out of range");
  return std::lround(q);
}

long double log_sum(long double l1, long double l2) {
  long double hi = std::max(l1, l2), lo = std::min(l1, l2);
  return hi + std::log1p(std::exp(lo - hi));
}

// log |e / e^sigma| for e = x + y sqrt(m), m > 0, without cancellation.
long double log_conj_ratio(const QuadElem& e) {
  if (e.x() == 0 || e.y() == 0) return 0;
  long double lx = log_abs(e.x());
  long double ly = log_abs(e.y()) + 0.5L * log_abs(Rat(e.m()));
  long double big = log_sum(lx, ly);
  long double ln = log_abs(e.norm());
  bool e_is_big = (sgn(e.x()) == sgn(e.y()));
  return e_is_big ? 2 * big - ln : ln - 2 * big;
}

StarDecision star_prime_field(const ClassVector& a, const ClassVector& b) {
  std::uint64_t p = a.ctx().prime().word();
  std::optional<long> hit;
  long period = 0;
  ClassVector c = b;
  for (long n = 0; n <= static_cast<long>(p) + 2; ++n) {
    if (n > 0 && proportional(b, c)) {
      period = n;
      break;
    }
    if (!hit && proportional(a, c)) hit = n;
    c = b_act(c, 1);
  }
  if (!hit) return not_found("orbit of b does not contain a");
  Rat lambda = ratio_of(a, b_act(b, *hit));
  return found(*hit, lambda, period, "orbit enumeration");
}

StarDecision star_reducible(const ClassVector& a, const ClassVector& b) {
  QuadAlgebra alg(a.params());
  Rat t1 = alg.root1(), t2 = alg.root2();
  Rat ra = (a.w1() - a.w0() * t1) / (a.w1() - a.w0() * t2);
  Rat rb = (b.w1() - b.w0() * t1) / (b.w1() - b.w0() * t2);
  Rat c = ra / rb;
  Rat tau = t2 / t1;
  if (tau == -1) return check_window(a, b, 0, 1, 2, "ratio map, tau = -1");
  long nu = round_ratio(log_abs(c), log_abs(tau));
  return check_window(a, b, nu - 1, nu + 1, std::nullopt, "ratio map, logarithm");
}

StarDecision star_real(const ClassVector& a, const ClassVector& b, const QuadElem& gamma, const QuadAlgebra& alg) {
  if (alg.params().P == 0) return check_window(a, b, 0, 1, 2, "theta2 = -theta1");
  long double lt = log_conj_ratio(alg.theta2());
  long double lg = log_conj_ratio(gamma);
  long nu = round_ratio(lg, lt);
  return check_window(a, b, nu - 1, nu + 1, std::nullopt, "logarithm");
}

StarDecision star_imaginary(const ClassVector& a, const ClassVector& b, const QuadElem& gamma,
                            const QuadAlgebra& alg) {
  QuadElem t2 = alg.theta2();
  for (auto& [ell, e] : factorize(alg.params().Q)) {
    PrimeP l(ell);
    if (splitting_of_field(alg.params().m, l) != Splitting::Split) continue;
    auto vt = valuations_above_p(t2, l);
    long vt_diff = vt[0] - vt[1];
    if (vt_diff == 0) continue;
    auto vg = valuations_above_p(gamma, l);
    long vg_diff = vg[0] - vg[1];
    if (vg_diff % vt_diff != 0) return not_found("valuation at " + ell.get_str() + " excludes every shift");
    long nu = vg_diff / vt_diff;
    return check_window(a, b, nu, nu, std::nullopt, "valuation at " + ell.get_str());
  }
  // theta2 / theta1 is a root of unity.
  QuadElem tau = t2 / alg.theta1();
  QuadElem one = alg.scalar(1);
  QuadElem acc = tau;
  long period = 1;
  while (!(acc == one)) {
    acc = acc * tau;
    if (++period > 12) throw Error(ErrorKind::Domain, "theta2/theta1 is not a root of unity");
  }
  return check_window(a, b, 0, period - 1, period, "root of unity");
}

}  // namespace

GClass normalize(const ClassVector& v) {
  if (!in_units(v)) throw Error(ErrorKind::NotInvertible, "not invertible in this ring");
  const RingCtx& ctx = v.ctx();
  if (ctx.kind() == RingKind::PrimeField) {
    Rat lead = v.w1() != 0 ? v.w1() : v.w0();
    return GClass{scale(v, ctx.inverse(lead))};
  }
  auto [x, y] = primitive(v.w1(), v.w0());
  return GClass{ClassVector(Rat(x), Rat(y), v.setting())};
}

bool decide_equiv(const ClassVector& a, const ClassVector& b) {
  require_same(a, b);
  if (!proportional(a, b)) return false;
  return a.ctx().is_unit(ratio_of(a, b));
}

StarDecision decide_star_equiv(const ClassVector& a, const ClassVector& b) {
  require_same(a, b);
  if (!in_units(a) || !in_units(b)) throw Error(ErrorKind::NotInvertible, "not invertible in this ring");
  if (a.ctx().kind() == RingKind::PrimeField) return star_prime_field(a, b);
  if (a.params().reducible()) return star_reducible(a, b);
  QuadAlgebra alg(a.params());
  QuadElem gamma = alg.psi(a.w1(), a.w0()) / alg.psi(b.w1(), b.w0());
  if (a.params().D > 0) return star_real(a, b, gamma, alg);
  return star_imaginary(a, b, gamma, alg);
}

GClass class_mul(const GClass& a, const GClass& b) { return normalize(mul(a.rep, b.rep)); }

QuadElem primitive_mod_rationals(const QuadElem& x) {
  if (x.is_zero()) throw Error(ErrorKind::InvalidInput, "zero has no class mod Q^x");
  auto [u, v] = primitive(x.x(), x.y());
  if (x.split()) return QuadElem::pair(Rat(u), Rat(v));
  return QuadElem::field(Rat(u), Rat(v), x.m());
}

bool same_mod_rationals(const QuadElem& x, const QuadElem& y) { return (x / y).is_rational(); }

QuadElem psi_map(const GClass& a) {
  if (a.rep.params().reducible()) throw Error(ErrorKind::Domain, "f is reducible; use the ratio map");
  if (a.rep.ctx().kind() == RingKind::PrimeField) throw Error(ErrorKind::Domain, "psi map is defined over Q");
  QuadAlgebra alg(a.rep.params());
  return primitive_mod_rationals(alg.psi(a.rep.w1(), a.rep.w0()));
}

Rat ratio_map(const GClass& a) {
  if (!a.rep.params().reducible()) throw Error(ErrorKind::Domain, "f is irreducible; use the psi map");
  if (a.rep.ctx().kind() == RingKind::PrimeField) throw Error(ErrorKind::Domain, "ratio map is defined over Q");
  QuadAlgebra alg(a.rep.params());
  return (a.rep.w1() - a.rep.w0() * alg.root1()) / (a.rep.w1() - a.rep.w0() * alg.root2());
}

}  // namespace laxton
