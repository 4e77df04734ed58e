#include "doctest.h"
#include "laxton/equivalence.hpp"
#include "oracles.hpp"

using namespace laxton;

namespace {

SettingPtr over_q(long P, long Q) { return make_setting(RecurrenceParams(P, Q), RingCtx::rationals()); }
ClassVector cv(const SettingPtr& s, const Rat& w1, const Rat& w0) { return ClassVector(w1, w0, s); }

}  // namespace

TEST_CASE("normalize examples") {
  auto q = over_q(1, -1);
  CHECK(normalize(cv(q, -4, -6)).rep == cv(q, 2, 3));
  auto f5 = make_setting(RecurrenceParams(1, -1), RingCtx::prime_field(PrimeP(5ul)));
  CHECK(normalize(cv(f5, 2, 3)).rep == cv(f5, 1, 4));
  CHECK(normalize(cv(q, 3, 7)).rep == cv(q, 3, 7));
  CHECK(normalize(cv(q, frac(1, 2), frac(-1, 3))).rep == cv(q, 3, -2));
  CHECK(normalize(cv(q, 0, -5)).rep == cv(q, 0, 1));
}

TEST_CASE("normalize is idempotent and scale invariant") {
  oracle::Gen g(31);
  auto q = over_q(3, 5);
  for (int i = 0; i < 300; ++i) {
    Rat w1 = g.rational(40), w0 = g.rational(40);
    if (w1 == 0 && w0 == 0) continue;
    Rat lam = g.rational(20);
    if (lam == 0) continue;
    GClass n = normalize(cv(q, w1, w0));
    CHECK(normalize(n.rep) == n);
    CHECK(normalize(scale(cv(q, w1, w0), lam)) == n);
  }
}

TEST_CASE("decide_equiv examples") {
  auto q = over_q(1, -1);
  CHECK(decide_equiv(cv(q, 2, 1), cv(q, 4, 2)));
  CHECK_FALSE(decide_equiv(cv(q, 2, 1), cv(q, 1, 1)));
  auto z2 = make_setting(RecurrenceParams(1, -1), RingCtx::localized(PrimeP(2ul)));
  CHECK(decide_equiv(cv(z2, 3, 1), cv(z2, 9, 3)));
  CHECK_FALSE(decide_equiv(cv(z2, 1, 1), cv(z2, 2, 2)));
  CHECK_FALSE(decide_equiv(cv(z2, 2, 2), cv(z2, 1, 1)));
  CHECK(decide_equiv(cv(z2, 6, 2), cv(z2, 18, 6)));
}

TEST_CASE("decide_star_equiv examples") {
  auto q = over_q(1, -1);
  auto d = decide_star_equiv(cv(q, 2, 1), cv(q, 1, 1));
  CHECK(d.equivalent);
  CHECK(d.nu == 1);
  CHECK(d.lambda == 1);
  auto self = decide_star_equiv(cv(q, 5, 3), cv(q, 5, 3));
  CHECK(self.equivalent);
  CHECK(self.nu == 0);
  CHECK(self.lambda == 1);
  CHECK_FALSE(decide_star_equiv(cv(q, 1, 0), cv(q, 1, 2)).equivalent);
}

TEST_CASE("star equivalence recovers planted shifts") {
  oracle::Gen g(32);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto [P, Q] = g.pq(7);
    auto q = over_q(P, Q);
    ClassVector b = cv(q, g.integer(9), g.integer(9));
    if (!in_units(b)) continue;
    long nu = g.range(-10, 10);
    Rat lam = g.rational(9);
    if (lam == 0) continue;
    ClassVector a = scale(b_act(b, nu), lam);
    auto d = decide_star_equiv(a, b);
    REQUIRE(d.equivalent);
    if (d.period)
      CHECK((d.nu - nu) % *d.period == 0);
    else
      CHECK(d.nu == nu);
    CHECK(scale(b_act(b, d.nu), d.lambda) == a);
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("star-equivalent pairs over Q stay equivalent mod p") {
  oracle::Gen g(33);
  for (int i = 0; i < 100; ++i) {
    auto [P, Q] = g.pq(7);
    RecurrenceParams params(P, Q);
    auto q = make_setting(params, RingCtx::rationals());
    ClassVector b = cv(q, g.integer(9), g.integer(9));
    if (!in_units(b)) continue;
    ClassVector a = b_act(b, g.range(-5, 5));
    std::uint64_t p = 0;
    for (std::uint64_t c : {5ul, 7ul, 11ul, 13ul}) {
      Rat lb = lambda_norm(b);
      if (Q % static_cast<long>(c) != 0 && vp_rat(lb, PrimeP(c)) == 0) {
        p = c;
        break;
      }
    }
    if (!p) continue;
    auto fp = make_setting(params, RingCtx::prime_field(PrimeP(p)));
    CHECK(decide_star_equiv(cv(fp, a.w1(), a.w0()), cv(fp, b.w1(), b.w0())).equivalent);
  }
}

TEST_CASE("class_mul examples and well-definedness") {
  auto q = over_q(1, -1);
  GClass one = normalize(identity(q));
  GClass a = normalize(cv(q, 2, 1));
  CHECK(class_mul(a, one) == a);
  GClass e = normalize(cv(q, 1, 1));
  CHECK(class_mul(e, e) == normalize(cv(q, 2, 1)));
  CHECK(decide_star_equiv(class_mul(e, e).rep, e.rep).equivalent);

  oracle::Gen g(34);
  for (int i = 0; i < 200; ++i) {
    auto [P, Q] = g.pq(8);
    auto s = over_q(P, Q);
    ClassVector x = cv(s, g.integer(12), g.integer(12));
    ClassVector y = cv(s, g.integer(12), g.integer(12));
    if (!in_units(x) || !in_units(y)) continue;
    Rat l1 = g.rational(7), l2 = g.rational(7);
    if (l1 == 0 || l2 == 0) continue;
    CHECK(class_mul(normalize(scale(x, l1)), normalize(scale(y, l2))) == class_mul(normalize(x), normalize(y)));
  }
}

TEST_CASE("psi map examples and homomorphism") {
  auto q = over_q(1, -1);
  QuadAlgebra alg(RecurrenceParams(1, -1));
  CHECK(psi_map(normalize(identity(q))) == alg.scalar(1));
  CHECK(same_mod_rationals(psi_map(normalize(cv(q, 0, 1))), alg.theta1()));
  CHECK(same_mod_rationals(psi_map(normalize(cv(q, 0, 1))), alg.theta1() * Rat(-1)));
  // (2,1) is B(1,1): its image is theta2 times the image of (1,1).
  CHECK(same_mod_rationals(psi_map(normalize(cv(q, 2, 1))), alg.psi(2, 1)));
  CHECK(same_mod_rationals(alg.psi(2, 1), alg.theta2() * alg.psi(1, 1)));

  oracle::Gen g(35);
  int n = 0;
  while (n < 200) {
    ClassVector x = cv(q, g.integer(30), g.integer(30));
    ClassVector y = cv(q, g.integer(30), g.integer(30));
    if (!in_units(x) || !in_units(y)) continue;
    GClass a = normalize(x), b = normalize(y);
    CHECK(same_mod_rationals(psi_map(class_mul(a, b)), psi_map(a) * psi_map(b)));
    ++n;
  }
  CHECK_THROWS_AS(psi_map(normalize(cv(over_q(1, -2), 1, 1))), Error);
}

TEST_CASE("ratio map on reducible f") {
  auto q = over_q(1, -2);  // roots 2, -1
  GClass a = normalize(cv(q, 1, 1));
  CHECK(ratio_map(a) == frac(1 - 2, 1 + 1));
  oracle::Gen g(36);
  for (int i = 0; i < 100; ++i) {
    ClassVector x = cv(q, g.integer(20), g.integer(20));
    ClassVector y = cv(q, g.integer(20), g.integer(20));
    if (!in_units(x) || !in_units(y)) continue;
    GClass u = normalize(x), v = normalize(y);
    CHECK(ratio_map(class_mul(u, v)) == ratio_map(u) * ratio_map(v));
  }
  CHECK_THROWS_AS(ratio_map(normalize(cv(over_q(1, -1), 1, 1))), Error);
}
