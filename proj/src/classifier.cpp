#include "laxton/classifier.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "laxton/unit_quotient.hpp"

namespace laxton {

namespace {

std::uint64_t ipow(std::uint64_t b, long e) {
  std::uint64_t r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::uint64_t> cyclic(std::uint64_t n) {
  if (n <= 1) return {};
  return {n};
}

std::uint64_t residue(const Int& x, std::uint64_t p) {
  return static_cast<std::uint64_t>(mpz_get_ui(mod(x, Int(static_cast<unsigned long>(p))).get_mpz_t()));
}

Int int_of(const Rat& q) {
  if (q.get_den() != 1) throw Error(ErrorKind::InvalidInput, "representative is not integral");
  return q.get_num();
}

// Invariants of (Z/p^k)^x by enumeration.
std::vector<std::uint64_t> integer_unit_group(std::uint64_t p, long k) {
  if (k <= 0) return {};
  std::uint64_t n = ipow(p, k);
  std::uint64_t phi = n / p * (p - 1);
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t u = 1; u < n; ++u) {
    if (u % p == 0) continue;
    ++hist[order_by_descent(phi, [&](std::uint64_t d) { return pow_mod(u, d, n) == 1 % n; })];
  }
  return invariants_from_orders(phi, hist);
}

// Least n in [1, bound] with a^n in K, computed exactly over Q.
std::optional<std::uint64_t> power_into_K(const GClass& a, std::uint64_t p, std::uint64_t bound) {
  GClass cur = a;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (residue(int_of(lambda_norm(cur.rep)), p) != 0) return n;
    if (n < bound) cur = class_mul(cur, a);
  }
  return std::nullopt;
}

void add(std::vector<Check>& checks, std::string name, bool pass, std::string detail = {}) {
  checks.push_back(Check{std::move(name), pass, std::move(detail)});
}

std::string pair_str(const GClass& a) { return "[" + a.rep.str() + "]"; }

}  // namespace

std::uint64_t GroupDesc::finite_order() const {
  std::uint64_t n = 1;
  for (auto d : finite) n *= d;
  return n;
}

std::string GroupDesc::str() const {
  std::string out;
  for (int i = 0; i < free_rank; ++i) out += out.empty() ? "Z" : " x Z";
  for (auto d : finite) out += (out.empty() ? "Z/" : " x Z/") + std::to_string(d);
  return out.empty() ? "0" : out;
}

std::vector<std::uint64_t> invariants_of_product(const std::vector<std::uint64_t>& cyclic_orders) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (std::uint64_t n : cyclic_orders) {
    for (std::uint64_t l : prime_factors_u64(n)) {
      std::uint64_t q = 1;
      while (n % l == 0) {
        n /= l;
        q *= l;
      }
      by_prime[l].push_back(q);
    }
  }
  std::vector<std::vector<std::uint64_t>> parts;
  for (auto& [l, qs] : by_prime) {
    std::sort(qs.rbegin(), qs.rend());
    parts.push_back(qs);
  }
  return combine_primary(parts);
}

Instance::Instance(const RecurrenceParams& params, std::uint64_t p)
    : params_(params),
      p_(p),
      prime_(p),
      splitting_(splitting_type(params, prime_)),
      s_(params.s_at(prime_)),
      d0_(params.d0_at(prime_)),
      G_(enumerate_G(params, p)),
      Gstar_(enumerate_Gstar(params, p)),
      r_(rank(params, p).r),
      alg_(params),
      setting_(make_setting(params, RingCtx::rationals())) {
  if (splitting_ == Splitting::Split) padic_ = PadicCtx::for_field(params.m, prime_, 16);
}

unsigned Instance::conductor_exponent() const {
  long va = params_.a == 0 ? 0 : vp_int(params_.a, prime_);
  if (params_.reducible() || p_ != 2) return static_cast<unsigned>(va);
  if (mod(params_.m, Int(4)) == 1) return static_cast<unsigned>(va);
  return static_cast<unsigned>(va - 1);
}

std::vector<long> Instance::valuations(const QuadElem& alpha) const {
  if (padic_) return valuations_above_p(alpha, *padic_);
  return valuations_above_p(alpha, prime_);
}

long Instance::V(const QuadElem& alpha) const {
  auto v = valuations(alpha);
  if (v.size() != 2) throw Error(ErrorKind::Domain, "V is defined for split or rational p");
  return v[0] - v[1];
}

FpVec reduce_p(const GClass& a, std::uint64_t p) {
  std::uint64_t w1 = residue(int_of(a.rep.w1()), p);
  std::uint64_t w0 = residue(int_of(a.rep.w0()), p);
  if (w1 != 0) return FpVec{1, mul_mod(w0, inv_mod(w1, p), p)};
  return FpVec{0, 1};
}

MembershipReport membership(const Instance& inst, const GClass& a) {
  if (a.rep.ctx().kind() != RingKind::Rationals) throw Error(ErrorKind::ContextMismatch, "membership needs a class over Q");
  MembershipReport m{a};
  std::uint64_t p = inst.p();
  m.raw_reduction = FpVec{residue(int_of(a.rep.w1()), p), residue(int_of(a.rep.w0()), p)};
  m.in_K = residue(int_of(lambda_norm(a.rep)), p) != 0;
  if (m.in_K) {
    FpVec red = reduce_p(a, p);
    m.reduced_point = red;
    m.in_G = red == FpVec{1, 0};
    m.power_to_G = inst.G().element_order(inst.G().index_of(red));
  }
  QuadElem alpha = inst.algebra().psi(a.rep.w1(), a.rep.w0());
  m.valuations = inst.valuations(alpha);
  if (m.valuations.size() == 2) {
    m.V = m.valuations[0] - m.valuations[1];
    m.in_H = *m.V == 0;
  } else {
    m.in_H = true;
  }
  return m;
}

std::vector<GClass> sample_grid(const SettingPtr& s, long radius) {
  std::vector<GClass> out;
  for (long w1 = 0; w1 <= radius; ++w1) {
    for (long w0 = -radius; w0 <= radius; ++w0) {
      if (w1 == 0 && w0 != 1) continue;
      if (std::gcd(w1, w0) != 1) continue;
      ClassVector v(w1, w0, s);
      if (lambda_norm(v) == 0) continue;
      out.push_back(GClass{v});
    }
  }
  return out;
}

bool ExactSequenceReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ExactSequenceReport verify_exact_sequence(const Instance& inst, const std::vector<GClass>& samples) {
  ExactSequenceReport rep;
  const FiniteGroupTable& G = inst.G();
  const FpLaw& law = G.law();
  const std::uint64_t p = inst.p();
  auto& checks = rep.checks;

  std::vector<MembershipReport> ms;
  std::vector<std::size_t> in_k;
  for (const auto& a : samples) {
    ms.push_back(membership(inst, a));
    if (ms.back().in_K) in_k.push_back(ms.size() - 1);
  }

  bool chain = true;
  std::string bad;
  for (const auto& m : ms) {
    if ((m.in_G && !m.in_K) || (m.in_K && !m.in_H)) {
      chain = false;
      bad = pair_str(m.cls);
    }
  }
  add(checks, "chain G <= K <= H", chain, bad);

  // red_p is a homomorphism on K.
  bool hom = true;
  for (std::size_t i = 0; i + 1 < in_k.size() && i < 40; ++i) {
    const auto& a = ms[in_k[i]];
    const auto& b = ms[in_k[i + 1]];
    GClass ab = class_mul(a.cls, b.cls);
    auto mab = membership(inst, ab);
    if (!mab.in_K || !(*mab.reduced_point == law.mul(*a.reduced_point, *b.reduced_point))) {
      hom = false;
      bad = pair_str(a.cls) + "*" + pair_str(b.cls);
    }
  }
  add(checks, "red_p homomorphism on K", hom, hom ? "" : bad);

  // Surjectivity: every point of G_{F_p}(f) has an integer lift in K; the lifts
  // also carry the B-action.
  bool surj = true, equiv = true;
  std::vector<FpVec> images;
  for (const FpVec& e : G.elements()) {
    GClass lift = normalize(ClassVector(Rat(Int(static_cast<unsigned long>(e.w1))),
                                        Rat(Int(static_cast<unsigned long>(e.w0))), inst.rationals()));
    auto m = membership(inst, lift);
    if (!m.in_K || !(*m.reduced_point == e)) {
      surj = false;
      continue;
    }
    images.push_back(*m.reduced_point);
    auto shifted = membership(inst, normalize(b_act(lift.rep, 1)));
    if (!shifted.in_K || !(*shifted.reduced_point == law.shift(e))) equiv = false;
  }
  add(checks, "red_p surjective onto G_Fp", surj, std::to_string(images.size()) + " lifts");
  add(checks, "red_p commutes with B", equiv);

  // Kernel: a^n lands in G(f,p) exactly when red_p(a)^n = 1.
  bool kern = true;
  for (std::size_t i = 0; i < in_k.size() && i < 6; ++i) {
    const auto& m = ms[in_k[i]];
    GClass an = normalize(pow(m.cls.rep, static_cast<long>(*m.power_to_G)));
    if (!membership(inst, an).in_G) {
      kern = false;
      bad = pair_str(m.cls);
    }
    if (m.in_G != (m.reduced_point && *m.reduced_point == FpVec{1, 0})) kern = false;
  }
  add(checks, "kernel of red_p is G(f,p)", kern, kern ? "" : bad);

  // Cosets of G* in K*: B-orbits of the reduced lifts.
  std::set<std::uint64_t> seen;
  std::uint64_t orbits = 0;
  for (const FpVec& e : images) {
    if (seen.count(law.key(e))) continue;
    ++orbits;
    FpVec c = e;
    do {
      seen.insert(law.key(c));
      c = law.shift(c);
    } while (!(c == e));
  }
  rep.kstar_gstar_cosets = orbits;
  std::uint64_t r = inst.r();
  bool counts = orbits == inst.Gstar().order() && G.order() % r == 0 && orbits == G.order() / r;
  add(checks, "|K*/G*| = |G*_Fp| = |G_Fp|/r", counts,
      std::to_string(orbits) + " " + std::to_string(inst.Gstar().order()) + " " + std::to_string(G.order()) + "/" +
          std::to_string(r));

  add(checks, "rank equals order of [0,1]", rank_by_group(G) == r);

  std::uint64_t expected = inst.s() > 0 ? p : inst.splitting() == Splitting::Inert ? p + 1 : p - 1;
  add(checks, "order of G_Fp", G.order() == expected,
      std::to_string(G.order()) + " vs " + std::to_string(expected));

  // A class lies in G*(f,p) iff a window of its sequence shows w_n = 0 with w_{n+1} a unit.
  bool window_ok = true;
  for (const auto& m : ms) {
    std::uint64_t a0 = residue(int_of(m.cls.rep.w0()), p), a1 = residue(int_of(m.cls.rep.w1()), p);
    bool hit = false;
    for (std::uint64_t n = 0; n <= r && !hit; ++n) {
      if (a0 == 0 && a1 != 0) hit = true;
      std::uint64_t a2 = (mul_mod(law.P(), a1, p) + p - mul_mod(law.Q(), a0, p)) % p;
      a0 = a1;
      a1 = a2;
    }
    bool by_reduction = m.in_K && inst.Gstar().index_of(*m.reduced_point) == inst.Gstar().identity();
    if (hit != by_reduction) {
      window_ok = false;
      bad = pair_str(m.cls);
    }
  }
  add(checks, "window test matches reduction for G*", window_ok, window_ok ? "" : bad);
  return rep;
}

Prediction predict_structure(const RecurrenceParams& params, std::uint64_t p) {
  PrimeP prime(p);
  Splitting sp = splitting_type(params, prime);
  long s = params.s_at(prime);
  std::uint64_t r = rank(params, p).r;
  Prediction pr;
  bool rational_or_split = sp == Splitting::Split || sp == Splitting::RationalField;
  if (s == 0) {
    if (sp == Splitting::Inert) {
      pr.case_label = "1";
      pr.kstar_gstar = {cyclic((p + 1) / r), 0};
      pr.g_over_k = GroupDesc{{}, 0};
      pr.free_rank = 0;
      pr.h_equals_k = true;
      pr.g_equals_h = true;
    } else {
      pr.case_label = "2";
      pr.kstar_gstar = {cyclic((p - 1) / r), 0};
      pr.g_over_k = GroupDesc{{}, 1};
      pr.free_rank = 1;
      pr.h_equals_k = true;
      pr.g_equals_h = false;
    }
    return pr;
  }
  pr.kstar_gstar = {{}, 0};
  if (s == 1) {
    pr.case_label = "3";
    pr.g_over_k = GroupDesc{{2}, 0};
    pr.free_rank = 0;
    pr.h_equals_k = false;
    pr.g_equals_h = true;
    return pr;
  }
  long k = s / 2;
  if (s % 2 == 1) {
    pr.case_label = "4i";
    pr.free_rank = 0;
    pr.g_equals_h = true;
    if (p == 3) {
      pr.g_over_k_alternatives.push_back(GroupDesc{cyclic(2 * ipow(3, k)), 0});
      pr.g_over_k_alternatives.push_back(GroupDesc{invariants_of_product({6, ipow(3, k - 1)}), 0});
      pr.h_equals_k = false;
      pr.in_range = false;
      pr.exclusion = "p = 3 ramified with odd s >= 3: two listed groups";
    } else if (p != 2) {
      pr.g_over_k = GroupDesc{cyclic(2 * ipow(p, k)), 0};
      pr.h_equals_k = false;
    }
  } else if (sp == Splitting::Inert) {
    pr.case_label = "4ii";
    pr.free_rank = 0;
    pr.g_equals_h = true;
    if (p != 2) {
      pr.g_over_k = GroupDesc{cyclic((p + 1) * ipow(p, k - 1)), 0};
      pr.h_equals_k = false;
    }
  } else if (rational_or_split) {
    pr.case_label = "4iii";
    pr.free_rank = 1;
    pr.g_equals_h = false;
    if (p != 2) {
      std::uint64_t n = (p - 1) * ipow(p, k - 1);
      pr.g_over_k = GroupDesc{cyclic(n), 1};
      pr.h_equals_k = n == 1;
    }
  } else {
    pr.case_label = "unlisted";
    pr.free_rank = 0;
    pr.g_equals_h = true;
  }
  if (p == 2) {
    pr.in_range = false;
    pr.exclusion = "p = 2 divides D";
  }
  return pr;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::OutOfRange: return "out-of-formula-range";
  }
  return "?";
}

namespace {

// A class whose psi-image has nonzero V, proving a free factor.
std::optional<GClass> free_witness(const Instance& inst, const std::vector<GClass>& samples) {
  for (const auto& a : samples)
    if (inst.V(inst.algebra().psi(a.rep.w1(), a.rep.w0())) != 0) return a;
  const std::uint64_t p = inst.p();
  for (unsigned j = 1; j <= 30; ++j) {
    Int pj = pow_int(Int(static_cast<unsigned long>(p)), j);
    Int t;
    if (inst.params().reducible()) {
      t = int_of(inst.algebra().root1()) + pj;
    } else {
      PadicCtx ctx = PadicCtx::for_field(inst.params().m, inst.prime(), j + 4);
      Int twice = inst.params().P + inst.params().a * ctx.sqrt_m();
      if (p == 2) {
        t = mod(Int(twice / 2), pj);
      } else {
        t = mod(Int(twice * inv_mod(Int(2), pj)), pj);
      }
    }
    ClassVector v(Rat(t), 1, inst.rationals());
    if (lambda_norm(v) == 0) continue;
    GClass g = normalize(v);
    if (inst.V(inst.algebra().psi(g.rep.w1(), g.rep.w0())) != 0) return g;
  }
  return std::nullopt;
}

// A class with odd valuation at the ramified prime.
std::optional<GClass> odd_witness(const Instance& inst, const std::vector<GClass>& samples) {
  for (const auto& a : samples)
    if (inst.valuations(inst.algebra().psi(a.rep.w1(), a.rep.w0()))[0] % 2 != 0) return a;
  const std::uint64_t p = inst.p();
  std::uint64_t bound = ipow(p, std::min<long>(inst.s() + 1, 12));
  for (std::uint64_t w1 = 0; w1 < bound; ++w1) {
    ClassVector v(Rat(Int(static_cast<unsigned long>(w1))), 1, inst.rationals());
    if (lambda_norm(v) == 0) continue;
    GClass g = normalize(v);
    if (inst.valuations(inst.algebra().psi(g.rep.w1(), g.rep.w0()))[0] % 2 != 0) return g;
  }
  return std::nullopt;
}

}  // namespace

StructureReport crosscheck_structure(const Instance& inst, const std::vector<GClass>& samples) {
  const std::uint64_t p = inst.p();
  StructureReport rep{p,
                      inst.splitting(),
                      inst.s(),
                      inst.d0(),
                      inst.r(),
                      inst.G().order(),
                      inst.Gstar().order(),
                      abelian_invariants(inst.G()),
                      abelian_invariants(inst.Gstar()),
                      predict_structure(inst.params(), p),
                      {},
                      {},
                      Verdict::Match};
  auto& checks = rep.checks;
  Computed& c = rep.computed;
  c.kstar_gstar = GroupDesc{rep.gstar_invariants, 0};

  bool split_like = inst.splitting() == Splitting::Split || inst.splitting() == Splitting::RationalField;
  std::vector<std::uint64_t> parts;
  if (inst.params().reducible()) {
    parts = integer_unit_group(p, inst.s() / 2);
  } else {
    unsigned k = inst.conductor_exponent();
    if (ipow(p, k) > 10000000) throw Error(ErrorKind::TooLarge, "p^k exceeds 10^7");
    c.unit_quotient = unit_quotient(inst.params(), p, k);
    parts = c.unit_quotient;
    if (inst.splitting() == Splitting::Ramified) {
      auto w = odd_witness(inst, samples);
      add(checks, "odd valuation witness at ramified prime", w.has_value(), w ? pair_str(*w) : "none found");
      if (w) parts.push_back(2);
    }
  }
  c.g_over_k.finite = invariants_of_product(parts);

  std::uint64_t bound = c.g_over_k.finite_order();
  if (split_like) {
    auto w = free_witness(inst, samples);
    add(checks, "free factor witness with V != 0", w.has_value(), w ? pair_str(*w) : "none found");
    c.g_over_k.free_rank = w ? 1 : 0;
  }

  // Torsion of G/K is H/K: a sample has a power in K within the finite order
  // exactly when it lies in H.
  bool torsion_ok = true;
  std::string bad;
  bool coprime_ok = true;
  for (const auto& a : samples) {
    auto m = membership(inst, a);
    bool reaches_k = m.in_K || power_into_K(a, p, bound).has_value();
    if (reaches_k != m.in_H) {
      torsion_ok = false;
      bad = pair_str(a);
    }
    if (split_like && inst.s() < 2 && std::min(m.valuations[0], m.valuations[1]) != 0) coprime_ok = false;
  }
  add(checks, "torsion of G/K is H/K", torsion_ok, torsion_ok ? "bound " + std::to_string(bound) : bad);
  if (split_like && inst.s() < 2) add(checks, "coprime classes have a unit coordinate above p", coprime_ok);
  if (!split_like) c.g_over_k.free_rank = torsion_ok ? 0 : 1;

  c.h_equals_k = c.g_over_k.finite.empty();
  c.g_equals_h = c.g_over_k.free_rank == 0;

  auto es = verify_exact_sequence(inst, samples);
  checks.insert(checks.end(), es.checks.begin(), es.checks.end());

  const Prediction& pr = rep.predicted;
  bool mismatch = !(c.kstar_gstar == pr.kstar_gstar) || c.g_over_k.free_rank != pr.free_rank;
  if (pr.g_over_k && !(c.g_over_k == *pr.g_over_k)) mismatch = true;
  if (!pr.g_over_k_alternatives.empty()) {
    auto it = std::find(pr.g_over_k_alternatives.begin(), pr.g_over_k_alternatives.end(), c.g_over_k);
    if (it == pr.g_over_k_alternatives.end()) {
      mismatch = true;
      c.branch = "neither";
    } else {
      c.branch = it == pr.g_over_k_alternatives.begin() ? "cyclic" : "product";
    }
  }
  if (pr.h_equals_k && *pr.h_equals_k != c.h_equals_k) mismatch = true;
  if (pr.g_equals_h && *pr.g_equals_h != c.g_equals_h) mismatch = true;
  for (const auto& ch : checks)
    if (!ch.pass) mismatch = true;
  rep.verdict = mismatch ? Verdict::Mismatch : pr.in_range ? Verdict::Match : Verdict::OutOfRange;
  return rep;
}

StructureReport crosscheck_structure(const RecurrenceParams& params, std::uint64_t p, long radius) {
  Instance inst(params, p);
  return crosscheck_structure(inst, sample_grid(inst.rationals(), radius));
}

}  // namespace laxton
