#include "laxton/finite_group.hpp"

#include <algorithm>

namespace laxton {

namespace {

std::uint64_t reduce(const Int& x, std::uint64_t p) {
  return static_cast<std::uint64_t>(mpz_get_ui(mod(x, Int(static_cast<unsigned long>(p))).get_mpz_t()));
}

constexpr std::uint64_t kTableLimit = 50000000;

void check_table_size(std::uint64_t p) {
  if (p > kTableLimit) throw Error(ErrorKind::TooLarge, "p > 5*10^7: group table too large");
}

}  // namespace

FpLaw::FpLaw(const RecurrenceParams& params, std::uint64_t p) : p_(p), P_(reduce(params.P, p)), Q_(reduce(params.Q, p)) {
  if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  if (Q_ == 0) throw Error(ErrorKind::InvalidInput, "Q not a unit mod p");
}

FpVec FpLaw::normalize(std::uint64_t w1, std::uint64_t w0) const {
  w1 %= p_;
  w0 %= p_;
  if (w1 != 0) return FpVec{1, mul_mod(w0, inv_mod(w1, p_), p_)};
  if (w0 == 0) throw Error(ErrorKind::InvalidInput, "zero vector is not a projective point");
  return FpVec{0, 1};
}

std::uint64_t FpLaw::lambda(std::uint64_t w1, std::uint64_t w0) const {
  std::uint64_t a = mul_mod(w1, w1, p_);
  std::uint64_t b = mul_mod(P_, mul_mod(w1, w0, p_), p_);
  std::uint64_t c = mul_mod(Q_, mul_mod(w0, w0, p_), p_);
  return (a + (p_ - b) + c) % p_;
}

FpVec FpLaw::mul(const FpVec& a, const FpVec& b) const {
  std::uint64_t x = (mul_mod(a.w1, b.w1, p_) + p_ - mul_mod(Q_, mul_mod(a.w0, b.w0, p_), p_)) % p_;
  std::uint64_t y = (mul_mod(a.w0, b.w1, p_) + mul_mod(a.w1, b.w0, p_)) % p_;
  y = (y + p_ - mul_mod(P_, mul_mod(a.w0, b.w0, p_), p_)) % p_;
  return normalize(x, y);
}

FpVec FpLaw::shift(const FpVec& a) const {
  std::uint64_t x = (mul_mod(P_, a.w1, p_) + p_ - mul_mod(Q_, a.w0, p_)) % p_;
  return normalize(x, a.w1);
}

FiniteGroupTable FiniteGroupTable::full(const RecurrenceParams& params, std::uint64_t p) {
  check_table_size(p);
  FiniteGroupTable t(FpLaw(params, p), false);
  t.class_of_key_.assign(p + 1, -1);
  for (std::uint64_t k = 0; k <= p; ++k) {
    FpVec v = t.law_.from_key(k);
    if (t.law_.lambda(v.w1, v.w0) == 0) continue;
    t.class_of_key_[k] = static_cast<std::int64_t>(t.reps_.size());
    t.reps_.push_back(v);
  }
  return t;
}

FiniteGroupTable FiniteGroupTable::starred(const RecurrenceParams& params, std::uint64_t p) {
  check_table_size(p);
  FiniteGroupTable t(FpLaw(params, p), true);
  const FpLaw& law = t.law_;
  t.class_of_key_.assign(p + 1, -1);
  std::vector<FpVec> sub{FpVec{1, 0}};
  for (FpVec g = FpVec{0, 1}; !(g == FpVec{1, 0}); g = law.mul(g, FpVec{0, 1})) sub.push_back(g);
  // Lexicographic order puts (0,1) first, then (1,0), (1,1), ...
  std::vector<std::uint64_t> keys{p};
  for (std::uint64_t k = 0; k < p; ++k) keys.push_back(k);
  for (std::uint64_t k : keys) {
    FpVec v = law.from_key(k);
    if (law.lambda(v.w1, v.w0) == 0 || t.class_of_key_[k] >= 0) continue;
    auto id = static_cast<std::int64_t>(t.reps_.size());
    t.reps_.push_back(v);
    for (const FpVec& s : sub) t.class_of_key_[law.key(law.mul(v, s))] = id;
  }
  return t;
}

bool FiniteGroupTable::contains(const FpVec& v) const {
  FpVec n = law_.normalize(v.w1, v.w0);
  return class_of_key_[law_.key(n)] >= 0;
}

std::size_t FiniteGroupTable::index_of(const FpVec& v) const {
  FpVec n = law_.normalize(v.w1, v.w0);
  std::int64_t c = class_of_key_[law_.key(n)];
  if (c < 0) throw Error(ErrorKind::NotInvertible, "point is outside G_Fp(f)");
  return static_cast<std::size_t>(c);
}

std::size_t FiniteGroupTable::mul(std::size_t i, std::size_t j) const { return index_of(law_.mul(reps_[i], reps_[j])); }

std::size_t FiniteGroupTable::pow(std::size_t i, std::uint64_t e) const {
  std::size_t r = identity(), b = i;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t FiniteGroupTable::element_order(std::size_t i) const {
  std::size_t one = identity();
  return order_by_descent(order(), [&](std::uint64_t d) { return pow(i, d) == one; });
}

std::vector<std::uint64_t> FiniteGroupTable::invariant_factors() const {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::size_t i = 0; i < order(); ++i) ++hist[element_order(i)];
  return invariants_from_orders(order(), hist);
}

std::vector<std::uint64_t> combine_primary(const std::vector<std::vector<std::uint64_t>>& parts) {
  std::size_t len = 0;
  for (auto& part : parts) len = std::max(len, part.size());
  std::vector<std::uint64_t> out(len, 1);
  // out[0] is the largest factor here.
  for (auto& part : parts)
    for (std::size_t i = 0; i < part.size(); ++i) out[i] *= part[i];
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> invariants_from_orders(std::uint64_t n, const std::map<std::uint64_t, std::uint64_t>& hist) {
  return invariants_from_torsion(n, [&](std::uint64_t q) {
    std::uint64_t c = 0;
    for (auto& [ord, cnt] : hist)
      if (q % ord == 0) c += cnt;
    return c;
  });
}

RankResult rank(const RecurrenceParams& params, std::uint64_t p) {
  FpLaw law(params, p);
  std::uint64_t a = 0, b = 1, n = 1;
  while (b != 0) {
    std::uint64_t c = (mul_mod(law.P(), b, p) + p - mul_mod(law.Q(), a, p)) % p;
    a = b;
    b = c;
    ++n;
  }
  return RankResult{p, n, n};
}

std::uint64_t rank_by_group(const FiniteGroupTable& g) {
  if (g.is_starred()) throw Error(ErrorKind::Domain, "rank needs the full group");
  return g.element_order(g.index_of(FpVec{0, 1}));
}

FiniteGroupTable enumerate_G(const RecurrenceParams& params, std::uint64_t p) { return FiniteGroupTable::full(params, p); }

FiniteGroupTable enumerate_Gstar(const RecurrenceParams& params, std::uint64_t p) {
  return FiniteGroupTable::starred(params, p);
}

std::vector<std::uint64_t> abelian_invariants(const FiniteGroupTable& table) { return table.invariant_factors(); }

}  // namespace laxton
