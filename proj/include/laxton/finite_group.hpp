#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "laxton/params.hpp"

namespace laxton {

/// A point of P^1(F_p), normalized: w1 == 1, or (w1, w0) == (0, 1).
struct FpVec {
  std::uint64_t w1;
  std::uint64_t w0;
  bool operator==(const FpVec& o) const { return w1 == o.w1 && w0 == o.w0; }
  bool operator<(const FpVec& o) const { return w1 != o.w1 ? w1 < o.w1 : w0 < o.w0; }
};

/// Multiplication of classes over F_p for one (P, Q, p).
class FpLaw {
 public:
  FpLaw(const RecurrenceParams& params, std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t P() const { return P_; }
  std::uint64_t Q() const { return Q_; }

  FpVec normalize(std::uint64_t w1, std::uint64_t w0) const;
  std::uint64_t lambda(std::uint64_t w1, std::uint64_t w0) const;
  FpVec mul(const FpVec& a, const FpVec& b) const;
  FpVec shift(const FpVec& a) const;  // B applied once
  /// w1 == 1 ? w0 : p.
  std::uint64_t key(const FpVec& v) const { return v.w1 == 1 ? v.w0 : p_; }
  FpVec from_key(std::uint64_t k) const { return k == p_ ? FpVec{0, 1} : FpVec{1, k}; }

 private:
  std::uint64_t p_, P_, Q_;
};

/// G_{F_p}(f), or its quotient G*_{F_p}(f) by the subgroup generated by [0,1].
class FiniteGroupTable {
 public:
  static FiniteGroupTable full(const RecurrenceParams& params, std::uint64_t p);
  static FiniteGroupTable starred(const RecurrenceParams& params, std::uint64_t p);

  const FpLaw& law() const { return law_; }
  bool is_starred() const { return starred_; }
  std::size_t order() const { return reps_.size(); }
  /// Class representatives; in the starred table the lexicographically least
  /// member of each coset.
  const std::vector<FpVec>& elements() const { return reps_; }
  /// Class of a point; throws if the point is not in G_{F_p}(f).
  std::size_t index_of(const FpVec& v) const;
  bool contains(const FpVec& v) const;
  std::size_t identity() const { return index_of(FpVec{1, 0}); }
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t pow(std::size_t i, std::uint64_t e) const;
  std::uint64_t element_order(std::size_t i) const;
  std::vector<std::uint64_t> invariant_factors() const;

 private:
  FiniteGroupTable(FpLaw law, bool starred) : law_(law), starred_(starred) {}

  FpLaw law_;
  bool starred_;
  std::vector<std::int64_t> class_of_key_;  // -1: Lambda vanishes
  std::vector<FpVec> reps_;
};

struct RankResult {
  std::uint64_t p;
  std::uint64_t r;
  std::uint64_t witness;  // first n > 0 with p | F_n; equal to r
};

/// Least n > 0 with p | F_n, by iterating F mod p.
RankResult rank(const RecurrenceParams& params, std::uint64_t p);
/// Order of [0,1] in G_{F_p}(f).
std::uint64_t rank_by_group(const FiniteGroupTable& g);

FiniteGroupTable enumerate_G(const RecurrenceParams& params, std::uint64_t p);
FiniteGroupTable enumerate_Gstar(const RecurrenceParams& params, std::uint64_t p);
std::vector<std::uint64_t> abelian_invariants(const FiniteGroupTable& table);

/// Invariant factors d1 | d2 | ... (each > 1) of an abelian group of order n.
/// torsion(q) must return #{x : x^q = 1} for prime powers q dividing n.
template <class Torsion>
std::vector<std::uint64_t> invariants_from_torsion(std::uint64_t n, Torsion torsion);

/// Same, from a histogram order -> number of elements.
std::vector<std::uint64_t> invariants_from_orders(std::uint64_t n, const std::map<std::uint64_t, std::uint64_t>& hist);

/// Order of x in a group of order n: least d | n with is_one(d).
template <class IsOne>
std::uint64_t order_by_descent(std::uint64_t n, IsOne is_one) {
  std::uint64_t ord = n;
  for (std::uint64_t q : prime_factors_u64(n)) {
    while (ord % q == 0 && is_one(ord / q)) ord /= q;
  }
  return ord;
}

/// Primary decompositions (one descending list per prime) to invariant factors, ascending.
std::vector<std::uint64_t> combine_primary(const std::vector<std::vector<std::uint64_t>>& parts);

template <class Torsion>
std::vector<std::uint64_t> invariants_from_torsion(std::uint64_t n, Torsion torsion) {
  std::vector<std::vector<std::uint64_t>> parts;
  for (std::uint64_t l : prime_factors_u64(n)) {
    std::uint64_t e = 0, rest = n;
    while (rest % l == 0) {
      rest /= l;
      ++e;
    }
    // c[j] = log_l #{x : x^(l^j) = 1} = sum_i min(j, e_i).
    std::vector<std::uint64_t> c(e + 1, 0);
    std::uint64_t q = 1;
    for (std::uint64_t j = 1; j <= e; ++j) {
      q *= l;
      std::uint64_t cnt = torsion(q), lg = 0;
      while (cnt > 1) {
        cnt /= l;
        ++lg;
      }
      c[j] = lg;
    }
    // Number of cyclic factors of exponent >= j is c[j] - c[j-1].
    std::vector<std::uint64_t> exps;
    for (std::uint64_t j = e; j >= 1; --j) {
      std::uint64_t at_least = c[j] - c[j - 1];
      std::uint64_t above = j < e ? c[j + 1] - c[j] : 0;
      for (std::uint64_t t = above; t < at_least; ++t) exps.push_back(j);
    }
    std::vector<std::uint64_t> powers;
    for (auto x : exps) {
      std::uint64_t v = 1;
      for (std::uint64_t i = 0; i < x; ++i) v *= l;
      powers.push_back(v);
    }
    parts.push_back(powers);  // descending
  }
  return combine_primary(parts);
}

}  // namespace laxton
