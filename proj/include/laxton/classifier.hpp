#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laxton/equivalence.hpp"
#include "laxton/finite_group.hpp"
#include "laxton/padic.hpp"
#include "laxton/params.hpp"
#include "laxton/quad.hpp"
#include "laxton/recurrence.hpp"

namespace laxton {

/// A finitely generated abelian group: Z^free x (finite part by invariant factors).
struct GroupDesc {
  std::vector<std::uint64_t> finite;
  int free_rank = 0;
  bool operator==(const GroupDesc& o) const { return finite == o.finite && free_rank == o.free_rank; }
  std::uint64_t finite_order() const;
  std::string str() const;
};

/// Invariant factors of a direct product of cyclic groups of the given orders.
std::vector<std::uint64_t> invariants_of_product(const std::vector<std::uint64_t>& cyclic_orders);

/// Everything about one (P, Q, p) that the classifier reuses.
class Instance {
 public:
  Instance(const RecurrenceParams& params, std::uint64_t p);

  const RecurrenceParams& params() const { return params_; }
  std::uint64_t p() const { return p_; }
  const PrimeP& prime() const { return prime_; }
  Splitting splitting() const { return splitting_; }
  long s() const { return s_; }
  const Int& d0() const { return d0_; }
  const FiniteGroupTable& G() const { return G_; }
  const FiniteGroupTable& Gstar() const { return Gstar_; }
  std::uint64_t r() const { return r_; }
  const QuadAlgebra& algebra() const { return alg_; }
  const SettingPtr& rationals() const { return setting_; }
  /// Exponent k with Z_(p)[theta1] = Z_(p) + p^k O_(p).
  unsigned conductor_exponent() const;

  /// Valuations of alpha at the primes above p.
  std::vector<long> valuations(const QuadElem& alpha) const;
  /// v_frak-p - v_frak-p-sigma for split or rational p.
  long V(const QuadElem& alpha) const;

 private:
  RecurrenceParams params_;
  std::uint64_t p_;
  PrimeP prime_;
  Splitting splitting_;
  long s_;
  Int d0_;
  FiniteGroupTable G_;
  FiniteGroupTable Gstar_;
  std::uint64_t r_;
  QuadAlgebra alg_;
  SettingPtr setting_;
  std::optional<PadicCtx> padic_;
};

/// Coordinatewise reduction of the coprime integer representative.
FpVec reduce_p(const GClass& a, std::uint64_t p);

struct MembershipReport {
  GClass cls;
  bool in_K = false;
  bool in_G = false;
  bool in_H = false;
  std::vector<long> valuations{};
  std::optional<long> V{};  // split or rational p
  std::optional<FpVec> reduced_point{};  // empty: outside G_{F_p}(f)
  FpVec raw_reduction{0, 0};
  /// For in_K classes: least n > 0 with red_p(a^n) = [1,0] in G_{F_p}(f).
  std::optional<std::uint64_t> power_to_G{};
};

MembershipReport membership(const Instance& inst, const GClass& a);

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

/// Coprime integer classes (w1, w0) with |w| <= radius and Lambda != 0, in normal form.
std::vector<GClass> sample_grid(const SettingPtr& s, long radius);

struct ExactSequenceReport {
  std::uint64_t kstar_gstar_cosets = 0;
  std::vector<Check> checks;
  bool ok() const;
};

ExactSequenceReport verify_exact_sequence(const Instance& inst, const std::vector<GClass>& samples);

struct Prediction {
  std::string case_label;  // "1", "2", "3", "4i", "4ii", "4iii", "unlisted"
  GroupDesc kstar_gstar;
  /// Empty when no closed form applies.
  std::optional<GroupDesc> g_over_k;
  /// Two candidate groups listed for p = 3, ramified, odd s >= 3.
  std::vector<GroupDesc> g_over_k_alternatives;
  int free_rank = 0;
  std::optional<bool> h_equals_k;
  std::optional<bool> g_equals_h;
  bool in_range = true;
  std::string exclusion;
};

Prediction predict_structure(const RecurrenceParams& params, std::uint64_t p);

struct Computed {
  GroupDesc kstar_gstar;
  GroupDesc g_over_k;
  bool h_equals_k = false;
  bool g_equals_h = false;
  std::vector<std::uint64_t> unit_quotient;
  std::string branch;  // which listed group occurred, when there is a choice
};

enum class Verdict { Match, Mismatch, OutOfRange };
std::string to_string(Verdict v);

struct StructureReport {
  std::uint64_t p;
  Splitting splitting;
  long s;
  Int d0;
  std::uint64_t r;
  std::uint64_t g_order;
  std::uint64_t gstar_order;
  std::vector<std::uint64_t> g_invariants;
  std::vector<std::uint64_t> gstar_invariants;
  Prediction predicted;
  Computed computed;
  std::vector<Check> checks;
  Verdict verdict;
};

/// Runs the prediction, the enumerations, the membership and exact-sequence
/// checks on the samples, and compares.
StructureReport crosscheck_structure(const Instance& inst, const std::vector<GClass>& samples);
StructureReport crosscheck_structure(const RecurrenceParams& params, std::uint64_t p, long radius = 4);

}  // namespace laxton
