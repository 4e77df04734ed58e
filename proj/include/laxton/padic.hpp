#pragma once

#include <vector>

#include "laxton/arith.hpp"
#include "laxton/quad.hpp"

namespace laxton {

/// Hensel-lifted square root of a field generator m at a prime p that splits
/// in Q(sqrt(m)). The prime above p called frak-p is the one with
/// sqrt(m) = root mod frak-p, so theta1 = (P + a*root)/2 mod frak-p.
///
/// Labeling: for odd p the root is the lift of the residue in [1, (p-1)/2];
/// for p = 2 it is the root congruent to 1 mod 4.
class PadicCtx {
 public:
  static PadicCtx for_field(const Int& m, const PrimeP& p, unsigned k = 8);

  const PrimeP& prime() const { return p_; }
  unsigned precision() const { return k_; }
  /// Digits of the root that agree with the p-adic root (k - 1 when p = 2).
  unsigned reliable() const { return p_.value() == 2 ? k_ - 1 : k_; }
  Int modulus() const { return pow_int(p_.value(), reliable()); }
  const Int& sqrt_m() const { return root_; }
  /// r = a * sqrt_m mod p^k; satisfies r^2 = D mod p^k.
  Int lifted_root(const Int& a) const;

  /// Same root at twice the precision.
  PadicCtx raised() const;

 private:
  PadicCtx(PrimeP p, Int m, unsigned k, Int root) : p_(std::move(p)), m_(std::move(m)), k_(k), root_(std::move(root)) {}

  PrimeP p_;
  Int m_;
  unsigned k_;
  Int root_;
};

/// Square root of n modulo an odd prime p, n a nonzero residue. The smaller
/// of the two roots in [1, p-1] is returned.
Int sqrt_mod_prime(const Int& n, const PrimeP& p);

/// Split: (v_frak-p, v_frak-p-sigma). Inert, Ramified: (v_frak-p). Split mode
/// algebra: the p-valuations of the two coordinates.
std::vector<long> valuations_above_p(const QuadElem& alpha, const PrimeP& p);
/// As above, starting the lift from a caller-provided context.
std::vector<long> valuations_above_p(const QuadElem& alpha, const PadicCtx& start);

}  // namespace laxton
