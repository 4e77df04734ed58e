#pragma once

#include <optional>
#include <string>

#include "laxton/quad.hpp"
#include "laxton/recurrence.hpp"

namespace laxton {

/// A class vector in normal form for scaling by units.
/// Q and Z_(p): coprime integers, w1 > 0 or (w1 = 0 and w0 > 0).
/// F_p: first nonzero coordinate is 1.
struct GClass {
  ClassVector rep;
  bool operator==(const GClass& o) const { return rep == o.rep; }
};

GClass normalize(const ClassVector& v);
/// a = lambda b for a unit lambda of the ring.
bool decide_equiv(const ClassVector& a, const ClassVector& b);

/// Outcome of deciding a = lambda * B^nu * b.
struct StarDecision {
  bool equivalent = false;
  long nu = 0;
  Rat lambda = 0;
  /// Set when the shift is only determined modulo a period.
  std::optional<long> period;
  std::string reason;
};

StarDecision decide_star_equiv(const ClassVector& a, const ClassVector& b);

GClass class_mul(const GClass& a, const GClass& b);

/// w1 - w0 theta1 scaled to primitive integer coordinates with positive
/// leading coordinate. Irreducible f only.
QuadElem psi_map(const GClass& a);
/// (w1 - w0 theta1) / (w1 - w0 theta2). Reducible f only.
Rat ratio_map(const GClass& a);

/// Representative of x mod Q^x: primitive integer coordinates, first nonzero positive.
QuadElem primitive_mod_rationals(const QuadElem& x);
/// x / y lies in Q^x.
bool same_mod_rationals(const QuadElem& x, const QuadElem& y);

}  // namespace laxton
