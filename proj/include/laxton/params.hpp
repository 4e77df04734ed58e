#pragma once

#include <string>

#include "laxton/arith.hpp"

namespace laxton {

/// f(t) = t^2 - P t + Q with D = P^2 - 4Q = m a^2, m squarefree.
struct RecurrenceParams {
  Int P;
  Int Q;
  Int D;
  Int m;
  Int a;

  RecurrenceParams(const Int& P, const Int& Q);

  /// f splits over Q.
  bool reducible() const { return m == 1; }

  /// D = p^s * d0 with p not dividing d0.
  long s_at(const PrimeP& p) const { return vp_int(D, p); }
  Int d0_at(const PrimeP& p) const;

  bool operator==(const RecurrenceParams& o) const { return P == o.P && Q == o.Q; }
};

enum class Splitting { Inert, Split, Ramified, RationalField };

std::string to_string(Splitting s);

Splitting splitting_type(const RecurrenceParams& params, const PrimeP& p);
/// Behaviour of p in Q(sqrt(m)); m == 1 gives RationalField.
Splitting splitting_of_field(const Int& m, const PrimeP& p);

}  // namespace laxton
