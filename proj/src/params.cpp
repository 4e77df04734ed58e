#include "laxton/params.hpp"

namespace laxton {

RecurrenceParams::RecurrenceParams(const Int& P_, const Int& Q_) : P(P_), Q(Q_), D(P_ * P_ - 4 * Q_) {
  if (Q == 0) throw Error(ErrorKind::InvalidInput, "Q must be nonzero");
  if (D == 0) throw Error(ErrorKind::InvalidInput, "degenerate discriminant");
  auto sf = squarefree_split(D);
  m = sf.m;
  a = sf.a;
}

Int RecurrenceParams::d0_at(const PrimeP& p) const {
  Int d0;
  mpz_remove(d0.get_mpz_t(), D.get_mpz_t(), p.value().get_mpz_t());
  return d0;
}

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::Inert: return "inert";
    case Splitting::Split: return "split";
    case Splitting::Ramified: return "ramified";
    case Splitting::RationalField: return "rational";
  }
  return "?";
}

Splitting splitting_type(const RecurrenceParams& params, const PrimeP& p) {
  if (params.D == 0) throw Error(ErrorKind::InvalidInput, "degenerate discriminant");
  return splitting_of_field(params.m, p);
}

Splitting splitting_of_field(const Int& m, const PrimeP& p) {
  if (m == 1) return Splitting::RationalField;
  Int disc = mod(m, Int(4)) == 1 ? m : Int(4 * m);
  int k = kronecker(disc, p.value());
  if (k == 0) return Splitting::Ramified;
  return k > 0 ? Splitting::Split : Splitting::Inert;
}

}  // namespace laxton
