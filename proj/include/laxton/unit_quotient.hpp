#pragma once

#include <cstdint>
#include <vector>

#include "laxton/params.hpp"

namespace laxton {

/// Integral-basis generator of O_F used to write residues x + y*omega.
enum class Basis {
  Standard,  // (1 + sqrt m)/2 when m = 1 mod 4, else sqrt m
  SqrtM,     // sqrt m; gives the same completion as Standard at odd p
};

/// Residues of O_F modulo p^k with the multiplication of the chosen basis.
struct ResidueRing {
  std::uint64_t p;
  unsigned k;
  std::uint64_t pk;
  std::uint64_t tr;  // omega^2 = tr * omega - nm
  std::uint64_t nm;

  ResidueRing(const Int& m, std::uint64_t p, unsigned k, Basis basis);
  std::uint64_t norm(std::uint64_t x, std::uint64_t y) const;
  bool is_unit(std::uint64_t x, std::uint64_t y) const { return norm(x, y) % p != 0; }
  void mul(std::uint64_t& x, std::uint64_t& y, std::uint64_t u, std::uint64_t v) const;
  void pow(std::uint64_t& x, std::uint64_t& y, std::uint64_t e) const;
};

/// Invariant factors of (O_F / p^k)^x / (Z / p^k)^x. The quotient is walked
/// through projective representatives and element orders are computed in
/// parallel.
std::vector<std::uint64_t> unit_quotient(const RecurrenceParams& params, std::uint64_t p, unsigned k,
                                         Basis basis = Basis::Standard);

/// Serial reference: counts every unit residue alpha with alpha^q a scalar.
/// Enumerates p^(2k) residues; refuses more than 10^8.
std::vector<std::uint64_t> unit_quotient_reference(const RecurrenceParams& params, std::uint64_t p, unsigned k,
                                                   Basis basis = Basis::Standard);

/// Order of the quotient group.
std::uint64_t unit_quotient_order(const ResidueRing& ring);

}  // namespace laxton
