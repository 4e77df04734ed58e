#pragma once

#include <string>

#include "laxton/arith.hpp"
#include "laxton/params.hpp"

namespace laxton {

/// Element of Q[t]/(f). Field mode: x + y*sqrt(m). Split mode (m a square):
/// the pair (g(theta1), g(theta2)) stored in x, y.
class QuadElem {
 public:
  static QuadElem field(const Rat& x, const Rat& y, const Int& m);
  static QuadElem pair(const Rat& at_theta1, const Rat& at_theta2);

  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }
  const Int& m() const { return m_; }
  bool split() const { return split_; }

  QuadElem conj() const;
  Rat norm() const;
  Rat trace() const;
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const;
  /// Requires is_rational().
  Rat rational_value() const;

  QuadElem scalar(const Rat& c) const;  // c in the same algebra
  QuadElem operator+(const QuadElem& o) const;
  QuadElem operator-(const QuadElem& o) const;
  QuadElem operator*(const QuadElem& o) const;
  QuadElem operator*(const Rat& c) const;
  QuadElem inverse() const;
  QuadElem operator/(const QuadElem& o) const { return *this * o.inverse(); }
  QuadElem pow(long n) const;
  bool operator==(const QuadElem& o) const;

  std::string str() const;

 private:
  QuadElem(Rat x, Rat y, Int m, bool split) : x_(std::move(x)), y_(std::move(y)), m_(std::move(m)), split_(split) {}
  void same_algebra(const QuadElem& o) const;

  Rat x_, y_;
  Int m_;
  bool split_;
};

/// Q[t]/(f) with the fixed root choice: theta1 = (P + sqrt(D))/2 where sqrt(D)
/// is the positive real root (D > 0) or has positive imaginary part (D < 0).
class QuadAlgebra {
 public:
  explicit QuadAlgebra(const RecurrenceParams& params);

  const RecurrenceParams& params() const { return params_; }
  bool split() const { return params_.reducible(); }

  QuadElem scalar(const Rat& c) const;
  /// Image of t.
  QuadElem theta1() const;
  QuadElem theta2() const { return theta1().conj(); }
  /// w1 - w0 * t.
  QuadElem psi(const Rat& w1, const Rat& w0) const;
  /// Inverse of psi: recovers (w1, w0) from an algebra element.
  std::pair<Rat, Rat> coords(const QuadElem& e) const;

  /// In the split case these are the rational roots.
  Rat root1() const;
  Rat root2() const;

 private:
  RecurrenceParams params_;
};

}  // namespace laxton
