#include "laxton/quad.hpp"

namespace laxton {

QuadElem QuadElem::field(const Rat& x, const Rat& y, const Int& m) {
  if (m == 1 || m == 0) throw Error(ErrorKind::InvalidInput, "field generator must be a non-square");
  return QuadElem(x, y, m, false);
}

QuadElem QuadElem::pair(const Rat& u, const Rat& v) { return QuadElem(u, v, Int(1), true); }

void QuadElem::same_algebra(const QuadElem& o) const {
  if (split_ != o.split_ || m_ != o.m_) throw Error(ErrorKind::ContextMismatch, "elements of different algebras");
}

QuadElem QuadElem::conj() const {
  if (split_) return QuadElem(y_, x_, m_, true);
  return QuadElem(x_, -y_, m_, false);
}

Rat QuadElem::norm() const {
  if (split_) return x_ * y_;
  return x_ * x_ - y_ * y_ * m_;
}

Rat QuadElem::trace() const { return split_ ? Rat(x_ + y_) : Rat(2 * x_); }

bool QuadElem::is_rational() const { return split_ ? x_ == y_ : y_ == 0; }

Rat QuadElem::rational_value() const {
  if (!is_rational()) throw Error(ErrorKind::Domain, "element is not rational");
  return x_;
}

QuadElem QuadElem::scalar(const Rat& c) const { return split_ ? QuadElem(c, c, m_, true) : QuadElem(c, 0, m_, false); }

QuadElem QuadElem::operator+(const QuadElem& o) const {
  same_algebra(o);
  return QuadElem(x_ + o.x_, y_ + o.y_, m_, split_);
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
  same_algebra(o);
  return QuadElem(x_ - o.x_, y_ - o.y_, m_, split_);
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
  same_algebra(o);
  if (split_) return QuadElem(x_ * o.x_, y_ * o.y_, m_, true);
  return QuadElem(x_ * o.x_ + y_ * o.y_ * m_, x_ * o.y_ + y_ * o.x_, m_, false);
}

QuadElem QuadElem::operator*(const Rat& c) const { return QuadElem(x_ * c, y_ * c, m_, split_); }

QuadElem QuadElem::inverse() const {
  Rat n = norm();
  if (n == 0) throw Error(ErrorKind::NotInvertible, "zero divisor in quadratic algebra");
  if (split_) return QuadElem(1 / x_, 1 / y_, m_, true);
  return conj() * Rat(1 / n);
}

QuadElem QuadElem::pow(long n) const {
  QuadElem base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  QuadElem r = scalar(1);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool QuadElem::operator==(const QuadElem& o) const {
  return split_ == o.split_ && m_ == o.m_ && x_ == o.x_ && y_ == o.y_;
}

std::string QuadElem::str() const {
  if (split_) return "(" + x_.get_str() + ", " + y_.get_str() + ")";
  return x_.get_str() + " + " + y_.get_str() + "*sqrt(" + m_.get_str() + ")";
}

QuadAlgebra::QuadAlgebra(const RecurrenceParams& params) : params_(params) {}

QuadElem QuadAlgebra::scalar(const Rat& c) const {
  return split() ? QuadElem::pair(c, c) : QuadElem::field(c, 0, params_.m);
}

Rat QuadAlgebra::root1() const {
  if (!split()) throw Error(ErrorKind::Domain, "f is irreducible");
  return frac(params_.P + params_.a, 2);
}

Rat QuadAlgebra::root2() const {
  if (!split()) throw Error(ErrorKind::Domain, "f is irreducible");
  return frac(params_.P - params_.a, 2);
}

QuadElem QuadAlgebra::theta1() const {
  if (split()) return QuadElem::pair(root1(), root2());
  return QuadElem::field(frac(params_.P, 2), frac(params_.a, 2), params_.m);
}

QuadElem QuadAlgebra::psi(const Rat& w1, const Rat& w0) const { return scalar(w1) - theta1() * w0; }

std::pair<Rat, Rat> QuadAlgebra::coords(const QuadElem& e) const {
  // e = w1 - w0 t; the t-coefficient is read off the antisymmetric part.
  QuadElem t = theta1();
  QuadElem diff = t - t.conj();
  QuadElem anti = e - e.conj();
  Rat w0;
  if (split()) {
    w0 = -anti.x() / diff.x();
  } else {
    w0 = -anti.y() / diff.y();
  }
  QuadElem rest = e + t * w0;
  return {rest.rational_value(), w0};
}

}  // namespace laxton
