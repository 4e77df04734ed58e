#include "laxton/recurrence.hpp"

#include <array>

namespace laxton {

RingCtx RingCtx::parse(const std::string& text) {
  if (text == "Q") return rationals();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string tag = text.substr(0, colon);
    Int p;
    if (p.set_str(text.substr(colon + 1), 10) != 0) throw Error(ErrorKind::InvalidInput, "bad ring: " + text);
    if (tag == "Zp") return localized(PrimeP(p));
    if (tag == "Fp") return prime_field(PrimeP(p));
  }
  throw Error(ErrorKind::InvalidInput, "bad ring: " + text + " (expected Q, Zp:p or Fp:p)");
}

const PrimeP& RingCtx::prime() const {
  if (!p_) throw Error(ErrorKind::Domain, "ring has no prime");
  return *p_;
}

std::string RingCtx::name() const {
  switch (kind_) {
    case RingKind::Rationals: return "Q";
    case RingKind::Localized: return "Zp:" + p_->value().get_str();
    case RingKind::PrimeField: return "Fp:" + p_->value().get_str();
  }
  return "?";
}

bool RingCtx::operator==(const RingCtx& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ == RingKind::Rationals || *p_ == *o.p_;
}

Rat RingCtx::canonical(const Rat& x) const {
  switch (kind_) {
    case RingKind::Rationals: return x;
    case RingKind::Localized:
      if (x != 0 && vp_rat(x, *p_) < 0) throw Error(ErrorKind::InvalidInput, x.get_str() + " is not " + p_->value().get_str() + "-integral");
      return x;
    case RingKind::PrimeField: return Rat(mod(x, p_->value()));
  }
  return x;
}

bool RingCtx::is_unit(const Rat& x) const {
  switch (kind_) {
    case RingKind::Rationals: return x != 0;
    case RingKind::Localized: return x != 0 && vp_rat(x, *p_) == 0;
    case RingKind::PrimeField: return mod(x, p_->value()) != 0;
  }
  return false;
}

Rat RingCtx::inverse(const Rat& x) const {
  if (!is_unit(x)) throw Error(ErrorKind::NotInvertible, "not invertible in this ring");
  if (kind_ == RingKind::PrimeField) return Rat(inv_mod(mod(x, p_->value()), p_->value()));
  return 1 / x;
}

SettingPtr make_setting(const RecurrenceParams& params, const RingCtx& ctx) {
  Rat Q = ctx.canonical(Rat(params.Q));
  if (!ctx.is_unit(Q)) throw Error(ErrorKind::InvalidInput, "Q not a unit mod p");
  return std::make_shared<const Setting>(Setting{params, ctx, ctx.canonical(Rat(params.P)), Q});
}

ClassVector::ClassVector(Rat w1, Rat w0, SettingPtr setting)
    : w1_(setting->ctx.canonical(w1)), w0_(setting->ctx.canonical(w0)), s_(std::move(setting)) {}

bool ClassVector::operator==(const ClassVector& o) const {
  return w1_ == o.w1_ && w0_ == o.w0_ && s_->params == o.s_->params && s_->ctx == o.s_->ctx;
}

void require_same(const ClassVector& a, const ClassVector& b) {
  if (a.setting() == b.setting()) return;
  if (!(a.params() == b.params()) || !(a.ctx() == b.ctx()))
    throw Error(ErrorKind::ContextMismatch, "operands over different (P, Q) or rings");
}

namespace {

using Mat = std::array<Rat, 4>;  // row-major

Mat mat_mul(const Mat& x, const Mat& y, const RingCtx& c) {
  return {c.canonical(x[0] * y[0] + x[1] * y[2]), c.canonical(x[0] * y[1] + x[1] * y[3]),
          c.canonical(x[2] * y[0] + x[3] * y[2]), c.canonical(x[2] * y[1] + x[3] * y[3])};
}

Mat b_power(const Setting& s, long n) {
  const RingCtx& c = s.ctx;
  Mat base;
  if (n >= 0) {
    base = {s.P, c.canonical(-s.Q), 1, 0};
  } else {
    Rat qi = c.inverse(s.Q);
    base = {0, 1, c.canonical(-qi), c.canonical(s.P * qi)};
  }
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Mat r{1, 0, 0, 1};
  while (e) {
    if (e & 1) r = mat_mul(r, base, c);
    base = mat_mul(base, base, c);
    e >>= 1;
  }
  return r;
}

}  // namespace

Rat lambda_norm(const ClassVector& v) {
  const Setting& s = *v.setting();
  return s.ctx.canonical(v.w1() * v.w1() - s.P * v.w0() * v.w1() + s.Q * v.w0() * v.w0());
}

bool in_units(const ClassVector& v) { return v.ctx().is_unit(lambda_norm(v)); }

Rat term(const ClassVector& v, long n) {
  Mat m = b_power(*v.setting(), n);
  // (w_{n+1}, w_n) = B^n (w1, w0); second row gives w_n.
  return v.ctx().canonical(m[2] * v.w1() + m[3] * v.w0());
}

SeqWindow window(const ClassVector& v, long base, std::size_t len) {
  SeqWindow w{base, {}};
  if (len == 0) return w;
  const Setting& s = *v.setting();
  Rat a = term(v, base);
  w.terms.push_back(a);
  if (len == 1) return w;
  Rat b = term(v, base + 1);
  w.terms.push_back(b);
  while (w.terms.size() < len) {
    Rat c = s.ctx.canonical(s.P * b - s.Q * a);
    w.terms.push_back(c);
    a = b;
    b = c;
  }
  return w;
}

std::pair<ClassVector, ClassVector> lucas_pair(const SettingPtr& s) {
  return {ClassVector(1, 0, s), ClassVector(s->P, 2, s)};
}

ClassVector identity(const SettingPtr& s) { return ClassVector(1, 0, s); }

ClassVector mul(const ClassVector& a, const ClassVector& b) {
  require_same(a, b);
  const Setting& s = *a.setting();
  // Coefficients of 1, t, t^2 in (a1 - a0 t)(b1 - b0 t).
  Rat c0 = a.w1() * b.w1();
  Rat c1 = -(a.w1() * b.w0() + a.w0() * b.w1());
  Rat c2 = a.w0() * b.w0();
  Rat k0 = c0 - c2 * s.Q;
  Rat k1 = c1 + c2 * s.P;
  return ClassVector(k0, -k1, a.setting());
}

ClassVector laxton_mul(const ClassVector& a, const ClassVector& b) {
  require_same(a, b);
  const Setting& s = *a.setting();
  const Rat &w1 = a.w1(), &w0 = a.w0(), &v1 = b.w1(), &v0 = b.w0();
  Rat u0 = w0 * v1 + w1 * v0 - s.P * v0 * w0;
  Rat u1 = w1 * v1 - s.Q * v0 * w0;
  return ClassVector(u1, u0, a.setting());
}

ClassVector inv(const ClassVector& a) {
  const Setting& s = *a.setting();
  Rat li = s.ctx.inverse(lambda_norm(a));
  return ClassVector(li * (a.w1() - s.P * a.w0()), -li * a.w0(), a.setting());
}

ClassVector pow(const ClassVector& a, long n) {
  ClassVector base = n < 0 ? inv(a) : a;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  ClassVector r = identity(a.setting());
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

ClassVector b_act(const ClassVector& a, long nu) {
  Mat m = b_power(*a.setting(), nu);
  return ClassVector(m[0] * a.w1() + m[1] * a.w0(), m[2] * a.w1() + m[3] * a.w0(), a.setting());
}

ClassVector scale(const ClassVector& a, const Rat& lambda) {
  return ClassVector(lambda * a.w1(), lambda * a.w0(), a.setting());
}

}  // namespace laxton
