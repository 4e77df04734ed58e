#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laxton/arith.hpp"
#include "laxton/params.hpp"

namespace laxton {

enum class RingKind { Rationals, Localized, PrimeField };

/// One of Q, Z_(p), F_p.
class RingCtx {
 public:
  static RingCtx rationals() { return RingCtx(RingKind::Rationals, std::nullopt); }
  static RingCtx localized(const PrimeP& p) { return RingCtx(RingKind::Localized, p); }
  static RingCtx prime_field(const PrimeP& p) { return RingCtx(RingKind::PrimeField, p); }
  /// "Q", "Zp:7", "Fp:7".
  static RingCtx parse(const std::string& text);

  RingKind kind() const { return kind_; }
  const PrimeP& prime() const;
  bool has_prime() const { return p_.has_value(); }
  std::string name() const;
  bool operator==(const RingCtx& o) const;

  /// Canonical form of a scalar: residue in [0, p) over F_p; p-integral check over Z_(p).
  Rat canonical(const Rat& x) const;
  bool is_unit(const Rat& x) const;
  Rat inverse(const Rat& x) const;

 private:
  RingCtx(RingKind k, std::optional<PrimeP> p) : kind_(k), p_(std::move(p)) {}
  RingKind kind_;
  std::optional<PrimeP> p_;
};

/// Parameters plus ring; Q is checked to be a unit of the ring.
struct Setting {
  RecurrenceParams params;
  RingCtx ctx;
  Rat P, Q;  // canonical images in the ring
};
using SettingPtr = std::shared_ptr<const Setting>;

SettingPtr make_setting(const RecurrenceParams& params, const RingCtx& ctx);

/// (w1, w0): the class of the sequence with those two initial terms.
class ClassVector {
 public:
  ClassVector(Rat w1, Rat w0, SettingPtr setting);

  const Rat& w1() const { return w1_; }
  const Rat& w0() const { return w0_; }
  const SettingPtr& setting() const { return s_; }
  const RecurrenceParams& params() const { return s_->params; }
  const RingCtx& ctx() const { return s_->ctx; }

  bool operator==(const ClassVector& o) const;
  std::string str() const { return w1_.get_str() + "," + w0_.get_str(); }

 private:
  Rat w1_, w0_;
  SettingPtr s_;
};

struct SeqWindow {
  long base_index;
  std::vector<Rat> terms;
};

void require_same(const ClassVector& a, const ClassVector& b);

Rat lambda_norm(const ClassVector& v);
bool in_units(const ClassVector& v);

/// w_n for any integer n.
Rat term(const ClassVector& v, long n);
/// w_base .. w_{base+len-1}.
SeqWindow window(const ClassVector& v, long base, std::size_t len);

std::pair<ClassVector, ClassVector> lucas_pair(const SettingPtr& s);
ClassVector identity(const SettingPtr& s);

/// Product in R[t]/(f): (a1 - a0 t)(b1 - b0 t) reduced by t^2 = P t - Q.
ClassVector mul(const ClassVector& a, const ClassVector& b);
/// Product from the initial terms of Laxton's sequence product.
ClassVector laxton_mul(const ClassVector& a, const ClassVector& b);
ClassVector inv(const ClassVector& a);
ClassVector pow(const ClassVector& a, long n);
/// B^nu (w1, w0): shift by nu.
ClassVector b_act(const ClassVector& a, long nu);
ClassVector scale(const ClassVector& a, const Rat& lambda);

}  // namespace laxton
