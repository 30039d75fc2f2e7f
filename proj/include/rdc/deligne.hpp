#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <variant>
#include <vector>

#include "rdc/bidegree.hpp"
#include "rdc/bredon.hpp"
#include "rdc/group.hpp"
#include "rdc/real.hpp"

namespace rdc {

/// An element of the integral Deligne cohomology ring of Spec(R).
///
/// Every constructor canonicalises: the neutral element of a group becomes
/// Zero, circle values are reduced into [0, 1), and a weight-0 Bredon class
/// becomes Unit. Equality is therefore structural.
class DelignePointClass {
 public:
  /// k . 1 in D^{0,0} = Z.
  struct Unit {
    mpz_class k;
    friend bool operator==(const Unit&, const Unit&) = default;
  };
  /// An element of D^{1,p} = R^x (p odd), over the rationals as dense subgroup.
  struct RUnit {
    std::int64_t p;
    mpq_class value;
    friend bool operator==(const RUnit&, const RUnit&) = default;
  };
  /// q (2 pi)^p + Z(p) in D^{1,p} = R/Z(p) (p even), q in [0, 1).
  struct Circle {
    std::int64_t p;
    mpq_class q;
    friend bool operator==(const Circle&, const Circle&) = default;
  };
  /// The nonzero class of D^{n,p} = Z/2, n >= 2, identified with eps^n tau^{(p-n)/2}.
  struct Torsion {
    std::int64_t n;
    std::int64_t p;
    friend bool operator==(const Torsion&, const Torsion&) = default;
  };
  /// A class of negative weight, where Deligne and Bredon cohomology agree.
  struct NegCone {
    BredonPointClass c;
    friend bool operator==(const NegCone&, const NegCone&) = default;
  };
  struct Zero {
    BiDegree d;
    friend bool operator==(const Zero&, const Zero&) = default;
  };
  using Value = std::variant<Unit, RUnit, Circle, Torsion, NegCone, Zero>;

  static DelignePointClass unit(const mpz_class& k);
  static DelignePointClass runit(std::int64_t p, const mpq_class& value);
  static DelignePointClass circle(std::int64_t p, const mpq_class& q);
  static DelignePointClass torsion(std::int64_t n, std::int64_t p, int bit = 1);
  /// c must be homogeneous of weight <= 0; the zero class needs zero().
  static DelignePointClass neg_cone(const BredonPointClass& c);
  static DelignePointClass zero(BiDegree d);
  /// Lifts a homogeneous Bredon class along rho where rho is an isomorphism
  /// (weight <= 0, or degree >= 2). Throws otherwise.
  static DelignePointClass lift(const BredonPointClass& c, BiDegree d);

  const Value& value() const { return value_; }
  BiDegree bidegree() const;
  bool is_zero() const { return std::holds_alternative<Zero>(value_); }

  friend bool operator==(const DelignePointClass&, const DelignePointClass&) = default;

 private:
  explicit DelignePointClass(Value v) : value_(std::move(v)) {}
  Value value_;
};

/// A product the ring structure at the point does not pin down.
struct Undetermined {
  BiDegree left;
  BiDegree right;
  friend bool operator==(const Undetermined&, const Undetermined&) = default;
};

using DeligneProduct = std::variant<DelignePointClass, Undetermined>;

GroupDescriptor deligne_point_group(BiDegree d);

/// The cycle map to Bredon cohomology.
BredonPointClass rho(const DelignePointClass& x);

DeligneProduct deligne_mul(const DelignePointClass& x, const DelignePointClass& y);

/// Group law in D^{n,p}; both classes must share a bidegree.
DelignePointClass deligne_add(const DelignePointClass& x, const DelignePointClass& y);
DelignePointClass deligne_neg(const DelignePointClass& x);

/// Change of coefficients D^{1,p} -> D_R^{1,p} = R, x -> log|x| (p odd).
Real change_to_real(const DelignePointClass& x, unsigned bits = 64);

/// [D^{0,0}, D^{1,1}, ..., D^{i_max,i_max}].
std::vector<GroupDescriptor> diagonal_sequence(std::int64_t i_max);

}  // namespace rdc
