#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdc/deligne.hpp"
#include "rdc/group.hpp"
#include "rdc/real.hpp"

namespace rdc {

/// Polynomial over Q, ascending coefficients, no trailing zeros.
using RationalPoly = std::vector<mpq_class>;

namespace poly {
RationalPoly trimmed(RationalPoly f);
std::int64_t degree(const RationalPoly& f);  // -1 for the zero polynomial
RationalPoly derivative(const RationalPoly& f);
RationalPoly mul(const RationalPoly& f, const RationalPoly& g);
RationalPoly mod(const RationalPoly& f, const RationalPoly& g);
RationalPoly monic_gcd(RationalPoly f, RationalPoly g);
mpq_class eval(const RationalPoly& f, const mpq_class& x);
mpq_class resultant(const RationalPoly& f, const RationalPoly& g);
/// Number of distinct real roots (Sturm).
std::int64_t real_root_count(const RationalPoly& f);
/// Characteristic polynomial of multiplication by g in Q[x]/(f), f monic.
RationalPoly char_poly(const RationalPoly& f, const RationalPoly& g);
}  // namespace poly

class NumberFieldSpec {
 public:
  /// Monic integer polynomial, ascending coefficients; must be squarefree.
  static NumberFieldSpec from_poly(std::vector<mpz_class> coeffs);
  /// Signature only: enough for the group computations.
  static NumberFieldSpec from_signature(std::int64_t s, std::int64_t t);

  bool has_poly() const { return !coeffs_.empty(); }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  RationalPoly rational_poly() const;
  std::int64_t degree() const { return s_ + 2 * t_; }
  std::int64_t s() const { return s_; }
  std::int64_t t() const { return t_; }
  /// Unit rank s + t - 1.
  std::int64_t unit_rank() const { return s_ + t_ - 1; }

 private:
  std::vector<mpz_class> coeffs_;
  std::int64_t s_ = 0, t_ = 0;
};

struct ComplexReal {
  Real re, im;
};

/// Rational interval [lo, hi] on which the polynomial changes sign.
struct RealRootCertificate {
  mpq_class lo, hi;
};

/// Disk |z - center| <= radius holding a root, disjoint from all other disks,
/// from its conjugate and from the real axis.
struct ComplexRootCertificate {
  mpq_class re, im, radius;
};

struct EmbeddingData {
  RationalPoly poly;
  std::vector<Real> real_roots;           // ascending
  std::vector<ComplexReal> complex_reps;  // Im > 0
  unsigned precision = 128;
  std::vector<RealRootCertificate> real_certificates;
  std::vector<ComplexRootCertificate> complex_certificates;
  /// max |f(root)| over all roots at working precision.
  Real max_residual;

  std::int64_t s() const { return static_cast<std::int64_t>(real_roots.size()); }
  std::int64_t t() const { return static_cast<std::int64_t>(complex_reps.size()); }
};

/// All roots of the defining polynomial at `precision` bits, certified.
EmbeddingData compute_embeddings(const NumberFieldSpec& spec, unsigned precision = 128);

/// sum c_i theta^i, reduced modulo the defining polynomial.
class FieldElement {
 public:
  FieldElement(const NumberFieldSpec& spec, std::vector<mpq_class> coeffs);
  static FieldElement rational(const NumberFieldSpec& spec, const mpq_class& q) { return {spec, {q}}; }

  const RationalPoly& coefficients() const { return c_; }
  const RationalPoly& modulus() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  FieldElement one_minus() const;

 private:
  RationalPoly f_;
  RationalPoly c_;
  friend mpq_class field_norm(const FieldElement& x);
  friend bool is_unit(const FieldElement& x);
};

/// N(x) = Res(f, x), exact.
mpq_class field_norm(const FieldElement& x);
/// Norm +-1 and integral characteristic polynomial.
bool is_unit(const FieldElement& x);

/// (R^x)^s x (C^x)^t: torsion [2]^s, real rank s + t, t weight-0 circles.
GroupDescriptor field_h11(const NumberFieldSpec& spec);
/// "(R^x)^s x (C^x)^t" in place notation.
std::string field_h11_text(const NumberFieldSpec& spec);

/// log|phi_i(x)| at the real places, then log|eta_j(x)| at the chosen complex ones.
std::vector<Real> regulator_map(const FieldElement& x, const EmbeddingData& emb);

/// x_1 + ... + x_s + 2 y_1 + ... + 2 y_t.
Real transfer(const std::vector<Real>& v, std::int64_t s, std::int64_t t);

/// |det| of the weighted log matrix with the last place deleted; 1 when r = 0.
Real classical_regulator(const std::vector<FieldElement>& units, const EmbeddingData& emb);

struct LatticeVolume {
  Real formula;
  Real gram;
  /// r = 0: both values are conventions (R = 1, empty Gram determinant = 1).
  bool by_convention = false;
};

LatticeVolume lattice_volume(const std::vector<FieldElement>& units, const EmbeddingData& emb);

/// Image of {a_1, ..., a_p} in the diagonal Deligne ring.
struct MilnorSymbol {
  std::int64_t p = 0;
  /// One class in D^{p,p}(pt) per real place.
  std::vector<DelignePointClass> real_places;
  /// p = 1 only: the values eta_j(a) in C^x.
  std::vector<ComplexReal> complex_values;
  /// p = 1 only: phi_i(a) at working precision (the classes above carry
  /// rational approximants with the exact sign).
  std::vector<Real> real_values;
};

MilnorSymbol milnor_symbol(const std::vector<FieldElement>& elems, const EmbeddingData& emb);

/// Exact sign of x at each real place.
std::vector<int> real_signs(const FieldElement& x, const EmbeddingData& emb);

}  // namespace rdc
