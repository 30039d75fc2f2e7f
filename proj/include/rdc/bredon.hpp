#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "rdc/bidegree.hpp"
#include "rdc/group.hpp"

namespace rdc {

/// An element of the Bredon cohomology ring of a point,
///
///   Z[eps, tau] . 1  +  Z[tau^-1] . alpha  +  F_2[eps^-1, tau^-1] . theta,
///
/// in canonical sector form. Monomials and their bidegrees:
///   eps^a tau^b             (a, a + 2b)
///   tau^-b alpha            (0, -2 - 2b)
///   eps^-a tau^-b theta     (-a, -a - 2b - 3)
/// Coefficients of eps^a tau^b with a >= 1 are reduced mod 2 on insertion
/// (2 eps = 0), theta-sector coefficients are bits; no zero is stored.
class BredonPointClass {
 public:
  using Exponents = std::pair<std::int64_t, std::int64_t>;  // (a, b)
  using PosTerms = std::map<Exponents, mpz_class>;
  using AlphaTerms = std::map<std::int64_t, mpz_class>;
  using ThetaTerms = std::set<Exponents>;

  BredonPointClass() = default;

  static BredonPointClass integer(const mpz_class& k);
  static BredonPointClass one() { return integer(1); }
  static BredonPointClass eps_tau(std::int64_t a, std::int64_t b, const mpz_class& coeff = 1);
  static BredonPointClass alpha(std::int64_t b, const mpz_class& coeff = 1);
  static BredonPointClass theta(std::int64_t a, std::int64_t b);

  void add_pos(std::int64_t a, std::int64_t b, const mpz_class& coeff);
  void add_alpha(std::int64_t b, const mpz_class& coeff);
  void add_theta(std::int64_t a, std::int64_t b);

  const PosTerms& pos_terms() const { return pos_; }
  const AlphaTerms& alpha_terms() const { return alpha_; }
  const ThetaTerms& theta_terms() const { return theta_; }

  bool is_zero() const { return pos_.empty() && alpha_.empty() && theta_.empty(); }
  std::size_t term_count() const { return pos_.size() + alpha_.size() + theta_.size(); }

  /// Common bidegree of all terms; nullopt for zero or mixed-degree sums.
  std::optional<BiDegree> bidegree() const;
  bool is_homogeneous() const { return is_zero() || bidegree().has_value(); }

  /// Coefficient of eps^a tau^b (0 when absent).
  mpz_class pos_coefficient(std::int64_t a, std::int64_t b) const;

  BredonPointClass& operator+=(const BredonPointClass& other);
  friend BredonPointClass operator+(BredonPointClass a, const BredonPointClass& b) { return a += b; }
  BredonPointClass operator-() const;
  BredonPointClass scaled(const mpz_class& k) const;

  friend bool operator==(const BredonPointClass&, const BredonPointClass&) = default;

 private:
  PosTerms pos_;
  AlphaTerms alpha_;
  ThetaTerms theta_;
};

BiDegree pos_bidegree(std::int64_t a, std::int64_t b);
BiDegree alpha_bidegree(std::int64_t b);
BiDegree theta_bidegree(std::int64_t a, std::int64_t b);

/// Product in the point ring, extended bilinearly over terms.
BredonPointClass bredon_mul(const BredonPointClass& x, const BredonPointClass& y);

/// Additive group B^{n,p} of the point.
GroupDescriptor bredon_point_group(BiDegree d);

/// Borel cohomology H^n(C_2; Z(p)) of the point.
GroupDescriptor borel_point_group(BiDegree d);

}  // namespace rdc
