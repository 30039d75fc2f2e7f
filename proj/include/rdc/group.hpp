#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace rdc {

/// Isomorphism type of Z^f + (finite torsion) + R^r + prod R/Z(w).
///
/// Torsion is kept as a sorted multiset of prime powers, so Z/6 and
/// Z/2 + Z/3 compare equal. Circle factors carry their weight tag w
/// (R/Z(w) with Z(w) = (2 pi i)^w Z); weight 0 stands for a plain R/Z.
class GroupDescriptor {
 public:
  GroupDescriptor() = default;

  static GroupDescriptor zero() { return {}; }
  static GroupDescriptor integers(std::int64_t rank = 1);
  /// Z/order, split into prime powers. Order 0 gives Z, order 1 the zero group.
  static GroupDescriptor cyclic(const mpz_class& order);
  static GroupDescriptor reals(std::int64_t rank = 1);
  static GroupDescriptor circle(std::int64_t weight);
  /// R^x, abstractly Z/2 + R.
  static GroupDescriptor real_units() { return cyclic(2) + reals(1); }

  static GroupDescriptor from_parts(std::int64_t free_rank, const std::vector<mpz_class>& cyclic_orders,
                                    std::int64_t real_rank, std::vector<std::int64_t> circle_weights);

  std::int64_t free_rank() const { return free_rank_; }
  const std::vector<mpz_class>& torsion() const { return torsion_; }
  std::int64_t real_rank() const { return real_rank_; }
  const std::vector<std::int64_t>& circle_factors() const { return circles_; }

  bool is_zero() const {
    return free_rank_ == 0 && torsion_.empty() && real_rank_ == 0 && circles_.empty();
  }
  bool is_finite() const { return free_rank_ == 0 && real_rank_ == 0 && circles_.empty(); }
  bool is_free() const { return torsion_.empty() && real_rank_ == 0 && circles_.empty(); }
  /// Number of generators of the finitely generated part (free first, then torsion).
  std::int64_t fg_generator_count() const {
    return free_rank_ + static_cast<std::int64_t>(torsion_.size());
  }
  /// Order of the finite part; 1 for torsion-free groups.
  mpz_class torsion_order() const;

  GroupDescriptor& operator+=(const GroupDescriptor& other);
  friend GroupDescriptor operator+(GroupDescriptor a, const GroupDescriptor& b) { return a += b; }
  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;

  /// "Z x R/Z(8) x (Z/2)^2"; the zero group renders as "0".
  std::string to_text() const;

 private:
  std::int64_t free_rank_ = 0;
  std::vector<mpz_class> torsion_;
  std::int64_t real_rank_ = 0;
  std::vector<std::int64_t> circles_;
};

/// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<mpz_class, unsigned>> factorize(mpz_class n);

}  // namespace rdc
