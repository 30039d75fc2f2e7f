#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rdc/bidegree.hpp"
#include "rdc/deligne.hpp"
#include "rdc/group.hpp"

namespace rdc {

/// D(pt)[T_1, ..., T_k] / (T_i^{p_i + 1}), the Deligne ring of
/// P^{p_1} x ... x P^{p_k}; each T_i has bidegree (2,1).
class BundleRing {
 public:
  struct Factor {
    std::string name;
    std::int64_t dim;
  };

  static BundleRing point() { return BundleRing{}; }
  /// This ring with one more projective factor P^dim.
  BundleRing over(std::int64_t dim, std::string name = "") const;
  static BundleRing projective(const std::vector<std::int64_t>& dims);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  /// The ring this one was built over (drops the last factor).
  BundleRing base() const;

 private:
  std::vector<Factor> factors_;
};

GroupDescriptor bundle_group(const BundleRing& ring, BiDegree d);

using Exponents = std::vector<std::int64_t>;

/// Sum of a_e (x) T^e, no zero coefficients stored.
struct BundleClass {
  std::map<Exponents, DelignePointClass> terms;

  static BundleClass monomial(const DelignePointClass& coeff, Exponents e);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const BundleClass&, const BundleClass&) = default;
};

/// Common bidegree of all terms; nullopt for zero or inhomogeneous classes.
std::optional<BiDegree> bundle_bidegree(const BundleClass& x);

struct BundleUndetermined {
  struct Locus {
    Exponents left, right;
    Undetermined product;
  };
  std::vector<Locus> loci;
};

using BundleProduct = std::variant<BundleClass, BundleUndetermined>;

/// Truncated polynomial product with point coefficients multiplied by
/// deligne_mul. One undetermined coefficient product makes the whole
/// product undetermined; every such locus is reported.
BundleProduct bundle_mul(const BundleRing& ring, const BundleClass& x, const BundleClass& y);

enum class PppBranch { kBredonRange, kXiPower };  // k <= r, k >= r

struct PppResult {
  BundleClass value;
  PppBranch branch;
};

/// a cup xi^k for a of weight -r <= 0 over P^p (single-factor ring).
/// The default picks k <= r when legal; the explicit form forces a branch.
PppResult ppp_cup(const BredonPointClass& a, std::int64_t k, const BundleRing& ring);
PppResult ppp_cup(const BredonPointClass& a, std::int64_t k, const BundleRing& ring, PppBranch branch);

/// The product D^{i,-p} x D^{j,p-r} -> D^{i+j,-r} realised as the top
/// T^p coefficient of (a cup xi^p) cup b over P^p.
DeligneProduct mixed_product(const DelignePointClass& a, const DelignePointClass& b);

std::string branch_name(PppBranch b);

}  // namespace rdc
