#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rdc/bidegree.hpp"
#include "rdc/bredon.hpp"
#include "rdc/group.hpp"

namespace rdc {

struct ChowBasisElement {
  std::string name;
  std::int64_t codim = 0;
};

/// Sparse integer combination of basis elements, sorted by index, no zeros.
using ChowCombination = std::vector<std::pair<std::size_t, mpz_class>>;

/// A free graded commutative ring with a distinguished unit, given by its
/// basis and structure constants. Construction validates grading,
/// commutativity, the unit and associativity; instances are immutable.
class ChowPresentation {
 public:
  using ProductTable = std::map<std::pair<std::size_t, std::size_t>, ChowCombination>;

  /// Missing products default to their transpose, or to zero. The unit is
  /// `unit_name` when given, otherwise "1", otherwise the only codim-0 element.
  static ChowPresentation create(std::vector<ChowBasisElement> basis, const ProductTable& products,
                                 const std::string& unit_name = "");

  /// CH(P^p) = Z[h]/(h^{p+1}) with basis 1, h, h^2, ..., h^p.
  static ChowPresentation projective_space(std::int64_t p, const std::string& var = "h");
  /// CH(X x Y) = CH(X) (x) CH(Y); basis names "a*b" with the unit elided.
  static ChowPresentation product(const ChowPresentation& x, const ChowPresentation& y);
  /// P^{p_1} x ... x P^{p_k} with variables x, y, z, w, then t1, t2, ...
  static ChowPresentation multi_projective(const std::vector<std::int64_t>& dims);

  std::size_t size() const { return basis_.size(); }
  const std::vector<ChowBasisElement>& basis() const { return basis_; }
  std::size_t unit() const { return unit_; }
  std::size_t index_of(const std::string& name) const;
  const ChowCombination& mul(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }
  std::int64_t rank_in_codim(std::int64_t codim) const;

 private:
  ChowPresentation() = default;
  void validate();

  std::vector<ChowBasisElement> basis_;
  std::vector<ChowCombination> table_;
  std::size_t unit_ = 0;
};

/// Element of CH (x) B: basis index -> point-ring coefficient.
using CellularClass = std::map<std::size_t, BredonPointClass>;

GroupDescriptor cellular_bredon_group(const ChowPresentation& chow, BiDegree d);

CellularClass cellular_bredon_mul(const ChowPresentation& chow, const CellularClass& x, const CellularClass& y);

/// D^{2p,p} = CH^p (x) Z.
GroupDescriptor cellular_deligne_diagonal(const ChowPresentation& chow, std::int64_t p);

}  // namespace rdc
