#pragma once

#include <cstdint>
#include <string>

#include "rdc/group.hpp"

namespace rdc {

/// A smooth projective real curve of genus g whose real locus has c
/// connected components.
struct RealCurve {
  std::int64_t genus = 0;
  std::int64_t components = 0;

  /// Rejects negative data; with `strict` also c > g + 1 (Harnack).
  /// Returns a warning message (empty when none) in the non-strict case.
  std::string validate(bool strict = false) const;
};

/// H^{2,1} = Z x (Z/2)^{c-1} (just Z when c = 0).
GroupDescriptor curve_h21(const RealCurve& x);
/// Pic(X) = Z x (R/Z)^g x (Z/2)^{c-1}; circles carry weight tag 0.
GroupDescriptor curve_picard(const RealCurve& x);
/// Br(X) = (Z/2)^c.
GroupDescriptor curve_brauer_signature(const RealCurve& x);

}  // namespace rdc
