#include "rdc/curves.hpp"

#include <vector>

#include "rdc/error.hpp"

namespace rdc {

namespace {

// Descriptors list factors one by one, so keep them a sane size.
constexpr std::int64_t kMaxCurveData = 1000000;

}  // namespace

std::string RealCurve::validate(bool strict) const {
  if (genus < 0) throw malformed("genus must be nonnegative");
  if (components < 0) throw malformed("number of real components must be nonnegative");
  if (genus > kMaxCurveData || components > kMaxCurveData)
    throw malformed("genus and component count are limited to " + std::to_string(kMaxCurveData));
  if (components > genus + 1) {
    const std::string msg = "c = " + std::to_string(components) + " exceeds the Harnack bound g + 1 = " +
                            std::to_string(genus + 1);
    if (strict) throw malformed(msg);
    return msg;
  }
  return {};
}

namespace {

GroupDescriptor two_torsion(std::int64_t count) {
  return GroupDescriptor::from_parts(0, std::vector<mpz_class>(static_cast<std::size_t>(count), 2), 0, {});
}

}  // namespace

GroupDescriptor curve_h21(const RealCurve& x) {
  x.validate();
  return GroupDescriptor::integers(1) + two_torsion(x.components > 0 ? x.components - 1 : 0);
}

GroupDescriptor curve_picard(const RealCurve& x) {
  x.validate();
  return curve_h21(x) +
         GroupDescriptor::from_parts(0, {}, 0, std::vector<std::int64_t>(static_cast<std::size_t>(x.genus), 0));
}

GroupDescriptor curve_brauer_signature(const RealCurve& x) {
  x.validate();
  return two_torsion(x.components);
}

}  // namespace rdc
