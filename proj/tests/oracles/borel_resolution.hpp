#pragma once

// H^n(C_2; Z(p)) from the periodic resolution of Z over Z[C_2]: the cochain
// complex Z -(1-s)-> Z -(1+s)-> Z -(1-s)-> ... with s = (-1)^p.

#include <cstdint>
#include <cstdlib>

#include "rdc/group.hpp"

namespace rdc::oracle {

inline GroupDescriptor borel_by_resolution(std::int64_t n, std::int64_t p) {
  if (n < 0) return GroupDescriptor::zero();
  const long s = (p % 2 == 0) ? 1 : -1;
  auto d = [&](std::int64_t k) -> long { return (k % 2 == 0) ? 1 - s : 1 + s; };  // d^k : C^k -> C^{k+1}
  // H^n = ker d^n / im d^{n-1}, all groups Z and maps multiplication by an integer.
  if (d(n) != 0) return GroupDescriptor::zero();
  if (n == 0) return GroupDescriptor::integers(1);
  return GroupDescriptor::cyclic(std::labs(d(n - 1)));
}

}  // namespace rdc::oracle
