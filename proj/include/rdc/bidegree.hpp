#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "rdc/error.hpp"

namespace rdc {

/// Overflow-checked int64 arithmetic; exponents and degrees never wrap.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw malformed("integer overflow in degree arithmetic");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw malformed("integer overflow in degree arithmetic");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw malformed("integer overflow in degree arithmetic");
  return r;
}

/// Cohomological degree n and weight p of a class in H^{n,p}.
struct BiDegree {
  std::int64_t n = 0;
  std::int64_t p = 0;

  friend auto operator<=>(const BiDegree&, const BiDegree&) = default;

  BiDegree& operator+=(const BiDegree& o) {
    n = checked_add(n, o.n);
    p = checked_add(p, o.p);
    return *this;
  }
  friend BiDegree operator+(BiDegree a, const BiDegree& b) { return a += b; }
  friend BiDegree operator-(const BiDegree& a, const BiDegree& b) {
    return {checked_sub(a.n, b.n), checked_sub(a.p, b.p)};
  }

  std::string to_string() const {
    return "(" + std::to_string(n) + "," + std::to_string(p) + ")";
  }
};

inline constexpr bool is_even(std::int64_t v) { return v % 2 == 0; }

}  // namespace rdc
