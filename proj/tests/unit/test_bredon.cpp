#include <limits>
#include <random>

#include "doctest.h"
#include "oracles/borel_resolution.hpp"
#include "oracles/bredon_solver.hpp"
#include "rdc/bredon.hpp"

using namespace rdc;

namespace {

const oracle::ConsistencySolver& solver() {
  static const oracle::ConsistencySolver s = [] {
    oracle::ConsistencySolver tmp(14);
    tmp.solve();
    return tmp;
  }();
  return s;
}

BredonPointClass eps() { return BredonPointClass::eps_tau(1, 0); }
BredonPointClass tau() { return BredonPointClass::eps_tau(0, 1); }
BredonPointClass alpha() { return BredonPointClass::alpha(0); }
BredonPointClass theta() { return BredonPointClass::theta(0, 0); }

}  // namespace

TEST_CASE("point groups in sample bidegrees") {
  CHECK(bredon_point_group({0, 0}) == GroupDescriptor::integers());
  CHECK(bredon_point_group({0, -2}) == GroupDescriptor::integers());
  CHECK(bredon_point_group({-3, -6}) == GroupDescriptor::cyclic(2));
  CHECK(bredon_point_group({1, 2}).is_zero());
  CHECK(bredon_point_group({0, -1}).is_zero());
  CHECK(bredon_point_group({0, -3}) == GroupDescriptor::cyclic(2));
  CHECK(bredon_point_group({3, 5}) == GroupDescriptor::cyclic(2));
  CHECK(bredon_point_group({3, 4}).is_zero());
}

TEST_CASE("no classes when n * p < 0") {
  for (std::int64_t n = -20; n <= 20; ++n)
    for (std::int64_t p = -20; p <= 20; ++p)
      if (n * p < 0) CHECK(bredon_point_group({n, p}).is_zero());
}

TEST_CASE("defining relations") {
  CHECK(bredon_mul(alpha(), tau()) == BredonPointClass::integer(2));
  CHECK(bredon_mul(alpha(), theta()).is_zero());
  CHECK(bredon_mul(alpha(), eps()).is_zero());
  CHECK(bredon_mul(theta(), tau()).is_zero());
  CHECK(bredon_mul(theta(), eps()).is_zero());
  CHECK(bredon_mul(BredonPointClass::one(), theta()) == theta());
  CHECK(bredon_mul(eps(), eps().scaled(2)).is_zero());
}

TEST_CASE("derived products") {
  CHECK(bredon_mul(alpha(), alpha()) == BredonPointClass::alpha(1, 2));
  CHECK(bredon_mul(BredonPointClass::eps_tau(3, 0), BredonPointClass::theta(3, 1)).is_zero() == false);
  CHECK(bredon_mul(BredonPointClass::eps_tau(3, 0), BredonPointClass::theta(3, 1)) == BredonPointClass::theta(0, 1));
  // eps^3 . eps^-3 tau^-1 theta lands on tau^-1 theta; one more eps kills it.
  CHECK(bredon_mul(BredonPointClass::eps_tau(4, 0), BredonPointClass::theta(3, 1)).is_zero());
  CHECK(bredon_mul(BredonPointClass::eps_tau(0, 3), BredonPointClass::alpha(1)) == BredonPointClass::eps_tau(0, 1, 2));
}

TEST_CASE("bidegrees add and products land in the reported group") {
  const auto mons = oracle::window_monomials(4);
  for (const auto& x : mons)
    for (const auto& y : mons) {
      const BredonPointClass p = bredon_mul(x.as_class(), y.as_class());
      if (p.is_zero()) continue;
      const BiDegree d = x.bidegree() + y.bidegree();
      REQUIRE(p.bidegree().has_value());
      CHECK(*p.bidegree() == d);
      CHECK_FALSE(bredon_point_group(d).is_zero());
    }
}

TEST_CASE("consistency solver agrees with bredon_mul on the window") {
  const auto mons = oracle::window_monomials(6);
  std::size_t unresolved = 0, mismatched = 0;
  for (const auto& x : mons)
    for (const auto& y : mons) {
      const auto expected = solver().product(x, y);
      if (!expected) {
        ++unresolved;
        continue;
      }
      if (*expected != bredon_mul(x.as_class(), y.as_class())) ++mismatched;
    }
  CHECK(unresolved == 0);
  CHECK(mismatched == 0);
}

TEST_CASE("associativity and commutativity on random triples") {
  const auto mons = oracle::window_monomials(6);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
  for (int i = 0; i < 4000; ++i) {
    const auto x = mons[pick(rng)].as_class(), y = mons[pick(rng)].as_class(), z = mons[pick(rng)].as_class();
    CHECK(bredon_mul(bredon_mul(x, y), z) == bredon_mul(x, bredon_mul(y, z)));
    CHECK(bredon_mul(x, y) == bredon_mul(y, x));
  }
}

TEST_CASE("mixed sums multiply term by term") {
  const BredonPointClass s = alpha() + tau() + theta();
  const BredonPointClass sq = bredon_mul(s, s);
  BredonPointClass expected = BredonPointClass::alpha(1, 2);
  expected += BredonPointClass::integer(4);
  expected += BredonPointClass::eps_tau(0, 2);
  CHECK(sq == expected);
}

TEST_CASE("coefficients with eps are reduced mod 2") {
  const auto c = BredonPointClass::eps_tau(2, 1, 5);
  CHECK(c.pos_coefficient(2, 1) == 1);
  CHECK(BredonPointClass::eps_tau(1, 0, 4).is_zero());
  CHECK((BredonPointClass::theta(1, 1) + BredonPointClass::theta(1, 1)).is_zero());
  CHECK_THROWS(BredonPointClass::eps_tau(-1, 0));
}

TEST_CASE("Borel groups against the periodic resolution") {
  CHECK(borel_point_group({0, 4}) == GroupDescriptor::integers());
  CHECK(borel_point_group({-1, 3}).is_zero());
  CHECK(borel_point_group({2, 6}) == GroupDescriptor::cyclic(2));
  for (std::int64_t n = -5; n <= 20; ++n)
    for (std::int64_t p = -20; p <= 20; ++p) CHECK(borel_point_group({n, p}) == oracle::borel_by_resolution(n, p));
}

TEST_CASE("Bredon and Borel agree for 0 <= n <= p") {
  for (std::int64_t p = 0; p <= 12; ++p)
    for (std::int64_t n = 0; n <= p; ++n) CHECK(bredon_point_group({n, p}) == borel_point_group({n, p}));
}

TEST_CASE("extreme exponents are checked, not wrapped") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
  CHECK_THROWS(BredonPointClass::eps_tau(0, big + 1).bidegree());
  CHECK(bredon_point_group({std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()})
            .is_zero());
}

TEST_CASE("solver derives the alpha-alpha and eps-theta products on its own") {
  using oracle::Monomial;
  using oracle::Sector;
  CHECK(solver().product({Sector::kAlpha, 0, 0}, {Sector::kAlpha, 0, 0}) == BredonPointClass::alpha(1, 2));
  CHECK(solver().product({Sector::kAlpha, 0, 2}, {Sector::kAlpha, 0, 3}) == BredonPointClass::alpha(6, 2));
  CHECK(solver().product({Sector::kPos, 3, 0}, {Sector::kTheta, 3, 1}) == BredonPointClass::theta(0, 1));
  CHECK(solver().product({Sector::kPos, 0, 3}, {Sector::kAlpha, 0, 1}) == BredonPointClass::eps_tau(0, 1, 2));
  CHECK(solver().product({Sector::kAlpha, 0, 1}, {Sector::kTheta, 2, 2}) == BredonPointClass{});
}
