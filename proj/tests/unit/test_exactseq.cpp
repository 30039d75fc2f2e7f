#include <random>

#include "doctest.h"
#include "oracles/snf_divisors.hpp"
#include "rdc/error.hpp"
#include "rdc/exactseq.hpp"

using namespace rdc;

namespace {

bool is_unimodular(const IntegerMatrix& m) { return abs(m.determinant()) == 1; }

void check_smith(const IntegerMatrix& a) {
  const SmithForm f = smith_normal_form(a);
  CHECK(f.U * a * f.V == f.S);
  CHECK(is_unimodular(f.U));
  CHECK(is_unimodular(f.V));
  CHECK(f.U * f.U_inv == IntegerMatrix::identity(a.rows()));
  CHECK(f.V * f.V_inv == IntegerMatrix::identity(a.cols()));
  for (std::size_t i = 0; i < f.S.rows(); ++i)
    for (std::size_t j = 0; j < f.S.cols(); ++j)
      if (i != j) CHECK(f.S(i, j) == 0);
  for (std::size_t i = 0; i < f.rank; ++i) {
    CHECK(f.S(i, i) > 0);
    if (i + 1 < f.rank) CHECK(mpz_divisible_p(f.S(i + 1, i + 1).get_mpz_t(), f.S(i, i).get_mpz_t()));
  }
  for (std::size_t i = f.rank; i < std::min(a.rows(), a.cols()); ++i) CHECK(f.S(i, i) == 0);
}

Homomorphism fg_map(IntegerMatrix m) { return {std::move(m), std::nullopt, std::nullopt}; }

std::vector<SequenceNode> integer_sequence(long mult, const GroupDescriptor& end) {
  const auto z = GroupDescriptor::zero(), Z = GroupDescriptor::integers();
  IntegerMatrix proj(end.fg_generator_count(), 1);
  if (proj.rows() > 0) proj(0, 0) = 1;
  return {{z, fg_map(IntegerMatrix(1, 0))},
          {Z, fg_map(IntegerMatrix{{mult}})},
          {Z, fg_map(proj)},
          {end, fg_map(IntegerMatrix(0, end.fg_generator_count()))},
          {z, std::nullopt}};
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  const SmithForm id = smith_normal_form(IntegerMatrix::identity(3));
  CHECK(id.S == IntegerMatrix::identity(3));
  CHECK(id.U == IntegerMatrix::identity(3));
  CHECK(id.V == IntegerMatrix::identity(3));

  const IntegerMatrix a{{2, 4}, {6, 8}};
  const SmithForm f = smith_normal_form(a);
  CHECK(f.S == IntegerMatrix{{2, 0}, {0, 4}});
  check_smith(a);

  const SmithForm z = smith_normal_form(IntegerMatrix(2, 2));
  CHECK(z.S.is_zero());
  CHECK(z.rank == 0);

  check_smith(IntegerMatrix(0, 3));
  check_smith(IntegerMatrix{{0, 0, 5}});
}

TEST_CASE("Smith normal form on random matrices against determinantal divisors") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> entry(-20, 20);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int t = 0; t < 150; ++t) {
    const int r = dim(rng), c = dim(rng);
    std::vector<std::vector<long>> raw(r, std::vector<long>(c));
    IntegerMatrix a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        raw[i][j] = (t % 5 == 0 && entry(rng) < 0) ? 0 : entry(rng);
        a(i, j) = raw[i][j];
      }
    if (t % 7 == 0 && r > 1)
      for (int j = 0; j < c; ++j) {
        raw[1][j] = 3 * raw[0][j];
        a(1, j) = raw[1][j];
      }
    check_smith(a);
    CHECK(smith_normal_form(a).invariant_factors() == oracle::invariant_factors_by_minors(raw));
    // S does not change under row and column permutations.
    IntegerMatrix p = a;
    for (int j = 0; j < c; ++j) std::swap(p(0, j), p(r - 1, j));
    for (int i = 0; i < r; ++i) std::swap(p(i, 0), p(i, c - 1));
    CHECK(smith_normal_form(p).S == smith_normal_form(a).S);
  }
}

TEST_CASE("integer kernel and solving") {
  const IntegerMatrix a{{2, 4, 6}};
  const IntegerMatrix k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());
  CHECK(solve_integer(a, {mpz_class(4)}).has_value());
  CHECK_FALSE(solve_integer(a, {mpz_class(3)}).has_value());
  const auto x = solve_integer(IntegerMatrix{{3, 5}}, {mpz_class(1)});
  REQUIRE(x);
  CHECK(3 * (*x)[0] + 5 * (*x)[1] == 1);
}

TEST_CASE("rational helpers") {
  RationalMatrix m(IntegerMatrix{{1, 2}, {2, 4}});
  CHECK(m.rank() == 1);
  const RationalMatrix n = m.null_space();
  CHECK(n.cols() == 1);
  CHECK((m * n)(0, 0) == 0);
  CHECK(m.left_null_space().rows() == 1);
  CHECK(m.solve({1, 2}).has_value());
  CHECK_FALSE(m.solve({1, 3}).has_value());
}

TEST_CASE("verify_exact on integer sequences") {
  CHECK(verify_exact(integer_sequence(1, GroupDescriptor::zero())).exact());
  CHECK(verify_exact(integer_sequence(2, GroupDescriptor::cyclic(2))).exact());

  auto bad = integer_sequence(2, GroupDescriptor::cyclic(3));
  bad[2].map_to_next = fg_map(IntegerMatrix{{0}});
  const ExactnessReport r = verify_exact(bad);
  CHECK_FALSE(r.exact());
  REQUIRE(r.nodes.size() == 3);
  CHECK(r.nodes[0].status == NodeStatus::kExact);
  CHECK(r.nodes[1].status == NodeStatus::kInexact);
  CHECK(*r.nodes[1].homology == GroupDescriptor::cyclic(2));
  CHECK(r.nodes[2].status == NodeStatus::kInexact);
  CHECK(*r.nodes[2].homology == GroupDescriptor::cyclic(3));

  // Z -2-> Z -1-> Z/3 is not even a complex.
  const ExactnessReport nc = verify_exact(integer_sequence(2, GroupDescriptor::cyclic(3)));
  CHECK(nc.nodes[1].status == NodeStatus::kNotComplex);
}

TEST_CASE("verify_exact rejects malformed input") {
  auto seq = integer_sequence(1, GroupDescriptor::zero());
  seq[1].map_to_next = fg_map(IntegerMatrix{{1, 0}});
  CHECK_THROWS_AS(verify_exact(seq), Error);
  auto unknown = integer_sequence(1, GroupDescriptor::zero());
  unknown[2].group.reset();
  CHECK_THROWS_AS(verify_exact(unknown), Error);
  // Z/2 -> Z with 1 -> 1 is not a homomorphism.
  std::vector<SequenceNode> ill{{GroupDescriptor::cyclic(2), fg_map(IntegerMatrix{{1}})},
                                {GroupDescriptor::integers(), fg_map(IntegerMatrix(0, 1))},
                                {GroupDescriptor::zero(), std::nullopt}};
  CHECK_THROWS_AS(verify_exact(ill), Error);
}

TEST_CASE("(e_k) and (o_k) are exact") {
  for (std::int64_t k = 1; k <= 6; ++k) {
    const auto e = verify_exact(e_sequence(k));
    CHECK(e.exact());
    const auto o = verify_exact(o_sequence(k));
    CHECK(o.exact());
  }
  // Doubling the lattice inclusion leaves Z/2 at R.
  auto e = e_sequence(1);
  e[1].map_to_next->cont = IntegerMatrix{{2}};
  const auto r = verify_exact(e);
  CHECK(r.nodes[1].status == NodeStatus::kInexact);
  CHECK(*r.nodes[1].homology == GroupDescriptor::cyclic(2));
}

TEST_CASE("real homology") {
  // 0 -> R -0-> R -> 0: homology R at both interior nodes.
  const auto z = GroupDescriptor::zero(), r = GroupDescriptor::reals(1);
  std::vector<SequenceNode> seq{{z, Homomorphism{IntegerMatrix(0, 0), IntegerMatrix(1, 0), std::nullopt}},
                                {r, Homomorphism{IntegerMatrix(0, 0), IntegerMatrix(1, 1), std::nullopt}},
                                {r, Homomorphism{IntegerMatrix(0, 0), IntegerMatrix(0, 1), std::nullopt}},
                                {z, std::nullopt}};
  const auto rep = verify_exact(seq);
  CHECK(*rep.nodes[0].homology == r);
  CHECK(*rep.nodes[1].homology == r);

  // 0 -> Z -> R -> 0 leaves a circle.
  std::vector<SequenceNode> lat{{z, Homomorphism{IntegerMatrix(1, 0), IntegerMatrix(0, 0), std::nullopt}},
                                {GroupDescriptor::integers(), Homomorphism{IntegerMatrix(0, 1), IntegerMatrix{{1}}, std::nullopt}},
                                {r, Homomorphism{IntegerMatrix(0, 0), IntegerMatrix(0, 1), std::nullopt}},
                                {z, std::nullopt}};
  const auto rl = verify_exact(lat);
  CHECK(rl.nodes[0].status == NodeStatus::kExact);
  CHECK(*rl.nodes[1].homology == GroupDescriptor::circle(0));

  // rank-only data: R^2 -rank 1-> R^2 -rank 1-> R^2
  const auto r2 = GroupDescriptor::reals(2);
  std::vector<SequenceNode> ro{{r2, Homomorphism{IntegerMatrix(0, 0), std::nullopt, 1}},
                               {r2, Homomorphism{IntegerMatrix(0, 0), std::nullopt, 1}},
                               {r2, Homomorphism{IntegerMatrix(0, 0), std::nullopt, 0}},
                               {z, std::nullopt}};
  const auto rr = verify_exact(ro);
  CHECK(rr.nodes[0].status == NodeStatus::kExact);
  CHECK(rr.nodes[1].status == NodeStatus::kInexact);
  CHECK(*rr.nodes[1].homology == GroupDescriptor::reals(1));
}

TEST_CASE("solve_short_exact") {
  ExtensionHints lattice;
  lattice.lattice_quotient = true;
  lattice.weight = 4;
  const auto e = solve_short_exact(GroupDescriptor::integers(), GroupDescriptor::reals(1), lattice);
  REQUIRE_FALSE(e.ambiguous());
  CHECK(*e.group == GroupDescriptor::circle(4));

  ExtensionHints split;
  split.split = true;
  const auto o = solve_short_exact(GroupDescriptor::reals(1), GroupDescriptor::cyclic(2), split);
  REQUIRE_FALSE(o.ambiguous());
  CHECK(*o.group == GroupDescriptor::real_units());
  // R is divisible, so the extension splits without the hint as well.
  CHECK(*solve_short_exact(GroupDescriptor::reals(1), GroupDescriptor::cyclic(2)).group == GroupDescriptor::real_units());

  const auto amb = solve_short_exact(GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2));
  CHECK(amb.ambiguous());
  CHECK(amb.candidates == std::vector<GroupDescriptor>{GroupDescriptor::cyclic(4),
                                                       GroupDescriptor::cyclic(2) + GroupDescriptor::cyclic(2)});

  CHECK(*solve_short_exact(GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(3)).group == GroupDescriptor::cyclic(6));
  CHECK(*solve_short_exact(GroupDescriptor::cyclic(5), GroupDescriptor::integers(2)).group ==
        GroupDescriptor::cyclic(5) + GroupDescriptor::integers(2));
  CHECK(solve_short_exact(GroupDescriptor::integers(), GroupDescriptor::cyclic(2)).ambiguous());

  // Z/4 by Z/2: Z/8, Z/4 + Z/2
  const auto c42 = solve_short_exact(GroupDescriptor::cyclic(4), GroupDescriptor::cyclic(2));
  CHECK(c42.candidates.size() == 2);
  // (Z/2)^2 by Z/2: Z/4 + Z/2, (Z/2)^3
  const auto c222 = solve_short_exact(GroupDescriptor::cyclic(2) + GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2));
  CHECK(c222.candidates.size() == 2);
}

TEST_CASE("forced answers assemble into exact sequences") {
  const std::vector<std::pair<GroupDescriptor, GroupDescriptor>> cases{
      {GroupDescriptor::reals(1), GroupDescriptor::cyclic(2)},
      {GroupDescriptor::cyclic(3), GroupDescriptor::integers(2)},
      {GroupDescriptor::circle(2) + GroupDescriptor::cyclic(4), GroupDescriptor::integers(1)},
      {GroupDescriptor::cyclic(2), GroupDescriptor::cyclic(2) + GroupDescriptor::reals(1)},
      {GroupDescriptor::reals(2) + GroupDescriptor::circle(4), GroupDescriptor::cyclic(8) + GroupDescriptor::circle(2)},
  };
  ExtensionHints split;
  split.split = true;
  for (const auto& [a, c] : cases) {
    const auto s = solve_short_exact(a, c, split);
    REQUIRE(s.group);
    const auto seq = split_sequence(a, c);
    CHECK(*seq[2].group == *s.group);
    CHECK(verify_exact(seq).exact());
  }
}
