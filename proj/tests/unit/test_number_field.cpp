#include <random>

#include "doctest.h"
#include "oracles/bisection.hpp"
#include "rdc/error.hpp"
#include "rdc/number_field.hpp"

using namespace rdc;

namespace {

NumberFieldSpec field(std::vector<long> coeffs) {
  std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
  return NumberFieldSpec::from_poly(c);
}

FieldElement elem(const NumberFieldSpec& f, std::vector<mpq_class> c) { return FieldElement(f, std::move(c)); }

double to_d(const Real& x) { return x.convert_to<double>(); }

Real tolerance(unsigned bits) {
  Real t = make_real(1L, bits + 32);
  mpfr_div_2ui(t.backend().data(), t.backend().data(), bits / 2, MPFR_RNDN);
  return t;
}

Real abs_r(const Real& x) { return x < 0 ? Real(-x) : x; }

bool close(const Real& x, const mpq_class& oracle, unsigned bits) {
  return abs_r(x - make_real(oracle, precision_bits(x))) < tolerance(bits);
}

}  // namespace

TEST_CASE("polynomial helpers") {
  CHECK(poly::real_root_count({-2, 0, 1}) == 2);
  CHECK(poly::real_root_count({1, 0, 1}) == 0);
  CHECK(poly::real_root_count({-1, -1, 0, 1}) == 1);
  CHECK(poly::real_root_count({1, -3, 0, 1}) == 3);
  CHECK(poly::real_root_count({1, 1, 1, 1, 1}) == 0);
  CHECK(poly::real_root_count({-2, 0, 0, 0, 1}) == 2);
  // Res(x^2 - 2, 1 + x) = (1 + sqrt2)(1 - sqrt2)
  CHECK(poly::resultant({-2, 0, 1}, {1, 1}) == -1);
  CHECK(poly::resultant({-2, 0, 1}, {3}) == 9);
  CHECK(poly::resultant({-1, 0, 1}, {-1, 1}) == 0);
  const RationalPoly cp = poly::char_poly({-2, 0, 1}, {1, 1});
  CHECK(cp == RationalPoly{-1, -2, 1});
  CHECK(poly::monic_gcd({-1, 0, 1}, {1, 1}) == RationalPoly{1, 1});
}

TEST_CASE("field specs validate") {
  CHECK_THROWS_AS(field({2, 2}), Error);        // not monic
  CHECK_THROWS_AS(field({1, -2, 1}), Error);    // (x-1)^2
  CHECK_THROWS_AS(field({5}), Error);           // constant
  CHECK_THROWS_AS(NumberFieldSpec::from_signature(0, 0), Error);
  CHECK_THROWS_AS(NumberFieldSpec::from_signature(-1, 2), Error);
  const auto q2 = field({-2, 0, 1});
  CHECK(q2.s() == 2);
  CHECK(q2.t() == 0);
  CHECK(q2.unit_rank() == 1);
  const auto cubic = field({-1, -1, 0, 1});
  CHECK(cubic.s() == 1);
  CHECK(cubic.t() == 1);
}

TEST_CASE("embeddings agree with the bisection oracle") {
  const auto q2 = compute_embeddings(field({-2, 0, 1}));
  REQUIRE(q2.s() == 2);
  REQUIRE(q2.t() == 0);
  const mpq_class sqrt2 = oracle::bisect_root({-2, 0, 1}, 1, 2, 200);
  CHECK(close(q2.real_roots[1], sqrt2, 128));
  CHECK(close(q2.real_roots[0], -sqrt2, 128));
  CHECK(to_decimal(q2.real_roots[1], 11) == "1.4142135624");

  const auto gauss = compute_embeddings(field({1, 0, 1}));
  REQUIRE(gauss.t() == 1);
  CHECK(gauss.s() == 0);
  CHECK(abs_r(gauss.complex_reps[0].re) < tolerance(128));
  CHECK(close(gauss.complex_reps[0].im, 1, 128));

  const auto cubic = compute_embeddings(field({-1, -1, 0, 1}));
  REQUIRE(cubic.s() == 1);
  REQUIRE(cubic.t() == 1);
  const mpq_class plastic = oracle::bisect_root({-1, -1, 0, 1}, 1, 2, 200);
  CHECK(close(cubic.real_roots[0], plastic, 128));
  CHECK(to_decimal(cubic.real_roots[0], 11) == "1.3247179572");
  CHECK(cubic.complex_reps[0].im > 0);

  const auto real3 = compute_embeddings(field({1, -3, 0, 1}));
  REQUIRE(real3.s() == 3);
  CHECK(close(real3.real_roots[0], oracle::bisect_root({1, -3, 0, 1}, -2, -1, 200), 128));
  CHECK(close(real3.real_roots[1], oracle::bisect_root({1, -3, 0, 1}, 0, 1, 200), 128));
  CHECK(close(real3.real_roots[2], oracle::bisect_root({1, -3, 0, 1}, 1, 2, 200), 128));
}

TEST_CASE("embedding certificates bracket the roots") {
  for (const auto& coeffs : std::vector<std::vector<long>>{
           {-2, 0, 1}, {1, 0, 1}, {-1, -1, 0, 1}, {1, 1, 1, 1, 1}, {-2, 0, 0, 0, 1}, {1, -3, 0, 1},
           {0, 1}, {-7, 3, 0, 0, 0, 1}, {1, 0, -10, 0, 1}}) {
    const auto spec = field(coeffs);
    for (unsigned bits : {64u, 128u, 256u}) {
      const auto emb = compute_embeddings(spec, bits);
      CHECK(emb.s() == spec.s());
      CHECK(emb.t() == spec.t());
      CHECK(emb.max_residual < tolerance(bits));
      const RationalPoly f = spec.rational_poly();
      for (std::size_t i = 0; i < emb.real_roots.size(); ++i) {
        const auto& c = emb.real_certificates[i];
        CHECK(sgn(poly::eval(f, c.lo)) * sgn(poly::eval(f, c.hi)) < 0);
        const mpq_class x = exact_rational(emb.real_roots[i]);
        CHECK(c.lo <= x);
        CHECK(x <= c.hi);
      }
      for (const auto& c : emb.complex_certificates) CHECK(c.im > c.radius);
    }
  }
  CHECK_THROWS_AS(compute_embeddings(NumberFieldSpec::from_signature(1, 1)), Error);
  CHECK_THROWS_AS(compute_embeddings(field({-2, 0, 1}), 4), Error);
}

TEST_CASE("H^{1,1} of the field") {
  CHECK(field_h11(field({0, 1})).to_text() == "R x Z/2");
  CHECK(field_h11(field({1, 0, 1})).to_text() == "R x R/Z");
  CHECK(field_h11(field({-1, -1, 0, 1})).to_text() == "R^2 x R/Z x Z/2");
  CHECK(field_h11_text(field({-1, -1, 0, 1})) == "R^x x C^x");
  CHECK(field_h11_text(NumberFieldSpec::from_signature(2, 3)) == "(R^x)^2 x (C^x)^3");
  const auto g = field_h11(NumberFieldSpec::from_signature(2, 3));
  CHECK(g.real_rank() == 5);
  CHECK(g.torsion().size() == 2);
  CHECK(g.circle_factors().size() == 3);
}

TEST_CASE("field elements, norms and units") {
  const auto q2 = field({-2, 0, 1});
  CHECK(elem(q2, {0, 0, 1}).coefficients() == RationalPoly{2});
  CHECK(field_norm(elem(q2, {1, 1})) == -1);
  CHECK(field_norm(elem(q2, {3})) == 9);
  CHECK(is_unit(elem(q2, {1, 1})));
  CHECK(is_unit(elem(q2, {-1})));
  CHECK(!is_unit(elem(q2, {2})));
  CHECK(!is_unit(elem(q2, {})));
  const auto gauss = field({1, 0, 1});
  // (3 + 4i) / 5 has norm 1 but is not integral.
  CHECK(field_norm(elem(gauss, {mpq_class(3, 5), mpq_class(4, 5)})) == 1);
  CHECK(!is_unit(elem(gauss, {mpq_class(3, 5), mpq_class(4, 5)})));
  CHECK(is_unit(elem(gauss, {0, 1})));
  CHECK(elem(q2, {1, 1}).one_minus().coefficients() == RationalPoly{0, -1});
}

TEST_CASE("regulator map and transfer") {
  const auto q2 = field({-2, 0, 1});
  const auto e2 = compute_embeddings(q2);
  auto v = regulator_map(elem(q2, {1, 1}), e2);
  REQUIRE(v.size() == 2);
  CHECK(to_decimal(v[1], 10) == "0.881373587");
  CHECK(to_decimal(v[0], 10) == "-0.881373587");
  for (const auto& x : regulator_map(elem(q2, {1}), e2)) CHECK(x == 0);
  CHECK_THROWS_AS(regulator_map(elem(q2, {}), e2), Error);

  const auto cubic = field({-1, -1, 0, 1});
  const auto e3 = compute_embeddings(cubic);
  v = regulator_map(elem(cubic, {0, 1}), e3);
  CHECK(to_decimal(v[0], 10) == "0.2811995743");
  CHECK(to_decimal(v[1], 12).rfind("-0.1405997871", 0) == 0);
  CHECK_THROWS_AS(regulator_map(elem(cubic, {0, 1}), e2), Error);

  const unsigned b = 128;
  CHECK(transfer({make_real(1L, b), make_real(2L, b), make_real(3L, b)}, 2, 1) == 9);
  CHECK(transfer({make_real(0L, b), make_real(0L, b)}, 2, 0) == 0);
  CHECK_THROWS_AS(transfer({make_real(1L, b)}, 2, 0), Error);
}

namespace {

struct UnitCase {
  std::vector<long> poly;
  std::vector<std::vector<mpq_class>> units;
};

std::vector<UnitCase> unit_cases() {
  return {
      {{0, 1}, {}},
      {{1, 0, 1}, {}},
      {{-2, 0, 1}, {{1, 1}}},
      {{-1, -1, 0, 1}, {{0, 1}}},
      {{1, -3, 0, 1}, {{0, 1}, {-1, 1}}},
      {{1, 1, 1, 1, 1}, {{1, 1}}},
      {{-2, 0, 0, 0, 1}, {{1, 1}, {1, 0, 1}}},
  };
}

}  // namespace

TEST_CASE("units lie in the transfer hyperplane") {
  for (const auto& uc : unit_cases()) {
    const auto spec = field(uc.poly);
    const auto emb = compute_embeddings(spec);
    for (const auto& c : uc.units) {
      const auto u = elem(spec, c);
      REQUIRE(is_unit(u));
      CHECK(abs_r(transfer(regulator_map(u, emb), emb.s(), emb.t())) < tolerance(emb.precision));
    }
  }
}

TEST_CASE("classical regulator") {
  const auto q2 = field({-2, 0, 1});
  const auto e2 = compute_embeddings(q2);
  CHECK(to_decimal(classical_regulator({elem(q2, {1, 1})}, e2), 10) == "0.881373587");
  CHECK_THROWS_AS(classical_regulator({}, e2), Error);
  CHECK_THROWS_AS(classical_regulator({elem(q2, {3})}, e2), Error);

  const auto gauss = field({1, 0, 1});
  CHECK(classical_regulator({}, compute_embeddings(gauss)) == 1);

  const auto cubic = field({-1, -1, 0, 1});
  CHECK(to_decimal(classical_regulator({elem(cubic, {0, 1})}, compute_embeddings(cubic)), 10) == "0.2811995743");

  // x^5 - 1 cyclotomic factor: 2 log|1 + zeta| = log of the golden ratio at one place.
  const auto zeta5 = field({1, 1, 1, 1, 1});
  const Real r5 = classical_regulator({elem(zeta5, {1, 1})}, compute_embeddings(zeta5));
  CHECK(to_d(r5) == doctest::Approx(0.9624236501).epsilon(1e-9));
}

TEST_CASE("lattice volume: formula against Gram determinant") {
  for (const auto& uc : unit_cases()) {
    const auto spec = field(uc.poly);
    for (unsigned bits : {128u, 256u}) {
      const auto emb = compute_embeddings(spec, bits);
      std::vector<FieldElement> units;
      for (const auto& c : uc.units) units.push_back(elem(spec, c));
      const auto vol = lattice_volume(units, emb);
      CHECK(vol.by_convention == units.empty());
      CHECK(abs_r(vol.formula - vol.gram) < tolerance(bits));
      CHECK(vol.gram > 0);
    }
  }
  const auto q2 = field({-2, 0, 1});
  const auto vol = lattice_volume({elem(q2, {1, 1})}, compute_embeddings(q2));
  CHECK(to_decimal(vol.formula, 11) == "1.2464504803");
  const auto cubic = field({-1, -1, 0, 1});
  const auto vc = lattice_volume({elem(cubic, {0, 1})}, compute_embeddings(cubic));
  // R sqrt5 / 2 with R = log 1.3247179572...
  CHECK(to_decimal(vc.formula, 10) == "0.3143906817");
}

TEST_CASE("Milnor symbols") {
  const auto q = field({0, 1});
  const auto eq = compute_embeddings(q);
  auto m = milnor_symbol({FieldElement::rational(q, -2), FieldElement::rational(q, -3)}, eq);
  REQUIRE(m.real_places.size() == 1);
  CHECK(m.real_places[0] == DelignePointClass::torsion(2, 2));
  m = milnor_symbol({FieldElement::rational(q, 2), FieldElement::rational(q, -3)}, eq);
  CHECK(m.real_places[0].is_zero());
  m = milnor_symbol({FieldElement::rational(q, -5), FieldElement::rational(q, 6)}, eq);
  CHECK(m.real_places[0].is_zero());
  m = milnor_symbol({FieldElement::rational(q, -1), FieldElement::rational(q, -1), FieldElement::rational(q, -1)}, eq);
  CHECK(m.real_places[0] == DelignePointClass::torsion(3, 3));
  CHECK_THROWS_AS(milnor_symbol({FieldElement::rational(q, 0)}, eq), Error);
  CHECK_THROWS_AS(milnor_symbol({}, eq), Error);

  // Degree one: p = 1 is the point class itself.
  m = milnor_symbol({FieldElement::rational(q, mpq_class(-2, 7))}, eq);
  CHECK(m.real_places[0] == DelignePointClass::runit(1, mpq_class(-2, 7)));

  const auto q2 = field({-2, 0, 1});
  const auto e2 = compute_embeddings(q2);
  // 1 - sqrt2 < 0 at the positive root only; -sqrt2 the opposite way.
  const auto a = elem(q2, {1, -1}), b = elem(q2, {0, -1});
  CHECK(real_signs(a, e2) == std::vector<int>{1, -1});
  CHECK(real_signs(b, e2) == std::vector<int>{1, -1});
  m = milnor_symbol({a, b}, e2);
  CHECK(m.real_places[0].is_zero());
  CHECK(m.real_places[1] == DelignePointClass::torsion(2, 2));
  m = milnor_symbol({a}, e2);
  CHECK(m.real_values.size() == 2);
  CHECK(std::get<DelignePointClass::RUnit>(m.real_places[1].value()).value < 0);

  const auto gauss = field({1, 0, 1});
  m = milnor_symbol({elem(gauss, {1, 1})}, compute_embeddings(gauss));
  CHECK(m.real_places.empty());
  REQUIRE(m.complex_values.size() == 1);
  CHECK(to_d(m.complex_values[0].re) == doctest::Approx(1.0));
  CHECK(to_d(m.complex_values[0].im) == doctest::Approx(1.0));
}

TEST_CASE("Steinberg relation") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 40);
  const auto q = field({0, 1}), q2 = field({-2, 0, 1});
  const auto eq = compute_embeddings(q), e2 = compute_embeddings(q2);
  int checked = 0;
  while (checked < 500) {
    const mpq_class a(num(rng), den(rng));
    mpq_class ac = a;
    ac.canonicalize();
    if (ac == 0 || ac == 1) continue;
    const auto& spec = checked % 2 == 0 ? q : q2;
    const auto& emb = checked % 2 == 0 ? eq : e2;
    const auto x = FieldElement::rational(spec, ac);
    for (const auto& c : milnor_symbol({x, x.one_minus()}, emb).real_places) CHECK(c.is_zero());
    ++checked;
  }
  // Irrational entries too.
  for (int i = 0; i < 100; ++i) {
    const auto x = elem(q2, {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))});
    if (x.is_zero() || x.one_minus().is_zero()) continue;
    for (const auto& c : milnor_symbol({x, x.one_minus()}, e2).real_places) CHECK(c.is_zero());
  }
}
