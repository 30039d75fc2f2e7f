#include "rdc/deligne.hpp"

#include <limits>

namespace rdc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

mpq_class fractional_part(const mpq_class& q) {
  mpz_class floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - floor_q;
}

mpq_class rational_power(const mpq_class& v, const mpz_class& k) {
  if (!k.fits_slong_p()) throw malformed("exponent too large for R^x scaling");
  const long e = k.get_si();
  const unsigned long m = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), m);
  mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), m);
  mpq_class out = e < 0 ? mpq_class(den, num) : mpq_class(num, den);
  out.canonicalize();
  return out;
}

int parity(const mpz_class& v) { return mpz_odd_p(v.get_mpz_t()) ? 1 : 0; }

}  // namespace

DelignePointClass DelignePointClass::unit(const mpz_class& k) {
  if (k == 0) return zero({0, 0});
  return DelignePointClass(Unit{k});
}

DelignePointClass DelignePointClass::runit(std::int64_t p, const mpq_class& value) {
  if (p <= 0 || is_even(p)) throw malformed("runit requires an odd positive weight");
  if (value == 0) throw malformed("runit value must be nonzero");
  if (value == 1) return zero({1, p});
  return DelignePointClass(RUnit{p, value});
}

DelignePointClass DelignePointClass::circle(std::int64_t p, const mpq_class& q) {
  if (p <= 0 || !is_even(p)) throw malformed("circle requires an even positive weight");
  mpq_class reduced = fractional_part(q);
  if (reduced == 0) return zero({1, p});
  return DelignePointClass(Circle{p, reduced});
}

DelignePointClass DelignePointClass::torsion(std::int64_t n, std::int64_t p, int bit) {
  if (n < 2 || p < n || !is_even(p - n)) throw malformed("torsion class needs n >= 2, p >= n, p = n mod 2");
  if (bit % 2 == 0) return zero({n, p});
  return DelignePointClass(Torsion{n, p});
}

DelignePointClass DelignePointClass::neg_cone(const BredonPointClass& c) {
  if (c.is_zero()) throw malformed("neg_cone of the zero class has no bidegree; use zero()");
  const auto d = c.bidegree();
  if (!d) throw malformed("neg_cone requires a homogeneous class");
  if (d->p > 0) throw malformed("neg_cone requires weight <= 0");
  // B^{n,0} is zero away from (0,0), so a nonzero weight-0 class is k . 1.
  if (d->p == 0) return unit(c.pos_coefficient(0, 0));
  return DelignePointClass(NegCone{c});
}

DelignePointClass DelignePointClass::zero(BiDegree d) { return DelignePointClass(Zero{d}); }

DelignePointClass DelignePointClass::lift(const BredonPointClass& c, BiDegree d) {
  if (c.is_zero()) return zero(d);
  const auto cd = c.bidegree();
  if (!cd || *cd != d) throw malformed("lift: class is not homogeneous of bidegree " + d.to_string());
  if (d.p <= 0) return neg_cone(c);
  if (d.n >= 2) return torsion(d.n, d.p, parity(c.pos_coefficient(d.n, (d.p - d.n) / 2)));
  throw malformed("rho is not injective in bidegree " + d.to_string());
}

BiDegree DelignePointClass::bidegree() const {
  return std::visit(overloaded{
                        [](const Unit&) { return BiDegree{0, 0}; },
                        [](const RUnit& r) { return BiDegree{1, r.p}; },
                        [](const Circle& c) { return BiDegree{1, c.p}; },
                        [](const Torsion& t) { return BiDegree{t.n, t.p}; },
                        [](const NegCone& c) { return *c.c.bidegree(); },
                        [](const Zero& z) { return z.d; },
                    },
                    value_);
}

GroupDescriptor deligne_point_group(BiDegree d) {
  if (d.p <= 0) return bredon_point_group(d);
  if (d.n <= 0) return GroupDescriptor::zero();
  if (d.n == 1) return is_even(d.p) ? GroupDescriptor::circle(d.p) : GroupDescriptor::real_units();
  return bredon_point_group(d);
}

BredonPointClass rho(const DelignePointClass& x) {
  using C = DelignePointClass;
  return std::visit(overloaded{
                        [](const C::Unit& u) { return BredonPointClass::integer(u.k); },
                        [](const C::RUnit& r) {
                          return r.value < 0 ? BredonPointClass::eps_tau(1, (r.p - 1) / 2) : BredonPointClass{};
                        },
                        [](const C::Circle&) { return BredonPointClass{}; },
                        [](const C::Torsion& t) { return BredonPointClass::eps_tau(t.n, (t.p - t.n) / 2); },
                        [](const C::NegCone& c) { return c.c; },
                        [](const C::Zero&) { return BredonPointClass{}; },
                    },
                    x.value());
}

namespace {

DelignePointClass scale(const DelignePointClass& y, const mpz_class& k) {
  using C = DelignePointClass;
  const BiDegree d = y.bidegree();
  if (k == 0) return C::zero(d);
  return std::visit(overloaded{
                        [&](const C::Unit& u) { return C::unit(u.k * k); },
                        [&](const C::RUnit& r) { return C::runit(r.p, rational_power(r.value, k)); },
                        [&](const C::Circle& c) { return C::circle(c.p, c.q * k); },
                        [&](const C::Torsion& t) { return C::torsion(t.n, t.p, parity(k)); },
                        [&](const C::NegCone& c) { return C::lift(c.c.scaled(k), d); },
                        [&](const C::Zero&) { return y; },
                    },
                    y.value());
}

}  // namespace

DeligneProduct deligne_mul(const DelignePointClass& x, const DelignePointClass& y) {
  using C = DelignePointClass;
  const BiDegree dx = x.bidegree();
  const BiDegree dy = y.bidegree();
  const BiDegree d = dx + dy;

  if (x.is_zero() || y.is_zero()) return C::zero(d);
  // R1: nothing to compute in a zero group.
  if (deligne_point_group(d).is_zero()) return C::zero(d);
  // R2: both weights <= 0, Deligne and Bredon agree.
  if (dx.p <= 0 && dy.p <= 0) return C::lift(bredon_mul(rho(x), rho(y)), d);
  // R3: integral scaling.
  if (const auto* u = std::get_if<C::Unit>(&x.value())) return scale(y, u->k);
  if (const auto* u = std::get_if<C::Unit>(&y.value())) return scale(x, u->k);
  // R4/R5: transport through rho wherever it is an isomorphism on the target.
  const bool x_positive = dx.p > 0;
  const bool y_positive = dy.p > 0;
  if (x_positive && y_positive && d.n >= 2) return C::lift(bredon_mul(rho(x), rho(y)), d);
  if (x_positive != y_positive && (d.p <= 0 || d.n >= 2)) return C::lift(bredon_mul(rho(x), rho(y)), d);
  return Undetermined{dx, dy};
}

DelignePointClass deligne_add(const DelignePointClass& x, const DelignePointClass& y) {
  using C = DelignePointClass;
  const BiDegree d = x.bidegree();
  if (y.bidegree() != d) throw malformed("deligne_add: bidegrees " + d.to_string() + " and " +
                                         y.bidegree().to_string() + " differ");
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const auto& yv = y.value();
  return std::visit(overloaded{
                        [&](const C::Unit& u) { return C::unit(u.k + std::get<C::Unit>(yv).k); },
                        [&](const C::RUnit& r) { return C::runit(r.p, r.value * std::get<C::RUnit>(yv).value); },
                        [&](const C::Circle& c) { return C::circle(c.p, c.q + std::get<C::Circle>(yv).q); },
                        [&](const C::Torsion&) { return C::zero(d); },
                        [&](const C::NegCone& c) { return C::lift(c.c + std::get<C::NegCone>(yv).c, d); },
                        [&](const C::Zero&) { return y; },
                    },
                    x.value());
}

DelignePointClass deligne_neg(const DelignePointClass& x) {
  using C = DelignePointClass;
  return std::visit(overloaded{
                        [&](const C::Unit& u) { return C::unit(-u.k); },
                        [&](const C::RUnit& r) { return C::runit(r.p, 1 / r.value); },
                        [&](const C::Circle& c) { return C::circle(c.p, -c.q); },
                        [&](const C::Torsion&) { return x; },
                        [&](const C::NegCone& c) { return C::lift(-c.c, x.bidegree()); },
                        [&](const C::Zero&) { return x; },
                    },
                    x.value());
}

Real change_to_real(const DelignePointClass& x, unsigned bits) {
  const BiDegree d = x.bidegree();
  if (const auto* r = std::get_if<DelignePointClass::RUnit>(&x.value())) {
    const Real magnitude = make_real(abs(r->value), bits);
    Real out = make_real(0L, bits);
    mpfr_log(out.backend().data(), magnitude.backend().data(), MPFR_RNDN);
    return out;
  }
  if (x.is_zero() && d.n == 1 && d.p > 0 && !is_even(d.p)) return make_real(0L, bits);
  throw malformed("change_to_real expects an element of D^{1,p} with p odd");
}

std::vector<GroupDescriptor> diagonal_sequence(std::int64_t i_max) {
  if (i_max < 0) throw malformed("diagonal_sequence expects i_max >= 0");
  std::vector<GroupDescriptor> out;
  out.reserve(static_cast<std::size_t>(i_max) + 1);
  for (std::int64_t i = 0; i <= i_max; ++i) out.push_back(deligne_point_group({i, i}));
  return out;
}

}  // namespace rdc
