#include "rdc/bredon.hpp"

namespace rdc {

namespace {

void require_nonnegative(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) throw malformed("monomial exponents must be nonnegative");
}

bool odd(const mpz_class& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

}  // namespace

BiDegree pos_bidegree(std::int64_t a, std::int64_t b) {
  return {a, checked_add(a, checked_mul(2, b))};
}

BiDegree alpha_bidegree(std::int64_t b) { return {0, checked_sub(-2, checked_mul(2, b))}; }

BiDegree theta_bidegree(std::int64_t a, std::int64_t b) {
  return {-a, checked_sub(checked_sub(-a, checked_mul(2, b)), 3)};
}

BredonPointClass BredonPointClass::integer(const mpz_class& k) {
  BredonPointClass c;
  c.add_pos(0, 0, k);
  return c;
}

BredonPointClass BredonPointClass::eps_tau(std::int64_t a, std::int64_t b, const mpz_class& coeff) {
  BredonPointClass c;
  c.add_pos(a, b, coeff);
  return c;
}

BredonPointClass BredonPointClass::alpha(std::int64_t b, const mpz_class& coeff) {
  BredonPointClass c;
  c.add_alpha(b, coeff);
  return c;
}

BredonPointClass BredonPointClass::theta(std::int64_t a, std::int64_t b) {
  BredonPointClass c;
  c.add_theta(a, b);
  return c;
}

void BredonPointClass::add_pos(std::int64_t a, std::int64_t b, const mpz_class& coeff) {
  require_nonnegative(a, b);
  if (coeff == 0) return;
  auto [it, inserted] = pos_.try_emplace({a, b}, 0);
  mpz_class& slot = it->second;
  slot += coeff;
  if (a >= 1) slot = odd(slot) ? 1 : 0;
  if (slot == 0) pos_.erase(it);
}

void BredonPointClass::add_alpha(std::int64_t b, const mpz_class& coeff) {
  require_nonnegative(0, b);
  if (coeff == 0) return;
  auto [it, inserted] = alpha_.try_emplace(b, 0);
  it->second += coeff;
  if (it->second == 0) alpha_.erase(it);
}

void BredonPointClass::add_theta(std::int64_t a, std::int64_t b) {
  require_nonnegative(a, b);
  auto [it, inserted] = theta_.insert({a, b});
  if (!inserted) theta_.erase(it);
}

std::optional<BiDegree> BredonPointClass::bidegree() const {
  std::optional<BiDegree> found;
  bool mixed = false;
  auto visit = [&](BiDegree d) {
    if (!found) found = d;
    else if (*found != d) mixed = true;
  };
  for (const auto& [e, c] : pos_) visit(pos_bidegree(e.first, e.second));
  for (const auto& [b, c] : alpha_) visit(alpha_bidegree(b));
  for (const auto& e : theta_) visit(theta_bidegree(e.first, e.second));
  if (mixed) return std::nullopt;
  return found;
}

mpz_class BredonPointClass::pos_coefficient(std::int64_t a, std::int64_t b) const {
  auto it = pos_.find({a, b});
  return it == pos_.end() ? mpz_class(0) : it->second;
}

BredonPointClass& BredonPointClass::operator+=(const BredonPointClass& other) {
  for (const auto& [e, c] : other.pos_) add_pos(e.first, e.second, c);
  for (const auto& [b, c] : other.alpha_) add_alpha(b, c);
  for (const auto& e : other.theta_) add_theta(e.first, e.second);
  return *this;
}

BredonPointClass BredonPointClass::operator-() const { return scaled(-1); }

BredonPointClass BredonPointClass::scaled(const mpz_class& k) const {
  BredonPointClass out;
  for (const auto& [e, c] : pos_) out.add_pos(e.first, e.second, c * k);
  for (const auto& [b, c] : alpha_) out.add_alpha(b, c * k);
  if (odd(k)) out.theta_ = theta_;
  return out;
}

BredonPointClass bredon_mul(const BredonPointClass& x, const BredonPointClass& y) {
  BredonPointClass out;
  const auto& xp = x.pos_terms();
  const auto& yp = y.pos_terms();

  // eps^a tau^b * eps^a' tau^b'
  for (const auto& [ex, cx] : xp)
    for (const auto& [ey, cy] : yp)
      out.add_pos(checked_add(ex.first, ey.first), checked_add(ex.second, ey.second), cx * cy);

  // eps^a tau^b * tau^-b' alpha: zero once eps appears; tau either shortens
  // the alpha tower or, past alpha itself, produces 2 tau^k through alpha tau = 2.
  auto pos_alpha = [&](const BredonPointClass::PosTerms& pos, const BredonPointClass::AlphaTerms& alpha) {
    for (const auto& [e, cp] : pos) {
      if (e.first != 0) continue;
      for (const auto& [b, ca] : alpha) {
        if (e.second <= b) out.add_alpha(b - e.second, cp * ca);
        else out.add_pos(0, e.second - b - 1, 2 * cp * ca);
      }
    }
  };
  pos_alpha(xp, y.alpha_terms());
  pos_alpha(yp, x.alpha_terms());

  // eps^a tau^b * eps^-a' tau^-b' theta survives only while both exponents fit.
  auto pos_theta = [&](const BredonPointClass::PosTerms& pos, const BredonPointClass::ThetaTerms& theta) {
    for (const auto& [e, cp] : pos) {
      if (!odd(cp)) continue;
      for (const auto& t : theta) {
        if (e.first <= t.first && e.second <= t.second) out.add_theta(t.first - e.first, t.second - e.second);
      }
    }
  };
  pos_theta(xp, y.theta_terms());
  pos_theta(yp, x.theta_terms());

  // (tau^-b alpha)(tau^-b' alpha) = 2 tau^-(b+b'+1) alpha; alpha.theta and theta.theta vanish.
  for (const auto& [bx, cx] : x.alpha_terms())
    for (const auto& [by, cy] : y.alpha_terms())
      out.add_alpha(checked_add(checked_add(bx, by), 1), 2 * cx * cy);

  return out;
}

GroupDescriptor bredon_point_group(BiDegree d) {
  // 128-bit so that p - n and n - 3 cannot overflow at the int64 extremes.
  const __int128 n = d.n, p = d.p;
  const bool same_parity = (p - n) % 2 == 0;
  if (n == 0 && p >= 0 && same_parity) return GroupDescriptor::integers();
  if (n >= 1 && n <= p && same_parity) return GroupDescriptor::cyclic(2);
  if (n == 0 && p <= -2 && same_parity) return GroupDescriptor::integers();
  if (n <= 0 && p <= n - 3 && !same_parity) return GroupDescriptor::cyclic(2);
  return GroupDescriptor::zero();
}

GroupDescriptor borel_point_group(BiDegree d) {
  const __int128 n = d.n, p = d.p;
  if (n < 0) return GroupDescriptor::zero();
  if (n == 0) return p % 2 == 0 ? GroupDescriptor::integers() : GroupDescriptor::zero();
  return (n - p) % 2 == 0 ? GroupDescriptor::cyclic(2) : GroupDescriptor::zero();
}

}  // namespace rdc
