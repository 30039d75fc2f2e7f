#include "rdc/bundle.hpp"

#include "rdc/cellular.hpp"
#include "rdc/error.hpp"

namespace rdc {

BundleRing BundleRing::over(std::int64_t dim, std::string name) const {
  if (dim < 0) throw malformed("projective factor dimension must be nonnegative");
  BundleRing r = *this;
  if (name.empty()) name = "T" + std::to_string(factors_.size() + 1);
  for (const auto& f : factors_)
    if (f.name == name) throw malformed("duplicate generator name '" + name + "'");
  r.factors_.push_back({std::move(name), dim});
  return r;
}

BundleRing BundleRing::projective(const std::vector<std::int64_t>& dims) {
  BundleRing r;
  for (auto d : dims) r = r.over(d);
  return r;
}

BundleRing BundleRing::base() const {
  if (factors_.empty()) throw malformed("the point has no base");
  BundleRing r = *this;
  r.factors_.pop_back();
  return r;
}

// Peels factors off the end: D(X x P^p) = sum_j D^{n-2j, q-j}(X).
GroupDescriptor bundle_group(const BundleRing& ring, BiDegree d) {
  if (ring.rank() == 0) return deligne_point_group(d);
  const BundleRing base = ring.base();
  GroupDescriptor out;
  for (std::int64_t j = 0; j <= ring.factors().back().dim; ++j)
    out += bundle_group(base, {checked_sub(d.n, checked_mul(2, j)), checked_sub(d.p, j)});
  return out;
}

BundleClass BundleClass::monomial(const DelignePointClass& coeff, Exponents e) {
  BundleClass c;
  if (!coeff.is_zero()) c.terms.emplace(std::move(e), coeff);
  return c;
}

namespace {

BiDegree term_bidegree(const Exponents& e, const DelignePointClass& c) {
  std::int64_t total = 0;
  for (auto j : e) total = checked_add(total, j);
  return c.bidegree() + BiDegree{checked_mul(2, total), total};
}

void check_exponents(const BundleRing& ring, const Exponents& e) {
  if (e.size() != ring.rank()) throw malformed("exponent vector length does not match the number of factors");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] > ring.factors()[i].dim)
      throw malformed("exponent of " + ring.factors()[i].name + " out of range");
}

}  // namespace

std::optional<BiDegree> bundle_bidegree(const BundleClass& x) {
  std::optional<BiDegree> d;
  for (const auto& [e, c] : x.terms) {
    const BiDegree t = term_bidegree(e, c);
    if (d && *d != t) return std::nullopt;
    d = t;
  }
  return d;
}

BundleProduct bundle_mul(const BundleRing& ring, const BundleClass& x, const BundleClass& y) {
  BundleClass out;
  BundleUndetermined undetermined;
  for (const auto& [ex, cx] : x.terms) {
    check_exponents(ring, ex);
    for (const auto& [ey, cy] : y.terms) {
      check_exponents(ring, ey);
      Exponents e(ex.size());
      bool truncated = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = checked_add(ex[i], ey[i]);
        if (e[i] > ring.factors()[i].dim) truncated = true;
      }
      if (truncated) continue;
      const DeligneProduct c = deligne_mul(cx, cy);
      if (const auto* u = std::get_if<Undetermined>(&c)) {
        undetermined.loci.push_back({ex, ey, *u});
        continue;
      }
      const auto& value = std::get<DelignePointClass>(c);
      if (value.is_zero()) continue;
      auto it = out.terms.find(e);
      if (it == out.terms.end()) {
        out.terms.emplace(e, value);
      } else {
        DelignePointClass sum = deligne_add(it->second, value);
        if (sum.is_zero()) out.terms.erase(it);
        else it->second = sum;
      }
    }
  }
  if (!undetermined.loci.empty()) return undetermined;
  return out;
}

std::string branch_name(PppBranch b) { return b == PppBranch::kBredonRange ? "k<=r" : "k>=r"; }

namespace {

struct PppSetup {
  BiDegree degree;
  std::int64_t r;
  std::int64_t p;
};

PppSetup ppp_setup(const BredonPointClass& a, std::int64_t k, const BundleRing& ring) {
  if (ring.rank() != 1) throw malformed("a cup xi^k needs a single projective factor");
  const auto d = a.bidegree();
  if (!d) throw malformed("a cup xi^k needs a nonzero homogeneous class");
  if (d->p > 0) throw malformed("a cup xi^k needs a of weight <= 0");
  const std::int64_t p = ring.factors()[0].dim;
  if (k < 0 || k > p) throw malformed("k must lie in [0, " + std::to_string(p) + "]");
  return {*d, -d->p, p};
}

// a . h^k in CH(P^p) (x) B, read back as a weight <= 0 class a (x) T^k.
BundleClass bredon_range(const BredonPointClass& a, std::int64_t k, const PppSetup& s) {
  const ChowPresentation chow = ChowPresentation::projective_space(s.p);
  const CellularClass prod = cellular_bredon_mul(chow, {{chow.unit(), a}},
                                                 {{static_cast<std::size_t>(k), BredonPointClass::one()}});
  BundleClass out;
  for (const auto& [idx, coeff] : prod) {
    const auto j = static_cast<std::int64_t>(idx);
    out.terms.emplace(Exponents{j}, DelignePointClass::lift(coeff, *coeff.bidegree()));
  }
  return out;
}

}  // namespace

PppResult ppp_cup(const BredonPointClass& a, std::int64_t k, const BundleRing& ring, PppBranch branch) {
  const PppSetup s = ppp_setup(a, k, ring);
  if (branch == PppBranch::kBredonRange) {
    if (k > s.r) throw malformed("branch k<=r needs k <= " + std::to_string(s.r));
    return {bredon_range(a, k, s), branch};
  }
  if (k < s.r) throw malformed("branch k>=r needs k >= " + std::to_string(s.r));
  const BundleClass base = bredon_range(a, s.r, s);
  const auto xi = BundleClass::monomial(DelignePointClass::unit(1), Exponents{k - s.r});
  const BundleProduct p = bundle_mul(ring, base, xi);
  if (const auto* c = std::get_if<BundleClass>(&p)) return {*c, branch};
  throw malformed("internal: xi-power product undetermined");
}

PppResult ppp_cup(const BredonPointClass& a, std::int64_t k, const BundleRing& ring) {
  const PppSetup s = ppp_setup(a, k, ring);
  return ppp_cup(a, k, ring, k <= s.r ? PppBranch::kBredonRange : PppBranch::kXiPower);
}

DeligneProduct mixed_product(const DelignePointClass& a, const DelignePointClass& b) {
  const BiDegree da = a.bidegree(), db = b.bidegree();
  if (da.p > 0) throw malformed("mixed_product needs the first factor of weight <= 0");
  const std::int64_t p = -da.p;
  const BundleRing ring = BundleRing::projective({p});
  const BiDegree target = da + db;
  if (a.is_zero() || b.is_zero()) return DelignePointClass::zero(target);
  const auto* neg = std::get_if<DelignePointClass::NegCone>(&a.value());
  const BredonPointClass ca = neg ? neg->c : rho(a);
  const PppResult lifted = ppp_cup(ca, p, ring);
  const BundleProduct star = bundle_mul(ring, lifted.value, BundleClass::monomial(b, Exponents{0}));
  if (const auto* u = std::get_if<BundleUndetermined>(&star)) return u->loci.front().product;
  // pi_dagger: psi^{-1} followed by the projection to the T^p coefficient.
  const auto& cls = std::get<BundleClass>(star);
  auto it = cls.terms.find(Exponents{p});
  if (it == cls.terms.end()) return DelignePointClass::zero(target);
  return it->second;
}

}  // namespace rdc
