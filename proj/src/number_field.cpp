#include "rdc/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "rdc/error.hpp"

namespace rdc {

namespace poly {

RationalPoly trimmed(RationalPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

std::int64_t degree(const RationalPoly& f) { return static_cast<std::int64_t>(trimmed(f).size()) - 1; }

RationalPoly derivative(const RationalPoly& f) {
  RationalPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  return trimmed(std::move(d));
}

RationalPoly mul(const RationalPoly& f, const RationalPoly& g) {
  if (f.empty() || g.empty()) return {};
  RationalPoly h(f.size() + g.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
  return trimmed(std::move(h));
}

RationalPoly mod(const RationalPoly& f_in, const RationalPoly& g_in) {
  RationalPoly f = trimmed(f_in);
  const RationalPoly g = trimmed(g_in);
  if (g.empty()) throw malformed("polynomial division by zero");
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg && !f.empty()) {
    const mpq_class c = f.back() / g.back();
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) f[shift + i] -= c * g[i];
    f.pop_back();
    f = trimmed(std::move(f));
  }
  return f;
}

RationalPoly monic_gcd(RationalPoly f, RationalPoly g) {
  f = trimmed(std::move(f));
  g = trimmed(std::move(g));
  while (!g.empty()) {
    RationalPoly r = mod(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  if (f.empty()) return f;
  const mpq_class lead = f.back();
  for (auto& c : f) c /= lead;
  return f;
}

mpq_class eval(const RationalPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class resultant(const RationalPoly& f_in, const RationalPoly& g_in) {
  RationalPoly f = trimmed(f_in), g = trimmed(g_in);
  if (f.empty() || g.empty()) return 0;
  mpq_class scale = 1;
  for (;;) {
    const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
    const std::int64_t n = static_cast<std::int64_t>(g.size()) - 1;
    if (n == 0) {
      mpq_class out = scale;
      for (std::int64_t i = 0; i < m; ++i) out *= g[0];
      return out;
    }
    RationalPoly r = mod(f, g);
    if (r.empty()) return 0;
    const std::int64_t k = static_cast<std::int64_t>(r.size()) - 1;
    if ((m * n) % 2 != 0) scale = -scale;
    for (std::int64_t i = 0; i < m - k; ++i) scale *= g.back();
    f = std::move(g);
    g = std::move(r);
  }
}

namespace {

int sign_at_infinity(const RationalPoly& f, bool negative) {
  const int lead = sgn(f.back());
  return (negative && (f.size() - 1) % 2 == 1) ? -lead : lead;
}

}  // namespace

std::int64_t real_root_count(const RationalPoly& f_in) {
  RationalPoly f = trimmed(f_in);
  if (f.size() <= 1) return 0;
  std::vector<RationalPoly> chain{f, derivative(f)};
  while (chain.back().size() > 1) {
    RationalPoly r = mod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto changes = [&](bool negative) {
    std::int64_t count = 0;
    int last = 0;
    for (const auto& p : chain) {
      const int s = sign_at_infinity(p, negative);
      if (s != 0 && last != 0 && s != last) ++count;
      if (s != 0) last = s;
    }
    return count;
  };
  return changes(true) - changes(false);
}

RationalPoly char_poly(const RationalPoly& f_in, const RationalPoly& g) {
  const RationalPoly f = trimmed(f_in);
  const std::size_t n = f.size() - 1;
  // Column j of A is g * x^j mod f.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n, mpq_class(0)));
  RationalPoly col = mod(g, f);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < col.size(); ++i) a[i][j] = col[i];
    RationalPoly shifted(col.size() + 1, mpq_class(0));
    for (std::size_t i = 0; i < col.size(); ++i) shifted[i + 1] = col[i];
    col = mod(shifted, f);
  }
  // Faddeev-LeVerrier.
  RationalPoly c(n + 1, mpq_class(0));
  c[n] = 1;
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n, mpq_class(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<mpq_class>> am(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (m[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) am[j][l] += a[j][i] * m[i][l];
      }
    // M_k = A M_{k-1} + c_{n-k+1} I
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    mpq_class trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) trace += a[i][j] * m[j][i];
    c[n - k] = -trace / static_cast<long>(k);
  }
  return c;
}

}  // namespace poly

// ---------------------------------------------------------------------------

NumberFieldSpec NumberFieldSpec::from_poly(std::vector<mpz_class> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() < 2) throw malformed("defining polynomial must have degree >= 1");
  if (coeffs.back() != 1) throw malformed("defining polynomial must be monic");
  NumberFieldSpec spec;
  spec.coeffs_ = std::move(coeffs);
  const RationalPoly f = spec.rational_poly();
  if (poly::degree(poly::monic_gcd(f, poly::derivative(f))) > 0)
    throw malformed("defining polynomial has a repeated root");
  const std::int64_t n = poly::degree(f);
  spec.s_ = poly::real_root_count(f);
  spec.t_ = (n - spec.s_) / 2;
  return spec;
}

NumberFieldSpec NumberFieldSpec::from_signature(std::int64_t s, std::int64_t t) {
  if (s < 0 || t < 0) throw malformed("signature entries must be nonnegative");
  if (s + 2 * t < 1) throw malformed("signature must describe degree >= 1");
  NumberFieldSpec spec;
  spec.s_ = s;
  spec.t_ = t;
  return spec;
}

RationalPoly NumberFieldSpec::rational_poly() const {
  RationalPoly f;
  for (const auto& c : coeffs_) f.emplace_back(c);
  return f;
}

// ---------------------------------------------------------------------------
// Root finding.

namespace {

Real real_from(long v, unsigned bits) { return make_real(v, bits); }

Real r_abs(const Real& x) {
  Real out = x;
  mpfr_abs(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

Real r_log(const Real& x) {
  Real out = real_from(0, precision_bits(x));
  mpfr_log(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

Real r_sqrt(const Real& x) {
  Real out = real_from(0, precision_bits(x));
  mpfr_sqrt(out.backend().data(), x.backend().data(), MPFR_RNDN);
  return out;
}

struct CR {
  Real re, im;
};

CR add(const CR& a, const CR& b) { return {a.re + b.re, a.im + b.im}; }
CR sub(const CR& a, const CR& b) { return {a.re - b.re, a.im - b.im}; }
CR mul(const CR& a, const CR& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Real norm2(const CR& a) { return a.re * a.re + a.im * a.im; }
CR div(const CR& a, const CR& b) {
  const Real d = norm2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

struct PolyR {
  std::vector<Real> c;  // ascending
  CR eval(const CR& z, CR* deriv) const {
    const unsigned bits = precision_bits(c.back());
    CR v{c.back(), real_from(0, bits)};
    CR d{real_from(0, bits), real_from(0, bits)};
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      d = add(mul(d, z), v);
      v = mul(v, z);
      v.re += c[i];
    }
    if (deriv) *deriv = d;
    return v;
  }
};

using CD = std::complex<double>;

// Aberth in doubles; returns false when the coefficients do not fit or the
// iteration stalls.
bool aberth_double(const RationalPoly& f, std::vector<CD>& roots) {
  const std::size_t n = f.size() - 1;
  std::vector<double> c(f.size());
  double bound = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    c[i] = f[i].get_d();
    if (!std::isfinite(c[i])) return false;
    if (i < n) bound = std::max(bound, std::abs(c[i]));
  }
  const double radius = std::min(1.0 + bound, 1e150);
  roots.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    roots[k] = std::polar(radius * 0.5 + 0.5, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4);
  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      CD v = c[n], d = 0;
      for (std::size_t i = n; i-- > 0;) {
        d = d * roots[k] + v;
        v = v * roots[k] + c[i];
      }
      if (v == CD(0)) continue;
      const CD w = v / d;
      CD sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (roots[k] - roots[j]);
      const CD step = w / (1.0 - w * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
      roots[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(roots[k])));
    }
    if (worst < 1e-14) return true;
  }
  return false;
}

// Aberth at working precision, starting from `roots`.
bool aberth_mpfr(const PolyR& f, std::vector<CR>& roots, unsigned bits) {
  const std::size_t n = roots.size();
  const Real one = real_from(1, bits);
  Real tolerance = one;
  mpfr_div_2ui(tolerance.backend().data(), one.backend().data(), bits - 8, MPFR_RNDN);
  for (int iter = 0; iter < 4000; ++iter) {
    Real worst = real_from(0, bits);
    for (std::size_t k = 0; k < n; ++k) {
      CR d;
      const CR v = f.eval(roots[k], &d);
      if (mpfr_zero_p(v.re.backend().data()) && mpfr_zero_p(v.im.backend().data())) continue;
      if (mpfr_zero_p(d.re.backend().data()) && mpfr_zero_p(d.im.backend().data())) return false;
      const CR w = div(v, d);
      CR sum{real_from(0, bits), real_from(0, bits)};
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum = add(sum, div(CR{one, real_from(0, bits)}, sub(roots[k], roots[j])));
      const CR denom = sub(CR{one, real_from(0, bits)}, mul(w, sum));
      const CR step = div(w, denom);
      roots[k] = sub(roots[k], step);
      Real size = norm2(roots[k]);
      if (size < one) size = one;
      const Real rel = norm2(step) / size;
      if (!mpfr_number_p(rel.backend().data())) return false;
      if (rel > worst) worst = rel;
    }
    if (worst < tolerance * tolerance) return true;
  }
  return false;
}

struct QC {
  mpq_class re, im;
};

QC eval_exact(const RationalPoly& f, const QC& z, QC* deriv) {
  QC v{f.back(), 0}, d{0, 0};
  for (std::size_t i = f.size() - 1; i-- > 0;) {
    d = QC{d.re * z.re - d.im * z.im + v.re, d.re * z.im + d.im * z.re + v.im};
    v = QC{v.re * z.re - v.im * z.im + f[i], v.re * z.im + v.im * z.re};
  }
  if (deriv) *deriv = d;
  return v;
}

// Rational upper bound for sqrt(q), q >= 0.
mpq_class sqrt_upper(const mpq_class& q) {
  mpfr_t x;
  mpfr_init2(x, 80);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(x, x, MPFR_RNDU);
  Real r;
  mpfr_set_prec(r.backend().data(), 80);
  mpfr_set(r.backend().data(), x, MPFR_RNDU);
  mpfr_clear(x);
  return exact_rational(r);
}

std::optional<RealRootCertificate> certify_real(const RationalPoly& f, const Real& x, unsigned precision) {
  const mpq_class q = exact_rational(x);
  mpq_class delta = 1;
  mpq_div_2exp(delta.get_mpq_t(), delta.get_mpq_t(), precision + 8);
  for (int attempt = 0; attempt < 48; ++attempt, delta *= 16) {
    const mpq_class lo = q - delta, hi = q + delta;
    const int a = sgn(poly::eval(f, lo)), b = sgn(poly::eval(f, hi));
    if (a * b < 0) return RealRootCertificate{lo, hi};
  }
  return std::nullopt;
}

std::optional<ComplexRootCertificate> certify_complex(const RationalPoly& f, const CR& z) {
  const QC c{exact_rational(z.re), exact_rational(z.im)};
  QC d;
  const QC v = eval_exact(f, c, &d);
  const mpq_class dn = d.re * d.re + d.im * d.im;
  if (dn == 0) return std::nullopt;
  const long n = static_cast<long>(f.size() - 1);
  const mpq_class bound2 = mpq_class(n * n) * (v.re * v.re + v.im * v.im) / dn;
  const mpq_class radius = sqrt_upper(bound2);
  if (c.im <= radius) return std::nullopt;
  return ComplexRootCertificate{c.re, c.im, radius};
}

}  // namespace

EmbeddingData compute_embeddings(const NumberFieldSpec& spec, unsigned precision) {
  if (!spec.has_poly()) throw malformed("embeddings need a defining polynomial");
  if (precision < 16 || precision > (1u << 20)) throw malformed("precision must lie in [16, 2^20] bits");
  const RationalPoly f = spec.rational_poly();
  const std::size_t n = f.size() - 1;
  const unsigned wbits = precision + 32;

  PolyR fr;
  for (const auto& c : f) fr.c.push_back(make_real(c, wbits));

  std::vector<CR> roots(n);
  std::vector<CD> start;
  if (aberth_double(f, start)) {
    for (std::size_t k = 0; k < n; ++k)
      roots[k] = CR{make_real(mpq_class(start[k].real()), wbits), make_real(mpq_class(start[k].imag()), wbits)};
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
      roots[k] = CR{make_real(mpq_class(std::cos(angle)), wbits), make_real(mpq_class(std::sin(angle)), wbits)};
    }
  }
  if (!aberth_mpfr(fr, roots, wbits))
    throw non_convergence("root iteration did not converge for a polynomial of degree " + std::to_string(n) +
                          " at " + std::to_string(wbits) + " bits");

  // Classify by imaginary part; the Sturm count fixes how many are real.
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r_abs(roots[a].im) < r_abs(roots[b].im);
  });
  const std::size_t s = static_cast<std::size_t>(spec.s());

  EmbeddingData out;
  out.poly = f;
  out.precision = precision;
  for (std::size_t i = 0; i < s; ++i) out.real_roots.push_back(roots[order[i]].re);
  std::sort(out.real_roots.begin(), out.real_roots.end());
  for (std::size_t i = s; i < n; ++i) {
    const CR& z = roots[order[i]];
    if (z.im > 0) out.complex_reps.push_back(ComplexReal{z.re, z.im});
  }
  if (out.complex_reps.size() != static_cast<std::size_t>(spec.t()))
    throw non_convergence("non-real roots do not pair up: found " + std::to_string(out.complex_reps.size()) +
                          " with positive imaginary part, expected " + std::to_string(spec.t()));
  std::sort(out.complex_reps.begin(), out.complex_reps.end(), [](const ComplexReal& a, const ComplexReal& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  });

  // Certification: s disjoint sign-change intervals and t disjoint disks in
  // the upper half plane account for all n roots.
  for (const auto& x : out.real_roots) {
    auto cert = certify_real(f, x, precision);
    if (!cert) throw non_convergence("could not bracket the real root near " + to_decimal(x, 20));
    out.real_certificates.push_back(*cert);
  }
  for (std::size_t i = 1; i < out.real_certificates.size(); ++i)
    if (out.real_certificates[i - 1].hi >= out.real_certificates[i].lo)
      throw non_convergence("real root brackets overlap; roots are too close at this precision");
  for (const auto& z : out.complex_reps) {
    auto cert = certify_complex(f, CR{z.re, z.im});
    if (!cert) throw non_convergence("could not isolate the complex root near " + to_decimal(z.re, 20) + " + " +
                                     to_decimal(z.im, 20) + "i");
    out.complex_certificates.push_back(*cert);
  }
  const auto& cc = out.complex_certificates;
  for (std::size_t i = 0; i < cc.size(); ++i)
    for (std::size_t j = i + 1; j < cc.size(); ++j) {
      const mpq_class dr = cc[i].re - cc[j].re, di = cc[i].im - cc[j].im;
      const mpq_class reach = cc[i].radius + cc[j].radius;
      if (dr * dr + di * di <= reach * reach)
        throw non_convergence("complex root disks overlap; roots are too close at this precision");
    }

  Real worst = real_from(0, wbits);
  for (const auto& x : out.real_roots) {
    const Real v = r_abs(fr.eval(CR{x, real_from(0, wbits)}, nullptr).re);
    if (v > worst) worst = v;
  }
  for (const auto& z : out.complex_reps) {
    const Real v = r_sqrt(norm2(fr.eval(CR{z.re, z.im}, nullptr)));
    if (v > worst) worst = v;
  }
  Real limit = real_from(1, wbits);
  mpfr_div_2ui(limit.backend().data(), limit.backend().data(), precision / 2, MPFR_RNDN);
  if (!(worst < limit)) throw non_convergence("root residual " + to_decimal(worst, 6) + " exceeds 2^-" +
                                              std::to_string(precision / 2));
  out.max_residual = worst;
  return out;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(const NumberFieldSpec& spec, std::vector<mpq_class> coeffs) {
  if (!spec.has_poly()) throw malformed("field elements need a defining polynomial");
  f_ = spec.rational_poly();
  c_ = poly::mod(poly::trimmed(std::move(coeffs)), f_);
}

FieldElement FieldElement::one_minus() const {
  FieldElement out = *this;
  for (auto& c : out.c_) c = -c;
  if (out.c_.empty()) out.c_.push_back(1);
  else out.c_[0] += 1;
  out.c_ = poly::trimmed(std::move(out.c_));
  return out;
}

mpq_class field_norm(const FieldElement& x) { return poly::resultant(x.f_, x.c_); }

bool is_unit(const FieldElement& x) {
  if (x.c_.empty()) return false;
  if (abs(field_norm(x)) != 1) return false;
  for (const auto& c : poly::char_poly(x.f_, x.c_))
    if (c.get_den() != 1) return false;
  return true;
}

GroupDescriptor field_h11(const NumberFieldSpec& spec) {
  return GroupDescriptor::from_parts(0, std::vector<mpz_class>(static_cast<std::size_t>(spec.s()), mpz_class(2)),
                                     spec.s() + spec.t(), std::vector<std::int64_t>(static_cast<std::size_t>(spec.t()), 0));
}

std::string field_h11_text(const NumberFieldSpec& spec) {
  auto part = [](const std::string& base, std::int64_t k) {
    return k == 1 ? base : "(" + base + ")^" + std::to_string(k);
  };
  std::string out;
  if (spec.s() > 0) out = part("R^x", spec.s());
  if (spec.t() > 0) out += (out.empty() ? "" : " x ") + part("C^x", spec.t());
  return out;
}

namespace {

void check_same_field(const FieldElement& x, const EmbeddingData& emb) {
  if (x.modulus() != emb.poly) throw malformed("element and embeddings belong to different fields");
}

Real eval_real(const RationalPoly& c, const Real& x) {
  const unsigned bits = precision_bits(x);
  Real acc = real_from(0, bits);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + make_real(*it, bits);
  return acc;
}

CR eval_complex(const RationalPoly& c, const ComplexReal& z) {
  const unsigned bits = precision_bits(z.re);
  CR acc{real_from(0, bits), real_from(0, bits)};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul(acc, CR{z.re, z.im});
    acc.re += make_real(*it, bits);
  }
  return acc;
}

Real log_abs_real(const RationalPoly& c, const Real& x) { return r_log(r_abs(eval_real(c, x))); }

Real log_abs_complex(const RationalPoly& c, const ComplexReal& z) {
  Real l = r_log(norm2(eval_complex(c, z)));
  mpfr_div_2ui(l.backend().data(), l.backend().data(), 1, MPFR_RNDN);
  return l;
}

// |det| by Gaussian elimination with partial pivoting.
Real abs_det(std::vector<std::vector<Real>> m, unsigned bits) {
  const std::size_t n = m.size();
  Real det = real_from(1, bits);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (r_abs(m[r][col]) > r_abs(m[pivot][col])) pivot = r;
    if (mpfr_zero_p(m[pivot][col].backend().data())) return real_from(0, bits);
    std::swap(m[pivot], m[col]);
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const Real factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return r_abs(det);
}

unsigned working_bits(const EmbeddingData& emb) { return emb.precision + 32; }

void validate_units(const std::vector<FieldElement>& units, const EmbeddingData& emb) {
  const std::int64_t r = emb.s() + emb.t() - 1;
  if (static_cast<std::int64_t>(units.size()) != r)
    throw malformed("expected exactly " + std::to_string(r) + " units (unit rank), got " +
                    std::to_string(units.size()));
  for (std::size_t k = 0; k < units.size(); ++k) {
    check_same_field(units[k], emb);
    if (!is_unit(units[k]))
      throw malformed("unit " + std::to_string(k + 1) + " is not a unit (norm " + field_norm(units[k]).get_str() + ")");
  }
}

}  // namespace

std::vector<Real> regulator_map(const FieldElement& x, const EmbeddingData& emb) {
  if (x.is_zero()) throw malformed("the regulator map is undefined at 0");
  check_same_field(x, emb);
  std::vector<Real> out;
  for (const auto& r : emb.real_roots) out.push_back(log_abs_real(x.coefficients(), r));
  for (const auto& z : emb.complex_reps) out.push_back(log_abs_complex(x.coefficients(), z));
  return out;
}

Real transfer(const std::vector<Real>& v, std::int64_t s, std::int64_t t) {
  if (s < 0 || t < 0 || static_cast<std::int64_t>(v.size()) != s + t)
    throw malformed("transfer expects a vector of length s + t");
  unsigned bits = 64;
  for (const auto& x : v) bits = std::max(bits, precision_bits(x));
  Real out = real_from(0, bits);
  for (std::int64_t i = 0; i < s; ++i) out += v[static_cast<std::size_t>(i)];
  for (std::int64_t j = 0; j < t; ++j) out += 2 * v[static_cast<std::size_t>(s + j)];
  return out;
}

Real classical_regulator(const std::vector<FieldElement>& units, const EmbeddingData& emb) {
  validate_units(units, emb);
  const unsigned bits = working_bits(emb);
  const std::size_t r = units.size();
  if (r == 0) return real_from(1, bits);
  std::vector<std::vector<Real>> m;
  for (const auto& u : units) {
    std::vector<Real> logs = regulator_map(u, emb);
    for (std::size_t j = static_cast<std::size_t>(emb.s()); j < logs.size(); ++j) logs[j] *= 2;
    logs.resize(r);  // drop the last place
    m.push_back(std::move(logs));
  }
  return abs_det(std::move(m), bits);
}

LatticeVolume lattice_volume(const std::vector<FieldElement>& units, const EmbeddingData& emb) {
  const Real reg = classical_regulator(units, emb);
  const unsigned bits = working_bits(emb);
  LatticeVolume out;
  Real scale = r_sqrt(real_from(emb.s() + 4 * emb.t(), bits));
  mpfr_div_2ui(scale.backend().data(), scale.backend().data(), static_cast<unsigned long>(emb.t()), MPFR_RNDN);
  out.formula = scale * reg;
  if (units.empty()) {
    out.gram = real_from(1, bits);
    out.by_convention = true;
    return out;
  }
  std::vector<std::vector<Real>> g;
  for (const auto& u : units) g.push_back(regulator_map(u, emb));
  const std::size_t r = g.size();
  std::vector<std::vector<Real>> gram(r, std::vector<Real>(r, real_from(0, bits)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < g[i].size(); ++k) gram[i][j] += g[i][k] * g[j][k];
  out.gram = r_sqrt(abs_det(std::move(gram), bits));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Interval {
  mpq_class lo, hi;
};

Interval imul(const Interval& a, const Interval& b) {
  const mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval ieval(const RationalPoly& c, const Interval& x) {
  Interval acc{0, 0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = imul(acc, x);
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

int certified_sign(const RationalPoly& elem, const RationalPoly& f, RealRootCertificate cert) {
  for (int step = 0; step < 8192; ++step) {
    const Interval v = ieval(elem, {cert.lo, cert.hi});
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    const mpq_class mid = (cert.lo + cert.hi) / 2;
    const int fm = sgn(poly::eval(f, mid));
    if (fm == 0) {
      const int e = sgn(poly::eval(elem, mid));
      if (e == 0) break;
      return e;
    }
    if (fm == sgn(poly::eval(f, cert.lo))) cert.lo = mid;
    else cert.hi = mid;
  }
  throw non_convergence("element vanishes at a real place; the defining polynomial may be reducible");
}

bool is_rational(const FieldElement& x) { return x.coefficients().size() <= 1; }

mpq_class rational_value(const FieldElement& x) {
  return x.coefficients().empty() ? mpq_class(0) : x.coefficients()[0];
}

// A rational with the exact sign of phi_i(x), close to phi_i(x).
mpq_class sign_approximant(const FieldElement& x, const EmbeddingData& emb, std::size_t place, int sign) {
  if (is_rational(x)) return rational_value(x);
  mpq_class q = exact_rational(eval_real(x.coefficients(), emb.real_roots[place]));
  if (sgn(q) != sign) q = sign;
  return q;
}

}  // namespace

std::vector<int> real_signs(const FieldElement& x, const EmbeddingData& emb) {
  if (x.is_zero()) throw malformed("zero element has no sign");
  std::vector<int> out;
  for (std::size_t i = 0; i < emb.real_certificates.size(); ++i) {
    if (is_rational(x)) out.push_back(sgn(rational_value(x)));
    else out.push_back(certified_sign(x.coefficients(), emb.poly, emb.real_certificates[i]));
  }
  return out;
}

MilnorSymbol milnor_symbol(const std::vector<FieldElement>& elems, const EmbeddingData& emb) {
  if (elems.empty()) throw malformed("a Milnor symbol needs at least one entry");
  for (const auto& e : elems) {
    if (e.is_zero()) throw malformed("Milnor symbol entries must be nonzero");
    check_same_field(e, emb);
  }
  MilnorSymbol out;
  out.p = static_cast<std::int64_t>(elems.size());
  std::vector<std::vector<int>> signs;
  for (const auto& e : elems) signs.push_back(real_signs(e, emb));
  for (std::size_t place = 0; place < emb.real_roots.size(); ++place) {
    DelignePointClass acc = DelignePointClass::runit(1, sign_approximant(elems[0], emb, place, signs[0][place]));
    for (std::size_t k = 1; k < elems.size(); ++k) {
      const auto next = DelignePointClass::runit(1, sign_approximant(elems[k], emb, place, signs[k][place]));
      auto product = deligne_mul(acc, next);
      if (!std::holds_alternative<DelignePointClass>(product))
        throw non_convergence("internal: symbol product left undetermined");
      acc = std::get<DelignePointClass>(product);
    }
    out.real_places.push_back(acc);
  }
  if (out.p == 1) {
    for (const auto& x : emb.real_roots) out.real_values.push_back(eval_real(elems[0].coefficients(), x));
    for (const auto& z : emb.complex_reps) {
      const CR v = eval_complex(elems[0].coefficients(), z);
      out.complex_values.push_back(ComplexReal{v.re, v.im});
    }
  }
  return out;
}

}  // namespace rdc
