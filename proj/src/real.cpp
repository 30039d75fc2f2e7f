#include "rdc/real.hpp"

#include <cmath>
#include <sstream>

#include "rdc/error.hpp"

namespace rdc {

Real make_real(const mpq_class& value, unsigned bits) {
  Real x;
  mpfr_set_prec(x.backend().data(), bits);
  mpfr_set_q(x.backend().data(), value.get_mpq_t(), MPFR_RNDN);
  return x;
}

Real make_real(const mpz_class& value, unsigned bits) {
  Real x;
  mpfr_set_prec(x.backend().data(), bits);
  mpfr_set_z(x.backend().data(), value.get_mpz_t(), MPFR_RNDN);
  return x;
}

unsigned precision_bits(const Real& x) {
  return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

mpq_class exact_rational(const Real& x) {
  const mpfr_srcptr v = x.backend().data();
  if (!mpfr_number_p(v)) throw non_convergence("non-finite real value");
  if (mpfr_zero_p(v)) return 0;
  mpz_class mantissa;
  const mpfr_exp_t exponent = mpfr_get_z_2exp(mantissa.get_mpz_t(), v);
  mpq_class out(mantissa);
  if (exponent >= 0) mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  else mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  out.canonicalize();
  return out;
}

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

int decimal_digits(unsigned bits) {
  return static_cast<int>(std::floor(bits * 0.30102999566398120));
}

}  // namespace rdc
