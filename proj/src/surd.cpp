// SPDX-License-Identifier: Apache-2.0
#include "surd.hpp"

#include <cmath>

namespace primpairs {

int surd_sign(const mpq_class& a, const mpq_class& b, const mpz_class& n) {
  const int sa = sgn(a);
  const int sb = (n == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 n.
  const mpq_class lhs = a * a;
  const mpq_class rhs = b * b * mpq_class(n);
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

int QuadraticSurd::sign() const { return surd_sign(rational, sqrt_coeff, radicand); }

int compare(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (sgn(x.sqrt_coeff) != 0 && sgn(y.sqrt_coeff) != 0 && x.radicand != y.radicand)
    throw Error(ErrorCode::InvalidParameters, "surd comparison needs a common radicand");
  const mpz_class& n = sgn(x.sqrt_coeff) != 0 ? x.radicand : y.radicand;
  return surd_sign(x.rational - y.rational, x.sqrt_coeff - y.sqrt_coeff, n);
}

double QuadraticSurd::approx() const {
  return rational.get_d() + sqrt_coeff.get_d() * std::sqrt(radicand.get_d());
}

std::string QuadraticSurd::exact_string() const {
  if (sgn(sqrt_coeff) == 0 || radicand == 0) return to_string(rational);
  return to_string(rational) + " + (" + to_string(sqrt_coeff) + ")*sqrt(" + radicand.get_str() + ")";
}

std::string QuadraticSurd::decimal_string(int digits) const {
  mpf_class root(0, 512);
  if (radicand != 0) {
    mpf_class n(radicand, 512);
    mpf_sqrt(root.get_mpf_t(), n.get_mpf_t());
  }
  mpf_class value(rational, 512);
  value += mpf_class(sqrt_coeff, 512) * root;
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.*Fe", digits - 1, value.get_mpf_t());
  return buf;
}

}  // namespace primpairs
