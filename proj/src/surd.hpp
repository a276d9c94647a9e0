// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <gmpxx.h>

#include "ntcore.hpp"

namespace primpairs {

// rational + sqrt_coeff * sqrt(radicand), radicand a non-negative integer.
// Signs and comparisons are decided exactly: isolate the root term, compare
// signs, square once.
struct QuadraticSurd {
  mpq_class rational{0};
  mpq_class sqrt_coeff{0};
  mpz_class radicand{0};

  QuadraticSurd() = default;
  QuadraticSurd(mpq_class a, mpq_class b, mpz_class n)
      : rational(std::move(a)), sqrt_coeff(std::move(b)), radicand(std::move(n)) {}

  static QuadraticSurd of_rational(mpq_class a) { return {std::move(a), 0, 0}; }

  int sign() const;
  double approx() const;
  std::string exact_string() const;
  std::string decimal_string(int digits = 12) const;

  QuadraticSurd operator-() const { return {-rational, -sqrt_coeff, radicand}; }
  QuadraticSurd scaled(const mpq_class& c) const { return {rational * c, sqrt_coeff * c, radicand}; }
};

// Sign of a + b*sqrt(n).
int surd_sign(const mpq_class& a, const mpq_class& b, const mpz_class& n);

// Sign of x - y for surds sharing a radicand (or with one rational side).
int compare(const QuadraticSurd& x, const QuadraticSurd& y);

}  // namespace primpairs
