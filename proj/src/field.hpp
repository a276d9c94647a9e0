// SPDX-License-Identifier: Apache-2.0
//
// Finite fields F_q, q = p^r, with p < 2^32 and q < 2^63.
//
// Elements are carried as integer codes: the residue itself for r = 1 and the
// little-endian coefficient integer sum c_i p^i for r >= 2. The extension
// modulus is the lexicographically least monic primitive polynomial of degree
// r (coefficients compared from x^{r-1} down to x^0), and gamma is the class
// of x. For prime fields gamma is the least primitive root.
#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "ntcore.hpp"

namespace primpairs {

struct Element {
  u64 code = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

class Field {
 public:
  static Field build(u64 p, unsigned r);
  static Field build(u64 q);

  const PrimePowerId& id() const noexcept { return id_; }
  u64 order() const noexcept { return id_.q; }
  u64 characteristic() const noexcept { return id_.p; }
  unsigned degree() const noexcept { return id_.r; }
  // c_0 .. c_r with c_r = 1; just {0, 1} for prime fields.
  const std::vector<u64>& modulus() const noexcept { return modulus_; }
  Element gamma() const noexcept { return gamma_; }
  const ArithmeticProfile& group_profile() const noexcept { return group_; }

  Element zero() const noexcept { return {0}; }
  Element one() const noexcept { return {1}; }
  Element minus_one() const noexcept;
  Element element(u64 code) const;
  std::vector<u64> coefficients(Element a) const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, u64 n) const;

  bool is_e_free(Element a, u64 e) const;
  bool is_primitive(Element a) const;
  // gamma^m for m coprime to q - 1, m ascending; entry phi + 1 - k is the
  // inverse of entry k.
  std::vector<Element> primitive_elements() const;

  // Pohlig-Hellman over the factorization of q - 1, baby-step giant-step per
  // prime.
  u64 discrete_log(Element a) const;

 private:
  Field() = default;
  Element mul_poly(Element a, Element b) const;
  bool has_order(Element a, u64 n, const Factorization& n_factors) const;

  PrimePowerId id_;
  std::vector<u64> modulus_;
  Element gamma_;
  ArithmeticProfile group_;
};

// Exponent and logarithm tables for gamma.
class LogTable {
 public:
  static constexpr u64 kDefaultLimit = u64{1} << 26;

  explicit LogTable(const Field& field, u64 limit = kDefaultLimit);

  u64 log(Element a) const;
  Element exp(u64 k) const { return {exp_[k % group_order_]}; }
  u64 group_order() const noexcept { return group_order_; }
  u64 size() const noexcept { return group_order_; }

 private:
  u64 group_order_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace primpairs
