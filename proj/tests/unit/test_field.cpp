// SPDX-License-Identifier: Apache-2.0
#include <numeric>
#include <random>
#include <set>

#include "field.hpp"
#include "test_helpers.hpp"

using namespace primpairs;

namespace {

// Schoolbook polynomial product reduced by the monic modulus, on codes.
u64 naive_mul(const Field& f, u64 a, u64 b) {
  const u64 p = f.characteristic();
  const unsigned r = f.degree();
  std::vector<u64> x(r), y(r), prod(2 * r, 0);
  for (unsigned i = 0; i < r; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (unsigned i = 0; i < r; ++i)
    for (unsigned j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  const auto& m = f.modulus();
  for (unsigned d = 2 * r - 1; d >= r && d > 0; --d) {
    const u64 c = prod[d];
    if (!c) continue;
    for (unsigned i = 0; i <= r; ++i) prod[d - r + i] = (prod[d - r + i] + (p - c) * m[i]) % p;
  }
  u64 code = 0;
  for (unsigned i = r; i-- > 0;) code = code * p + prod[i];
  return code;
}

u64 naive_order(const Field& f, Element a) {
  Element x = a;
  u64 n = 1;
  while (x.code != 1) {
    x = f.mul(x, a);
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("prime field basics") {
  const Field f13 = Field::build(13, 1);
  CHECK(f13.gamma().code == 2);
  CHECK(f13.inv(Element{6}).code == 11);
  CHECK(f13.pow(Element{2}, 3).code == 8);
  CHECK(f13.discrete_log(Element{8}) == 3);
  CHECK(f13.is_e_free(Element{4}, 3));
  CHECK_FALSE(f13.is_e_free(Element{4}, 2));
  CHECK(f13.is_primitive(Element{2}));
  CHECK_FALSE(f13.is_primitive(Element{4}));
  CHECK_ERROR_CODE(f13.inv(Element{0}), ErrorCode::DivisionByZero);
  CHECK_ERROR_CODE(f13.is_e_free(Element{4}, 5), ErrorCode::InvalidDivisor);
  CHECK_ERROR_CODE(Field::build(12, 1), ErrorCode::InvalidParameters);

  const Field f7 = Field::build(7);
  std::vector<u64> prims;
  for (u64 a = 1; a < 7; ++a)
    if (f7.is_primitive(Element{a})) prims.push_back(a);
  CHECK(prims == std::vector<u64>{3, 5});

  const Field f2 = Field::build(2);
  CHECK(f2.gamma().code == 1);
  CHECK(f2.is_primitive(Element{1}));
  CHECK(LogTable(f2).size() == 1);
  CHECK(LogTable(f2).log(Element{1}) == 0);
}

TEST_CASE("F_13 primitive list pairs inverses") {
  const Field f = Field::build(13);
  const auto prims = f.primitive_elements();
  REQUIRE(prims.size() == 4);
  std::set<u64> codes;
  for (auto a : prims) codes.insert(a.code);
  CHECK(codes == std::set<u64>{2, 6, 7, 11});
  for (size_t k = 0; k < prims.size(); ++k) CHECK(f.mul(prims[k], prims[prims.size() - 1 - k]).code == 1);
  CHECK(Field::build(7).primitive_elements().size() == 2);
  CHECK(Field::build(4).primitive_elements().size() == 2);
}

TEST_CASE("extension field modulus is the least primitive polynomial") {
  const Field f27 = Field::build(3, 3);
  const auto& m = f27.modulus();
  REQUIRE(m.size() == 4);
  CHECK(m[3] == 1);
  CHECK(f27.gamma().code == 3);
  CHECK(naive_order(f27, f27.gamma()) == 26);
  // No lexicographically smaller monic cubic (most significant first) has x of order 26.
  u64 own = m[2] * 9 + m[1] * 3 + m[0];
  for (u64 c = 0; c < own; ++c) {
    const u64 c0 = c % 3, c1 = (c / 3) % 3, c2 = c / 9;
    if (c0 == 0) continue;
    // Powers of x modulo x^3 + c2 x^2 + c1 x + c0.
    std::vector<u64> poly = {1, 0, 0};
    u64 order = 0;
    for (u64 k = 1; k <= 26; ++k) {
      const u64 top = poly[2];
      poly = {(3 - top * c0 % 3) % 3, (poly[0] + 3 - top * c1 % 3) % 3, (poly[1] + 3 - top * c2 % 3) % 3};
      if (poly == std::vector<u64>{1, 0, 0}) {
        order = k;
        break;
      }
    }
    CHECK(order != 26);
  }
}

TEST_CASE("field arithmetic agrees with a naive polynomial model") {
  for (u64 q : {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 243, 256, 343}) {
    const Field f = Field::build(q);
    CAPTURE(q);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<u64> d(0, q - 1);
    for (int i = 0; i < 400; ++i) {
      const u64 a = d(rng), b = d(rng);
      REQUIRE(f.mul(Element{a}, Element{b}).code == naive_mul(f, a, b));
      REQUIRE(f.sub(f.add(Element{a}, Element{b}), Element{b}).code == a);
      REQUIRE(f.add(Element{a}, f.neg(Element{a})).code == 0);
      if (a) {
        REQUIRE(f.mul(Element{a}, f.inv(Element{a})).code == 1);
        REQUIRE(f.pow(Element{a}, q - 1).code == 1);
      }
    }
    REQUIRE(naive_order(f, f.gamma()) == q - 1);
  }
}

TEST_CASE("primitive and free predicates for q <= 500") {
  for (const auto& id : enumerate_prime_powers(2, 500)) {
    const Field f = Field::build(id.q);
    const u64 n = id.q - 1;
    CAPTURE(id.q);
    u64 count = 0;
    std::vector<u64> all_divisors;
    for (u64 e = 1; e <= n; ++e)
      if (n % e == 0) all_divisors.push_back(e);
    const LogTable logs(f);
    for (u64 c = 1; c < id.q; ++c) {
      const Element a{c};
      const bool prim = f.is_primitive(a);
      count += prim;
      REQUIRE(prim == (naive_order(f, a) == n));
      REQUIRE(prim == f.is_primitive(f.inv(a)));
      const u64 l = f.discrete_log(a);
      REQUIRE(l == logs.log(a));
      REQUIRE(f.pow(f.gamma(), l).code == c);
      REQUIRE(logs.exp(l).code == c);
      REQUIRE(prim == (std::gcd(l, n) == 1));
      for (u64 e : all_divisors) REQUIRE(f.is_e_free(a, e) == f.is_e_free(a, profile(e).radical));
    }
    REQUIRE(count == profile(n).phi);
    REQUIRE(f.primitive_elements().size() == count);
    REQUIRE(f.discrete_log(f.gamma()) == (n == 1 ? 0 : 1));
    REQUIRE(f.discrete_log(f.one()) == 0);
  }
}

TEST_CASE("log table on larger fields") {
  for (u64 q : {65537, 59049, 65536, 99991}) {
    const Field f = Field::build(q);
    const LogTable t(f);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<u64> d(1, q - 1);
    for (int i = 0; i < 100; ++i) {
      const Element a{d(rng)};
      REQUIRE(t.log(a) == f.discrete_log(a));
    }
  }
  CHECK_ERROR_CODE(LogTable(Field::build(13), 8), ErrorCode::TooLarge);
}
