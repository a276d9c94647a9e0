// SPDX-License-Identifier: Apache-2.0
#include <numeric>

#include "ntcore.hpp"
#include "test_helpers.hpp"

using namespace primpairs;

namespace {

bool naive_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Factorization naive_factor(u64 n) {
  Factorization out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

u64 naive_phi(u64 m) {
  u64 c = 0;
  for (u64 a = 1; a <= m; ++a)
    if (std::gcd(a, m) == 1) ++c;
  return c;
}

bool naive_prime_power(u64 q) {
  const auto f = naive_factor(q);
  return f.size() == 1;
}

}  // namespace

TEST_CASE("factorize") {
  CHECK(factorize(1).empty());
  CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
  CHECK(factorize(9699690) ==
        Factorization{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}});
  for (u64 n = 1; n <= 20000; ++n) REQUIRE(factorize(n) == naive_factor(n));
  // Large semiprimes and primes exercise the rho and Miller-Rabin paths.
  const u64 a = 1000000007, b = 998244353;
  CHECK(factorize(a * b) == Factorization{{b, 1}, {a, 1}});
  CHECK(factorize((u64{1} << 61) - 1) == Factorization{{(u64{1} << 61) - 1, 1}});
  CHECK(factorize(u64{1} << 62) == Factorization{{2, 62}});
}

TEST_CASE("is_prime agrees with trial division") {
  for (u64 n = 0; n <= 100000; ++n) REQUIRE(is_prime(n) == naive_prime(n));
  CHECK(is_prime(4611686018427387847ULL));
  CHECK_FALSE(is_prime(4611686018427387849ULL));
}

TEST_CASE("profile examples") {
  const auto p12 = profile(12);
  CHECK(p12.omega == 2);
  CHECK(p12.w == 4);
  CHECK(p12.radical == 6);
  CHECK(p12.theta == mpq_class(1, 3));
  CHECK(p12.tau == mpq_class(3, 4));

  const auto p1 = profile(1);
  CHECK(p1.omega == 0);
  CHECK(p1.w == 1);
  CHECK(p1.theta == 1);
  CHECK(p1.tau == 1);

  const auto p30 = profile(30);
  CHECK(p30.omega == 3);
  CHECK(p30.w == 8);
  CHECK(p30.radical == 30);
  CHECK(p30.theta == mpq_class(4, 15));
}

TEST_CASE("profile properties") {
  for (u64 m = 2; m <= 10000; ++m) {
    const auto p = profile(m);
    mpq_class expected(naive_phi(m), m);
    expected.canonicalize();
    REQUIRE(p.theta == expected);
    REQUIRE(p.theta == profile(p.radical).theta);
    REQUIRE(p.tau > p.theta);
    REQUIRE(squarefree_divisors(m).size() == p.w);
    REQUIRE(p.w == (u64{1} << p.omega));
  }
}

TEST_CASE("squarefree divisors") {
  CHECK(squarefree_divisors(1) == std::vector<u64>{1});
  CHECK(squarefree_divisors(12) == std::vector<u64>{1, 2, 3, 6});
  CHECK(squarefree_divisors(30) == std::vector<u64>{1, 2, 3, 5, 6, 10, 15, 30});
  for (u64 m = 1; m <= 2000; ++m)
    for (u64 d : squarefree_divisors(m)) {
      REQUIRE(m % d == 0);
      for (const auto& f : naive_factor(d)) REQUIRE(f.exponent == 1);
    }
}

TEST_CASE("delta") {
  CHECK(delta(4, std::vector<u64>{}).value == 1);
  CHECK(delta(4, std::vector<u64>{7, 11}).value == mpq_class(5, 77));
  const mpq_class d = delta(2, std::vector<u64>{7, 11, 13, 17, 19}).value;
  CHECK(d > mpq_class(1557, 10000));
  CHECK(d < mpq_class(1558, 10000));
  // Strictly decreasing as primes are appended.
  std::vector<u64> ps;
  for (unsigned j = 2; j <= 4; ++j) {
    ps.clear();
    mpq_class prev = delta(j, ps).value;
    for (u64 p : first_primes(12)) {
      ps.push_back(p);
      const mpq_class cur = delta(j, ps).value;
      REQUIRE(cur < prev);
      prev = cur;
    }
  }
  CHECK(delta(2, std::vector<u64>{2, 3}).value < 0);
  CHECK_ERROR_CODE(delta(5, std::vector<u64>{7}), ErrorCode::InvalidParameters);
  CHECK_ERROR_CODE(delta(2, std::vector<u64>{7, 7}), ErrorCode::InvalidParameters);
}

TEST_CASE("primorial and first primes") {
  CHECK(first_primes(8) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(primorial(8) == 9699690);
  CHECK(primorial(0) == 1);
}

TEST_CASE("prime power decomposition") {
  CHECK(prime_power_decompose(49) == PrimePowerId{49, 7, 2});
  CHECK(prime_power_decompose(13) == PrimePowerId{13, 13, 1});
  CHECK(prime_power_decompose(1024) == PrimePowerId{1024, 2, 10});
  CHECK_ERROR_CODE(prime_power_decompose(12), ErrorCode::NotAPrimePower);
  CHECK_FALSE(as_prime_power(1).has_value());
}

TEST_CASE("enumerate prime powers") {
  std::vector<u64> small;
  for (const auto& id : enumerate_prime_powers(2, 10)) small.push_back(id.q);
  CHECK(small == std::vector<u64>{2, 3, 4, 5, 7, 8, 9});

  std::vector<u64> w1;
  for (const auto& id : enumerate_prime_powers(3, 18, 1u)) w1.push_back(id.q);
  for (u64 q : {3, 4, 5, 8, 9, 17}) CHECK(std::find(w1.begin(), w1.end(), q) != w1.end());

  std::vector<u64> naive;
  for (u64 q = 2; q <= 100000; ++q)
    if (naive_prime_power(q)) naive.push_back(q);
  std::vector<u64> fast;
  for (const auto& id : enumerate_prime_powers(2, 100000)) fast.push_back(id.q);
  CHECK(fast == naive);

  for (const auto& e : prime_power_entries(2, 20000)) {
    std::vector<u64> expected;
    for (const auto& f : naive_factor(e.id.q - 1)) expected.push_back(f.prime);
    REQUIRE(e.q_minus_1_primes == expected);
  }
}

TEST_CASE("omega 8 candidates") {
  const auto ids = enumerate_prime_powers(9699692, 51499999, 8u);
  CHECK(ids.size() == 49);
  CHECK(ids.back().q == 51269791);
}

TEST_CASE("rational formatting") {
  CHECK(to_string(mpq_class(3, 4)) == "3/4");
  CHECK(to_string(mpq_class(5)) == "5");
  CHECK(to_decimal(mpq_class(1, 3), 4).rfind("3.333", 0) == 0);
}
