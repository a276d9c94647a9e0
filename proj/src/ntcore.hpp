// SPDX-License-Identifier: Apache-2.0
//
// Integer and rational statistics of the multiplicative group order:
// factorizations, radicals, W = 2^omega, theta = phi/m, tau and the sieve
// slack values delta_j. Rationals are GMP rationals kept in lowest terms.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace primpairs {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimeFactor {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

using Factorization = std::vector<PrimeFactor>;

struct PrimePowerId {
  u64 q = 0;
  u64 p = 0;
  unsigned r = 0;

  friend bool operator==(const PrimePowerId&, const PrimePowerId&) = default;
};

struct ArithmeticProfile {
  u64 m = 1;
  Factorization factors;
  unsigned omega = 0;
  u64 radical = 1;
  u64 w = 1;
  u64 phi = 1;
  mpq_class theta{1};
  mpq_class tau{1};

  std::vector<u64> primes() const;
};

struct DeltaValue {
  unsigned j = 0;
  std::vector<u64> primes;
  mpq_class value{1};
};

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 gcd(u64 a, u64 b);
u64 checked_pow(u64 base, unsigned exp);

bool is_prime(u64 n);

// Primes up to `limit`, from a process-wide cache for limit <= 10^6.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);
const std::vector<std::uint32_t>& cached_small_primes();

// The first `count` primes (2, 3, 5, ...).
std::vector<u64> first_primes(unsigned count);
mpz_class primorial(unsigned count);

Factorization factorize(u64 n);

ArithmeticProfile profile(u64 m);
ArithmeticProfile profile_from_factors(u64 m, Factorization factors);

// theta and tau of the radical formed by `primes` (distinct, any order).
mpq_class theta_of_primes(std::span<const u64> primes);
mpq_class tau_of_primes(std::span<const u64> primes);

DeltaValue delta(unsigned j, std::span<const u64> primes);

std::vector<u64> squarefree_divisors(u64 m);

std::optional<PrimePowerId> as_prime_power(u64 q);
PrimePowerId prime_power_decompose(u64 q);

// A prime power q together with the distinct primes of q - 1, ascending.
struct PrimePowerEntry {
  PrimePowerId id;
  std::vector<u64> q_minus_1_primes;
};

// Visits every prime power q in [lo, hi] (inclusive) in ascending order.
// When omega_filter is set only q with omega(q - 1) equal to it are visited.
// Works segment by segment; memory is proportional to the segment, not hi.
void for_each_prime_power(u64 lo, u64 hi, std::optional<unsigned> omega_filter,
                          const std::function<void(const PrimePowerEntry&)>& visit);

std::vector<PrimePowerId> enumerate_prime_powers(u64 lo, u64 hi,
                                                 std::optional<unsigned> omega_filter = {});

// Same as for_each_prime_power but materialized; uses the on-disk cache
// directory named by PRIMPAIRS_SIEVE_CACHE when that variable is set.
std::vector<PrimePowerEntry> prime_power_entries(u64 lo, u64 hi,
                                                 std::optional<unsigned> omega_filter = {});

std::string to_string(const mpq_class& value);
// Decimal rendering with `digits` significant digits.
std::string to_decimal(const mpq_class& value, int digits = 12);

}  // namespace primpairs
