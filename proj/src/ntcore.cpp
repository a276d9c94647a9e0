// SPDX-License-Identifier: Apache-2.0
#include "ntcore.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <numeric>

namespace primpairs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::NotAPrimePower: return "NotAPrimePower";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InvalidDivisor: return "InvalidDivisor";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

std::vector<u64> ArithmeticProfile::primes() const {
  std::vector<u64> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 checked_pow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base)
      throw Error(ErrorCode::TooLarge, "integer power overflows 64 bits");
    result *= base;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for every n < 2^64.
  for (u64 a : kSmall) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<std::uint32_t>& cached_small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(1'000'000);
  return primes;
}

std::vector<u64> first_primes(unsigned count) {
  std::vector<u64> out;
  const auto& small = cached_small_primes();
  for (unsigned i = 0; i < count && i < small.size(); ++i) out.push_back(small[i]);
  if (out.size() < count) throw Error(ErrorCode::TooLarge, "too many primes requested");
  return out;
}

mpz_class primorial(unsigned count) {
  mpz_class product = 1;
  for (u64 p : first_primes(count)) product *= static_cast<unsigned long>(p);
  return product;
}

namespace {

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

Factorization factorize(u64 n) {
  if (n == 0) throw Error(ErrorCode::InvalidParameters, "factorize requires n >= 1");
  Factorization out;
  for (std::uint32_t p : cached_small_primes()) {
    const u64 pp = p;
    if (pp * pp > n) break;
    if (n % pp != 0) continue;
    unsigned e = 0;
    while (n % pp == 0) {
      n /= pp;
      ++e;
    }
    out.push_back({pp, e});
  }
  if (n > 1) {
    std::vector<u64> rest;
    split_large(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!out.empty() && out.back().prime == p)
        ++out.back().exponent;
      else
        out.push_back({p, 1});
    }
  }
  return out;
}

mpq_class theta_of_primes(std::span<const u64> primes) {
  mpz_class num = 1, den = 1;
  for (u64 l : primes) {
    num *= static_cast<unsigned long>(l - 1);
    den *= static_cast<unsigned long>(l);
  }
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

mpq_class tau_of_primes(std::span<const u64> primes) {
  // 1 - 1/(l-1) + 1/(l-1)^2 = (t^2 - t + 1) / t^2 with t = l - 1.
  mpz_class num = 1, den = 1;
  for (u64 l : primes) {
    mpz_class t = static_cast<unsigned long>(l - 1);
    num *= t * t - t + 1;
    den *= t * t;
  }
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

ArithmeticProfile profile_from_factors(u64 m, Factorization factors) {
  ArithmeticProfile prof;
  prof.m = m;
  prof.factors = std::move(factors);
  prof.omega = static_cast<unsigned>(prof.factors.size());
  prof.radical = 1;
  prof.phi = 1;
  for (const auto& f : prof.factors) {
    prof.radical *= f.prime;
    prof.phi *= checked_pow(f.prime, f.exponent - 1) * (f.prime - 1);
  }
  prof.w = u64{1} << prof.omega;
  const auto ps = prof.primes();
  prof.theta = theta_of_primes(ps);
  prof.tau = tau_of_primes(ps);
  return prof;
}

ArithmeticProfile profile(u64 m) { return profile_from_factors(m, factorize(m)); }

DeltaValue delta(unsigned j, std::span<const u64> primes) {
  if (j < 2 || j > 4) throw Error(ErrorCode::InvalidParameters, "delta is defined for j = 2, 3, 4");
  DeltaValue out;
  out.j = j;
  out.primes.assign(primes.begin(), primes.end());
  std::sort(out.primes.begin(), out.primes.end());
  if (std::adjacent_find(out.primes.begin(), out.primes.end()) != out.primes.end())
    throw Error(ErrorCode::InvalidParameters, "sieving primes must be distinct");
  mpq_class sum = 0;
  for (u64 p : out.primes) sum += mpq_class(1, static_cast<unsigned long>(p));
  out.value = 1 - mpq_class(j) * sum;
  out.value.canonicalize();
  return out;
}

std::vector<u64> squarefree_divisors(u64 m) {
  std::vector<u64> divs{1};
  for (const auto& f : factorize(m)) {
    const size_t n = divs.size();
    for (size_t i = 0; i < n; ++i) divs.push_back(divs[i] * f.prime);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::optional<PrimePowerId> as_prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  const auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return PrimePowerId{q, f[0].prime, f[0].exponent};
}

PrimePowerId prime_power_decompose(u64 q) {
  if (q < 2) throw Error(ErrorCode::InvalidParameters, "prime power must be >= 2");
  auto id = as_prime_power(q);
  if (!id) throw Error(ErrorCode::NotAPrimePower, std::to_string(q) + " is not a prime power");
  return *id;
}

std::vector<PrimePowerId> enumerate_prime_powers(u64 lo, u64 hi,
                                                 std::optional<unsigned> omega_filter) {
  std::vector<PrimePowerId> out;
  for_each_prime_power(lo, hi, omega_filter,
                       [&](const PrimePowerEntry& e) { out.push_back(e.id); });
  return out;
}

std::string to_string(const mpq_class& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const mpq_class& value, int digits) {
  mpf_class f(value, 512);
  char buf[128];
  gmp_snprintf(buf, sizeof buf, "%.*Fe", digits - 1, f.get_mpf_t());
  return buf;
}

}  // namespace primpairs
