// SPDX-License-Identifier: Apache-2.0
//
// Explicit membership criteria for the sets S (primitive pairs) and T
// (primitive elements), evaluated in exact arithmetic.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "field.hpp"
#include "ntcore.hpp"
#include "surd.hpp"

namespace primpairs {

enum class Theorem { LiHan, Thm2, Thm3, Thm6, Thm7, Thm8, CorCow, CorDiamond };
const char* to_string(Theorem t);

// q together with the distinct primes of q - 1 and their statistics.
struct QContext {
  PrimePowerId id;
  std::vector<u64> primes;  // ascending
  mpq_class theta{1};
  mpq_class tau{1};

  unsigned omega() const { return static_cast<unsigned>(primes.size()); }
  u64 w() const { return u64{1} << primes.size(); }

  static QContext of(u64 q);
  static QContext of(const PrimePowerEntry& entry);
};

struct SieveConfig {
  PrimePowerId q;
  u64 k = 1;
  std::vector<u64> sieving_primes;
  ArithmeticProfile k_profile;
  mpq_class theta_q_minus_1{1};
  DeltaValue delta2, delta3, delta4;

  size_t s() const { return sieving_primes.size(); }
};

// Sieve the s largest primes of Rad(q - 1); k keeps the rest.
SieveConfig make_config(const QContext& ctx, size_t s);

struct BoundReport {
  Theorem theorem = Theorem::Thm2;
  std::optional<SieveConfig> config;
  // Certified lower bound on N or M, or the margin of the tested inequality.
  QuadraticSurd lower_bound;
  std::optional<QuadraticSurd> upper_bound;
  bool holds = false;
  std::optional<int> epsilon;
};

BoundReport lihan_bound(const QContext& ctx);
BoundReport thm2_bound(const QContext& ctx);
BoundReport cor_cow(const QContext& ctx);

enum class SieveVariant { Thm3, Thm6 };
BoundReport sieve_bound(const QContext& ctx, const SieveConfig& config, SieveVariant variant);
BoundReport cor_diamond(const QContext& ctx, const SieveConfig& config);

// Number of roots of u a^2 + v: 0 or 2 for odd q, 1 for even q.
int epsilon(const Field& field, Element u, Element v);

BoundReport thm7_interval(const QContext& ctx, int eps);
BoundReport thm8_criterion(const QContext& ctx, const SieveConfig& config);

enum class ConfigObjective { Thm3, Thm6, Thm8 };
// Sweeps s over [min_s, omega - 1]; ties go to the smaller s. Returns
// nullopt when no s in range satisfies the objective's delta precondition.
std::optional<SieveConfig> best_config(const QContext& ctx, ConfigObjective objective,
                                       size_t min_s = 0);

enum class ScreenTarget { T, S };
// Survey policy: Thm7 for omega(q - 1) = 1, Thm8 otherwise, exactly as in
// the candidate survey. All: Thm7 and Thm8 for every q.
enum class ScreenPolicy { Survey, All };

struct ScreenOptions {
  ScreenTarget target = ScreenTarget::T;
  ScreenPolicy policy = ScreenPolicy::Survey;
  // Evaluate every applicable criterion instead of stopping at the first proof.
  bool exhaustive = false;
};

enum class ScreenStatus { ProvedInT, ProvedInS, NeedsExplicitCheck };
const char* to_string(ScreenStatus s);

struct ScreeningVerdict {
  PrimePowerId q;
  unsigned omega = 0;
  ScreenStatus status = ScreenStatus::NeedsExplicitCheck;
  std::optional<BoundReport> witness;
  std::vector<BoundReport> all_reports;
};

ScreeningVerdict screen(const QContext& ctx, const ScreenOptions& options = {});
ScreeningVerdict screen(u64 q, const ScreenOptions& options = {});

// Screens every prime power in [lo, hi] in ascending order, sharded over
// `jobs` threads block by block. Only NeedsExplicitCheck verdicts are kept
// when needs_check_only is set.
std::vector<ScreeningVerdict> screen_range(u64 lo, u64 hi, const ScreenOptions& options,
                                           unsigned jobs = 1, bool needs_check_only = false);

struct Extremes {
  size_t count = 0;
  u64 least = 0;
  u64 greatest = 0;
};

struct SurveyRow {
  unsigned omega = 0;
  unsigned chosen_s = 0;
  u64 q_min = 0;
  u64 q_max = 0;
  size_t candidates = 0;
  Extremes failing_primes;
  Extremes failing_prime_powers;
  std::vector<u64> failing_list;
};

// Worst-case (q - 1 = product of the first omega primes) upper limit of the
// survey window: the largest integer q at which the generic criterion still
// fails, with the s that minimizes it.
struct GenericWindow {
  unsigned s = 0;
  mpz_class q_max;
  std::optional<DeltaValue> delta2;
};
GenericWindow generic_window(unsigned omega);

SurveyRow survey(unsigned omega, unsigned jobs = 1);

enum class ThresholdVariant { LiHan, Thm2, Thm7Strong };
// Least omega from which the criterion holds for the primorial worst case
// (q - 1 = primorial(omega), W = 2^omega, theta and tau at the primorial).
unsigned auto_threshold(ThresholdVariant variant);

// Sufficient form used for 9 <= omega <= 16:
// q > 4((2s - 1)/delta2 + 2)^2 W(k)^4 at the primorial worst case.
bool generic_thm8_square_form(unsigned omega, unsigned s);

}  // namespace primpairs
