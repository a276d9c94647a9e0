// SPDX-License-Identifier: Apache-2.0
#include "screening.hpp"

#include <algorithm>
#include <thread>

namespace primpairs {

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::LiHan: return "LiHan";
    case Theorem::Thm2: return "Thm2";
    case Theorem::Thm3: return "Thm3";
    case Theorem::Thm6: return "Thm6";
    case Theorem::Thm7: return "Thm7";
    case Theorem::Thm8: return "Thm8";
    case Theorem::CorCow: return "CorCow";
    case Theorem::CorDiamond: return "CorDiamond";
  }
  return "?";
}

const char* to_string(ScreenStatus s) {
  switch (s) {
    case ScreenStatus::ProvedInT: return "ProvedInT";
    case ScreenStatus::ProvedInS: return "ProvedInS";
    case ScreenStatus::NeedsExplicitCheck: return "NeedsExplicitCheck";
  }
  return "?";
}

namespace {

mpq_class q_of(const QContext& ctx) { return mpq_class(mpz_class(ctx.id.q)); }
mpz_class z_of(u64 v) { return mpz_class(v); }

mpq_class pow_q(const mpq_class& x, unsigned e) {
  mpq_class out = 1;
  for (unsigned i = 0; i < e; ++i) out *= x;
  return out;
}

mpq_class universal_rational(u64 w) { return mpq_class(z_of(w)); }

int universal_epsilon(const QContext& ctx) { return ctx.id.q % 2 == 0 ? 1 : 2; }

}  // namespace

QContext QContext::of(u64 q) {
  QContext ctx;
  ctx.id = prime_power_decompose(q);
  if (q > 2)
    for (const auto& f : factorize(q - 1)) ctx.primes.push_back(f.prime);
  std::sort(ctx.primes.begin(), ctx.primes.end());
  ctx.theta = theta_of_primes(ctx.primes);
  ctx.tau = tau_of_primes(ctx.primes);
  return ctx;
}

QContext QContext::of(const PrimePowerEntry& entry) {
  QContext ctx;
  ctx.id = entry.id;
  ctx.primes = entry.q_minus_1_primes;
  ctx.theta = theta_of_primes(ctx.primes);
  ctx.tau = tau_of_primes(ctx.primes);
  return ctx;
}

SieveConfig make_config(const QContext& ctx, size_t s) {
  if (s > ctx.primes.size())
    throw Error(ErrorCode::InvalidParameters, "more sieving primes than prime divisors of q - 1");
  SieveConfig cfg;
  cfg.q = ctx.id;
  const size_t split = ctx.primes.size() - s;
  Factorization k_factors;
  for (size_t i = 0; i < split; ++i) {
    cfg.k *= ctx.primes[i];
    k_factors.push_back({ctx.primes[i], 1});
  }
  cfg.sieving_primes.assign(ctx.primes.begin() + static_cast<std::ptrdiff_t>(split), ctx.primes.end());
  cfg.k_profile = profile_from_factors(cfg.k, std::move(k_factors));
  cfg.theta_q_minus_1 = ctx.theta;
  cfg.delta2 = delta(2, cfg.sieving_primes);
  cfg.delta3 = delta(3, cfg.sieving_primes);
  cfg.delta4 = delta(4, cfg.sieving_primes);
  return cfg;
}

BoundReport lihan_bound(const QContext& ctx) {
  if (ctx.id.r != 1 || ctx.id.p == 2)
    throw Error(ErrorCode::NotApplicable, "the Li-Han bound needs an odd prime");
  const mpq_class p = q_of(ctx);
  const mpq_class w = universal_rational(ctx.w());
  const mpq_class center = pow_q(ctx.theta, 3) * ctx.tau * (p - 1) * (p - 1);
  const mpq_class err = 5 * pow_q(ctx.theta, 4) * pow_q(w, 4) * p;
  BoundReport r;
  r.theorem = Theorem::LiHan;
  r.lower_bound = {center, -err, z_of(ctx.id.q)};
  r.upper_bound = QuadraticSurd{center, err, z_of(ctx.id.q)};
  r.holds = r.lower_bound.sign() > 0;
  return r;
}

BoundReport thm2_bound(const QContext& ctx) {
  if (ctx.id.q <= 2) throw Error(ErrorCode::PreconditionFailed, "the character-sum bound needs q > 2");
  const mpq_class q = q_of(ctx);
  const mpq_class w = universal_rational(ctx.w());
  const mpq_class center = pow_q(ctx.theta, 3) * ctx.tau * (q - 1) * q;
  const mpq_class err = pow_q(ctx.theta, 4) * pow_q(w, 3) * (q - 1);
  BoundReport r;
  r.theorem = Theorem::Thm2;
  r.lower_bound = {center, -err, z_of(ctx.id.q)};
  r.upper_bound = QuadraticSurd{center, err, z_of(ctx.id.q)};
  r.holds = r.lower_bound.sign() > 0;
  return r;
}

BoundReport cor_cow(const QContext& ctx) {
  BoundReport r;
  r.theorem = Theorem::CorCow;
  r.lower_bound = QuadraticSurd::of_rational(q_of(ctx) - pow_q(universal_rational(ctx.w()), 6));
  r.holds = r.lower_bound.sign() > 0;
  return r;
}

BoundReport sieve_bound(const QContext& ctx, const SieveConfig& config, SieveVariant variant) {
  const mpq_class q = q_of(ctx);
  const auto& kp = config.k_profile;
  const mpq_class w = universal_rational(kp.w);
  const mpq_class w3 = pow_q(w, 3);
  BoundReport r;
  r.config = config;
  mpq_class a, b;
  if (variant == SieveVariant::Thm3) {
    if (sgn(config.delta4.value) <= 0) throw Error(ErrorCode::PreconditionFailed, "delta_4 is not positive");
    const mpq_class f = config.delta4.value * pow_q(kp.theta, 3) * (q - 1);
    a = f * kp.tau * q;
    b = -f * kp.theta * w3;
    r.theorem = Theorem::Thm3;
  } else {
    if (sgn(config.delta3.value) <= 0) throw Error(ErrorCode::PreconditionFailed, "delta_3 is not positive");
    const mpq_class f = kp.theta * kp.theta * config.theta_q_minus_1 * (q - 1);
    a = f * config.delta3.value * kp.tau * q;
    b = -f * kp.theta * w3;
    r.theorem = Theorem::Thm6;
  }
  r.lower_bound = {a, b, z_of(ctx.id.q)};
  r.holds = r.lower_bound.sign() > 0;
  return r;
}

BoundReport cor_diamond(const QContext& ctx, const SieveConfig& config) {
  if (sgn(config.delta4.value) <= 0) throw Error(ErrorCode::PreconditionFailed, "delta_4 is not positive");
  BoundReport r;
  r.theorem = Theorem::CorDiamond;
  r.config = config;
  r.lower_bound = QuadraticSurd::of_rational(q_of(ctx) - pow_q(universal_rational(config.k_profile.w), 6));
  r.holds = r.lower_bound.sign() > 0;
  return r;
}

int epsilon(const Field& field, Element u, Element v) {
  if (u.code == 0 || v.code == 0) throw Error(ErrorCode::InvalidParameters, "u and v must be non-zero");
  const u64 q = field.order();
  if (q % 2 == 0) return 1;
  const Element t = field.neg(field.mul(v, field.inv(u)));
  return field.pow(t, (q - 1) / 2) == field.one() ? 2 : 0;
}

BoundReport thm7_interval(const QContext& ctx, int eps) {
  if (ctx.id.q < 3) throw Error(ErrorCode::PreconditionFailed, "the Thm7 interval needs q >= 3");
  if (eps < 0 || eps > 2) throw Error(ErrorCode::InvalidParameters, "epsilon must be 0, 1 or 2");
  const mpq_class q = q_of(ctx);
  const mpq_class w = universal_rational(ctx.w());
  const mpq_class t2 = ctx.theta * ctx.theta;
  const mpq_class bracket = w * w - w - mpq_class(1, 2) * (1 / ctx.theta - 1);
  const mpq_class center = t2 * (q - 1 - eps);
  const mpq_class err_rational = t2 * eps * (w - 1);
  const mpq_class err_root = 2 * t2 * bracket;
  BoundReport r;
  r.theorem = Theorem::Thm7;
  r.epsilon = eps;
  r.lower_bound = {center - err_rational, -err_root, z_of(ctx.id.q)};
  r.upper_bound = QuadraticSurd{center + err_rational, err_root, z_of(ctx.id.q)};
  r.holds = r.lower_bound.sign() > 0;
  return r;
}

namespace {

mpq_class thm8_constant(const SieveConfig& config) {
  const mpq_class s(static_cast<long>(config.s()));
  return 2 * ((2 * s - 1) / config.delta2.value + 2);
}

// (q - C W / 2) - C (W^2 - W / 2) sqrt(q): sqrt(q) times the criterion gap.
QuadraticSurd thm8_margin(const QContext& ctx, const SieveConfig& config) {
  const mpq_class c = thm8_constant(config);
  const mpq_class w = universal_rational(config.k_profile.w);
  return {q_of(ctx) - c * w / 2, -c * (w * w - w / 2), z_of(ctx.id.q)};
}

}  // namespace

BoundReport thm8_criterion(const QContext& ctx, const SieveConfig& config) {
  if (ctx.id.q <= 3) throw Error(ErrorCode::PreconditionFailed, "the Thm8 criterion needs q > 3");
  if (sgn(config.delta2.value) <= 0) throw Error(ErrorCode::PreconditionFailed, "delta_2 is not positive");
  const QuadraticSurd margin = thm8_margin(ctx, config);
  BoundReport r;
  r.theorem = Theorem::Thm8;
  r.config = config;
  r.epsilon = universal_epsilon(ctx);
  r.lower_bound = margin.scaled(config.k_profile.theta * config.k_profile.theta);
  r.holds = margin.sign() > 0;
  return r;
}

std::optional<SieveConfig> best_config(const QContext& ctx, ConfigObjective objective, size_t min_s) {
  const size_t omega = ctx.primes.size();
  if (omega == 0) return std::nullopt;
  std::optional<SieveConfig> best;
  QuadraticSurd best_score;
  for (size_t s = min_s; s + 1 <= omega; ++s) {
    SieveConfig cfg = make_config(ctx, s);
    QuadraticSurd score;
    switch (objective) {
      case ConfigObjective::Thm8:
        if (sgn(cfg.delta2.value) <= 0) continue;
        score = thm8_margin(ctx, cfg);
        break;
      case ConfigObjective::Thm3:
        if (sgn(cfg.delta4.value) <= 0) continue;
        score = sieve_bound(ctx, cfg, SieveVariant::Thm3).lower_bound;
        break;
      case ConfigObjective::Thm6:
        if (sgn(cfg.delta3.value) <= 0) continue;
        score = sieve_bound(ctx, cfg, SieveVariant::Thm6).lower_bound;
        break;
    }
    if (!best || compare(score, best_score) > 0) {
      best = std::move(cfg);
      best_score = std::move(score);
    }
  }
  return best;
}

ScreeningVerdict screen(const QContext& ctx, const ScreenOptions& options) {
  ScreeningVerdict v;
  v.q = ctx.id;
  v.omega = ctx.omega();
  const u64 q = ctx.id.q;
  if (q <= 2) return v;

  auto record = [&](BoundReport r, ScreenStatus proves) {
    const bool proved = r.holds && v.status == ScreenStatus::NeedsExplicitCheck;
    if (proved) {
      v.status = proves;
      v.witness = r;
    }
    v.all_reports.push_back(std::move(r));
    return proved;
  };
  auto done = [&] { return !options.exhaustive && v.status != ScreenStatus::NeedsExplicitCheck; };

  const bool all = options.policy == ScreenPolicy::All;
  if (all || v.omega == 1) record(thm7_interval(ctx, universal_epsilon(ctx)), ScreenStatus::ProvedInT);
  if (done()) return v;
  if (q > 3 && (all || v.omega >= 2)) {
    if (auto cfg = best_config(ctx, ConfigObjective::Thm8))
      record(thm8_criterion(ctx, *cfg), ScreenStatus::ProvedInT);
  }
  if (done() || (options.target == ScreenTarget::T && !options.exhaustive)) return v;

  // CorCow and CorDiamond pre-filters imply the bound they precede, so they only
  // save the surd evaluation.
  if (!record(cor_cow(ctx), ScreenStatus::ProvedInS) || options.exhaustive)
    record(thm2_bound(ctx), ScreenStatus::ProvedInS);
  if (done()) return v;

  for (size_t s = 1; s < v.omega; ++s) {
    SieveConfig cfg = make_config(ctx, s);
    if (sgn(cfg.delta4.value) <= 0) continue;
    BoundReport r = cor_diamond(ctx, cfg);
    if (r.holds || options.exhaustive) {
      record(std::move(r), ScreenStatus::ProvedInS);
      if (done()) return v;
    }
  }
  if (auto cfg = best_config(ctx, ConfigObjective::Thm3))
    record(sieve_bound(ctx, *cfg, SieveVariant::Thm3), ScreenStatus::ProvedInS);
  if (done()) return v;
  if (auto cfg = best_config(ctx, ConfigObjective::Thm6))
    record(sieve_bound(ctx, *cfg, SieveVariant::Thm6), ScreenStatus::ProvedInS);
  return v;
}

ScreeningVerdict screen(u64 q, const ScreenOptions& options) { return screen(QContext::of(q), options); }

std::vector<ScreeningVerdict> screen_range(u64 lo, u64 hi, const ScreenOptions& options, unsigned jobs,
                                           bool needs_check_only) {
  constexpr u64 kBlock = u64{1} << 20;
  std::vector<ScreeningVerdict> out;
  if (hi < lo) return out;
  jobs = std::max(1u, jobs);
  for (u64 start = lo;; start += kBlock) {
    const u64 stop = (hi - start < kBlock) ? hi : start + kBlock - 1;
    std::vector<PrimePowerEntry> entries;
    for_each_prime_power(start, stop, std::nullopt, [&](const PrimePowerEntry& e) { entries.push_back(e); });
    std::vector<std::optional<ScreeningVerdict>> slots(entries.size());
    auto work = [&](unsigned t) {
      for (size_t i = t; i < entries.size(); i += jobs) {
        ScreeningVerdict v = screen(QContext::of(entries[i]), options);
        if (!needs_check_only || v.status == ScreenStatus::NeedsExplicitCheck) slots[i] = std::move(v);
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (auto& slot : slots)
      if (slot) out.push_back(std::move(*slot));
    if (stop == hi) break;
  }
  return out;
}

namespace {

// Largest integer Q >= 0 with (Q - c) - b sqrt(Q) <= 0, for b, c >= 0.
mpz_class largest_failing(const mpq_class& c, const mpq_class& b) {
  auto passes = [&](const mpz_class& n) { return surd_sign(mpq_class(n) - c, -b, n) > 0; };
  // sqrt(Q) = (b + sqrt(b^2 + 4c)) / 2 at the boundary.
  mpf_class bf(b, 256), cf(c, 256), disc(0, 256), root(0, 256);
  disc = bf * bf + 4 * cf;
  mpf_sqrt(root.get_mpf_t(), disc.get_mpf_t());
  mpf_class x = (bf + root) / 2;
  mpf_class x2 = x * x;
  mpz_class guess(x2);
  while (guess > 0 && passes(guess)) --guess;
  while (!passes(guess + 1)) ++guess;
  return guess;
}

}  // namespace

GenericWindow generic_window(unsigned omega) {
  if (omega == 0 || omega > 64) throw Error(ErrorCode::InvalidParameters, "omega out of range");
  GenericWindow best;
  if (omega == 1) {
    // Thm7 with epsilon = 2 and theta <= 1: q - 1 - 2W - 2(W^2 - W) sqrt(q) > 0.
    const mpq_class w = 2;
    best.s = 0;
    best.q_max = largest_failing(1 + 2 * w, 2 * (w * w - w));
    return best;
  }
  const auto primes = first_primes(omega);
  bool have = false;
  for (unsigned s = 1; s < omega; ++s) {
    const std::span<const u64> sieving(primes.data() + (omega - s), s);
    DeltaValue d2 = delta(2, sieving);
    if (sgn(d2.value) <= 0) continue;
    const mpq_class w(mpz_class(1) << (omega - s));
    const mpq_class c = 2 * ((mpq_class(2 * s) - 1) / d2.value + 2);
    mpz_class qmax = largest_failing(c * w / 2, c * (w * w - w / 2));
    if (!have || qmax < best.q_max) {
      have = true;
      best.s = s;
      best.q_max = qmax;
      best.delta2 = std::move(d2);
    }
  }
  if (!have) throw Error(ErrorCode::InvalidParameters, "no sieve split with positive delta_2");
  return best;
}

SurveyRow survey(unsigned omega, unsigned jobs) {
  if (omega < 1 || omega > 8) throw Error(ErrorCode::InvalidParameters, "survey omega must be in 1..8");
  SurveyRow row;
  row.omega = omega;
  const GenericWindow window = generic_window(omega);
  row.chosen_s = window.s;
  row.q_min = primorial(omega).get_ui() + 1;
  row.q_max = window.q_max.get_ui();

  const auto entries = prime_power_entries(row.q_min, row.q_max, omega);
  row.candidates = entries.size();
  std::vector<char> fails(entries.size(), 0);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(entries.size())));
  auto work = [&](unsigned t) {
    for (size_t i = t; i < entries.size(); i += workers)
      fails[i] = screen(QContext::of(entries[i])).status == ScreenStatus::NeedsExplicitCheck;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  auto note = [](Extremes& e, u64 q) {
    if (e.count == 0) e.least = q;
    e.greatest = q;
    ++e.count;
  };
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!fails[i]) continue;
    const auto& id = entries[i].id;
    row.failing_list.push_back(id.q);
    note(id.r == 1 ? row.failing_primes : row.failing_prime_powers, id.q);
  }
  return row;
}

namespace {

constexpr unsigned kThresholdScanLimit = 400;

bool worst_case_holds(ThresholdVariant variant, unsigned omega) {
  const auto primes = first_primes(omega);
  const mpz_class m = primorial(omega);
  const mpq_class q(m + 1);
  const mpq_class n(m);
  const mpq_class theta = theta_of_primes(primes);
  const mpq_class tau = tau_of_primes(primes);
  const mpq_class w(mpz_class(1) << omega);
  switch (variant) {
    case ThresholdVariant::Thm2:
      // tau^2 q > theta^2 W^6
      return tau * tau * q > theta * theta * pow_q(w, 6);
    case ThresholdVariant::LiHan:
      // tau (p - 1)^2 > 5 theta W^4 p^{3/2}, squared.
      return tau * tau * pow_q(n, 4) > 25 * theta * theta * pow_q(w, 8) * pow_q(q, 3);
    case ThresholdVariant::Thm7Strong:
      return q > 4 * pow_q(w, 4);
  }
  return false;
}

}  // namespace

unsigned auto_threshold(ThresholdVariant variant) {
  unsigned threshold = kThresholdScanLimit + 1;
  for (unsigned omega = kThresholdScanLimit; omega >= 1; --omega) {
    if (!worst_case_holds(variant, omega)) break;
    threshold = omega;
  }
  if (threshold > kThresholdScanLimit)
    throw Error(ErrorCode::InvalidParameters, "criterion does not hold within the scan limit");
  return threshold;
}

bool generic_thm8_square_form(unsigned omega, unsigned s) {
  if (s == 0 || s >= omega) throw Error(ErrorCode::InvalidParameters, "s must lie in [1, omega - 1]");
  const auto primes = first_primes(omega);
  const std::span<const u64> sieving(primes.data() + (omega - s), s);
  const DeltaValue d2 = delta(2, sieving);
  if (sgn(d2.value) <= 0) return false;
  const mpq_class q(primorial(omega) + 1);
  const mpq_class w(mpz_class(1) << (omega - s));
  const mpq_class c = (mpq_class(2 * s) - 1) / d2.value + 2;
  return q > 4 * c * c * pow_q(w, 4);
}

}  // namespace primpairs
