// SPDX-License-Identifier: Apache-2.0
#include "primpairs/primpairs.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "field.hpp"
#include "report.hpp"
#include "screening.hpp"
#include "verify.hpp"

using namespace primpairs;

struct ppr_field {
  Field field;
};

struct ppr_report {
  RunReport report;
};

namespace {

thread_local std::string g_last_error;

ppr_status from_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidParameters: return PPR_ERR_INVALID_PARAMETERS;
    case ErrorCode::NotAPrimePower: return PPR_ERR_NOT_A_PRIME_POWER;
    case ErrorCode::DivisionByZero: return PPR_ERR_DIVISION_BY_ZERO;
    case ErrorCode::InvalidDivisor: return PPR_ERR_INVALID_DIVISOR;
    case ErrorCode::TooLarge: return PPR_ERR_TOO_LARGE;
    case ErrorCode::NotApplicable: return PPR_ERR_NOT_APPLICABLE;
    case ErrorCode::PreconditionFailed: return PPR_ERR_PRECONDITION_FAILED;
  }
  return PPR_ERR_INTERNAL;
}

template <class Fn>
ppr_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PPR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return from_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PPR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PPR_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidParameters, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Element checked(const Field& f, uint64_t code) { return f.element(code); }

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

ScreenOptions to_options(const ppr_screen_options& o) {
  ScreenOptions s;
  s.target = o.target == PPR_TARGET_S ? ScreenTarget::S : ScreenTarget::T;
  s.policy = o.policy == PPR_POLICY_ALL ? ScreenPolicy::All : ScreenPolicy::Survey;
  s.exhaustive = o.exhaustive != 0;
  return s;
}

unsigned omega_of(u64 q) { return q <= 2 ? 0 : static_cast<unsigned>(factorize(q - 1).size()); }

Algorithm to_algorithm(ppr_algorithm a) {
  switch (a) {
    case PPR_ALGO_LOGS: return Algorithm::Algo1;
    case PPR_ALGO_PAIRS: return Algorithm::Algo2;
    case PPR_ALGO_IE: return Algorithm::Algo3;
    case PPR_ALGO_ORACLE: return Algorithm::Oracle;
  }
  throw Error(ErrorCode::InvalidParameters, "unknown algorithm");
}

void verify_one(RunReport& rep, u64 q, const ppr_verify_options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const MembershipSet set = o.set == PPR_SET_S ? MembershipSet::S : MembershipSet::T;
  const MembershipResult res = verify_membership(q, set, to_algorithm(o.algorithm), std::max(1u, o.jobs));
  ReportRecord rec = verify_record(res, omega_of(q));
  rec.elapsed_ms = ms_since(t0);
  rep.add(std::move(rec));
}

void check_verify_options(const ppr_verify_options& o) {
  const bool s = o.set == PPR_SET_S;
  if (s && !(o.algorithm == PPR_ALGO_PAIRS || o.algorithm == PPR_ALGO_ORACLE))
    throw Error(ErrorCode::InvalidParameters, "set S is verified by the pair search or the oracle");
  if (!s && o.algorithm == PPR_ALGO_PAIRS)
    throw Error(ErrorCode::InvalidParameters, "set T is verified by logs, ie or the oracle");
}

}  // namespace

extern "C" {

const char* ppr_version(void) { return "0.3.0"; }

const char* ppr_status_string(ppr_status status) {
  switch (status) {
    case PPR_OK: return "ok";
    case PPR_ERR_INVALID_PARAMETERS: return "invalid parameters";
    case PPR_ERR_NOT_A_PRIME_POWER: return "not a prime power";
    case PPR_ERR_DIVISION_BY_ZERO: return "division by zero";
    case PPR_ERR_INVALID_DIVISOR: return "invalid divisor";
    case PPR_ERR_TOO_LARGE: return "too large";
    case PPR_ERR_NOT_APPLICABLE: return "not applicable";
    case PPR_ERR_PRECONDITION_FAILED: return "precondition failed";
    case PPR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ppr_last_error(void) { return g_last_error.c_str(); }

void ppr_string_free(char* s) { std::free(s); }

ppr_status ppr_is_prime(uint64_t n, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = is_prime(n) ? 1 : 0;
  });
}

ppr_status ppr_prime_power(uint64_t q, uint64_t* p, unsigned* r) {
  return guarded([&] {
    require(p, "p");
    require(r, "r");
    const auto id = prime_power_decompose(q);
    *p = id.p;
    *r = id.r;
  });
}

ppr_status ppr_factorize(uint64_t n, uint64_t* primes, unsigned* exponents, size_t cap, size_t* len) {
  return guarded([&] {
    require(len, "len");
    if (n == 0) throw Error(ErrorCode::InvalidParameters, "cannot factor 0");
    const auto f = factorize(n);
    *len = f.size();
    for (size_t i = 0; i < f.size() && i < cap; ++i) {
      if (primes) primes[i] = f[i].prime;
      if (exponents) exponents[i] = f[i].exponent;
    }
  });
}

ppr_status ppr_theta(uint64_t m, char** out) {
  return guarded([&] {
    require(out, "out");
    if (m == 0) throw Error(ErrorCode::InvalidParameters, "theta needs m >= 1");
    *out = dup_string(to_string(profile(m).theta));
  });
}

ppr_status ppr_delta(unsigned j, const uint64_t* primes, size_t n, char** out) {
  return guarded([&] {
    require(out, "out");
    if (n) require(primes, "primes");
    std::vector<u64> ps(primes, primes + n);
    *out = dup_string(to_string(delta(j, ps).value));
  });
}

ppr_status ppr_field_create(uint64_t q, ppr_field** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ppr_field{Field::build(q)};
  });
}

ppr_status ppr_field_create_pr(uint64_t p, unsigned r, ppr_field** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ppr_field{Field::build(p, r)};
  });
}

void ppr_field_destroy(ppr_field* field) { delete field; }

ppr_status ppr_field_order(const ppr_field* field, uint64_t* q, uint64_t* p, unsigned* r) {
  return guarded([&] {
    require(field, "field");
    const auto& id = field->field.id();
    if (q) *q = id.q;
    if (p) *p = id.p;
    if (r) *r = id.r;
  });
}

ppr_status ppr_field_gamma(const ppr_field* field, uint64_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.gamma().code;
  });
}

ppr_status ppr_field_modulus(const ppr_field* field, uint64_t* coeffs, size_t cap, size_t* len) {
  return guarded([&] {
    require(field, "field");
    require(len, "len");
    const auto& m = field->field.modulus();
    *len = m.size();
    for (size_t i = 0; i < m.size() && i < cap && coeffs; ++i) coeffs[i] = m[i];
  });
}

#define PPR_BINARY(name, op)                                                              \
  ppr_status name(const ppr_field* field, uint64_t a, uint64_t b, uint64_t* out) {        \
    return guarded([&] {                                                                  \
      require(field, "field");                                                            \
      require(out, "out");                                                                \
      const Field& f = field->field;                                                      \
      *out = f.op(checked(f, a), checked(f, b)).code;                                     \
    });                                                                                   \
  }

PPR_BINARY(ppr_field_add, add)
PPR_BINARY(ppr_field_sub, sub)
PPR_BINARY(ppr_field_mul, mul)
#undef PPR_BINARY

ppr_status ppr_field_neg(const ppr_field* field, uint64_t a, uint64_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.neg(checked(field->field, a)).code;
  });
}

ppr_status ppr_field_inv(const ppr_field* field, uint64_t a, uint64_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.inv(checked(field->field, a)).code;
  });
}

ppr_status ppr_field_pow(const ppr_field* field, uint64_t a, uint64_t e, uint64_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.pow(checked(field->field, a), e).code;
  });
}

ppr_status ppr_field_log(const ppr_field* field, uint64_t a, uint64_t* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.discrete_log(checked(field->field, a));
  });
}

ppr_status ppr_field_is_primitive(const ppr_field* field, uint64_t a, int* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.is_primitive(checked(field->field, a)) ? 1 : 0;
  });
}

ppr_status ppr_field_is_e_free(const ppr_field* field, uint64_t a, uint64_t e, int* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    *out = field->field.is_e_free(checked(field->field, a), e) ? 1 : 0;
  });
}

ppr_status ppr_field_epsilon(const ppr_field* field, uint64_t u, uint64_t v, int* out) {
  return guarded([&] {
    require(field, "field");
    require(out, "out");
    const Field& f = field->field;
    *out = epsilon(f, checked(f, u), checked(f, v));
  });
}

void ppr_report_destroy(ppr_report* report) { delete report; }

size_t ppr_report_size(const ppr_report* report) { return report ? report->report.size() : 0; }

ppr_status ppr_report_q(const ppr_report* report, size_t index, uint64_t* q) {
  return guarded([&] {
    require(report, "report");
    require(q, "q");
    if (index >= report->report.size()) throw Error(ErrorCode::InvalidParameters, "record index out of range");
    *q = report->report.record(index).q;
  });
}

ppr_status ppr_report_flagged(const ppr_report* report, size_t index, int* flagged) {
  return guarded([&] {
    require(report, "report");
    require(flagged, "flagged");
    if (index >= report->report.size()) throw Error(ErrorCode::InvalidParameters, "record index out of range");
    *flagged = report->report.record(index).flagged ? 1 : 0;
  });
}

ppr_status ppr_report_total(const ppr_report* report, const char* key, uint64_t* out) {
  return guarded([&] {
    require(report, "report");
    require(key, "key");
    require(out, "out");
    const auto& totals = report->report.totals();
    auto it = totals.find(key);
    if (it == totals.end() || !it->is_number_unsigned())
      throw Error(ErrorCode::InvalidParameters, std::string("no integer total named ") + key);
    *out = it->get<uint64_t>();
  });
}

ppr_status ppr_report_set_command(ppr_report* report, const char* command) {
  return guarded([&] {
    require(report, "report");
    report->report.set_command(command ? command : "");
  });
}

ppr_status ppr_report_set_timings(ppr_report* report, int enabled) {
  return guarded([&] {
    require(report, "report");
    report->report.set_timings(enabled != 0);
  });
}

ppr_status ppr_report_render(const ppr_report* report, ppr_format format, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (format != PPR_FORMAT_JSON && format != PPR_FORMAT_CSV)
      throw Error(ErrorCode::InvalidParameters, "unknown report format");
    *out = dup_string(format == PPR_FORMAT_JSON ? report->report.to_json() : report->report.to_csv());
  });
}

void ppr_screen_options_init(ppr_screen_options* options) {
  if (!options) return;
  options->target = PPR_TARGET_T;
  options->policy = PPR_POLICY_SURVEY;
  options->exhaustive = 0;
  options->needs_check_only = 0;
  options->jobs = 1;
}

ppr_status ppr_screen_range(uint64_t lo, uint64_t hi, const ppr_screen_options* options, ppr_report** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    if (lo < 2 || hi < lo) throw Error(ErrorCode::InvalidParameters, "screening range must satisfy 2 <= min <= max");
    auto rep = std::make_unique<ppr_report>(ppr_report{RunReport("screen")});
    const auto t0 = std::chrono::steady_clock::now();
    const auto verdicts =
        screen_range(lo, hi, to_options(*options), std::max(1u, options->jobs), options->needs_check_only != 0);
    const double per = verdicts.empty() ? 0.0 : ms_since(t0) / static_cast<double>(verdicts.size());
    for (const auto& v : verdicts) {
      ReportRecord rec = screen_record(v);
      rec.elapsed_ms = per;
      rep->report.add(std::move(rec));
    }
    add_screen_totals(rep->report);
    *out = rep.release();
  });
}

ppr_status ppr_screen_list(const uint64_t* qs, size_t n, const ppr_screen_options* options, ppr_report** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    if (n) require(qs, "qs");
    auto rep = std::make_unique<ppr_report>(ppr_report{RunReport("screen")});
    for (size_t i = 0; i < n; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      const ScreeningVerdict v = screen(qs[i], to_options(*options));
      if (options->needs_check_only && v.status != ScreenStatus::NeedsExplicitCheck) continue;
      ReportRecord rec = screen_record(v);
      rec.elapsed_ms = ms_since(t0);
      rep->report.add(std::move(rec));
    }
    add_screen_totals(rep->report);
    *out = rep.release();
  });
}

ppr_status ppr_survey(unsigned omega, unsigned jobs, ppr_report** out) {
  return guarded([&] {
    require(out, "out");
    auto rep = std::make_unique<ppr_report>(ppr_report{RunReport("survey")});
    const auto t0 = std::chrono::steady_clock::now();
    const SurveyRow row = survey(omega, std::max(1u, jobs));
    ReportRecord rec = survey_record(row);
    rec.elapsed_ms = ms_since(t0);
    rep->report.add(std::move(rec));
    rep->report.set_total("candidates", row.candidates);
    rep->report.set_total("failures", row.failing_list.size());
    *out = rep.release();
  });
}

ppr_status ppr_auto_threshold(ppr_threshold variant, unsigned* out) {
  return guarded([&] {
    require(out, "out");
    switch (variant) {
      case PPR_THRESHOLD_LIHAN: *out = auto_threshold(ThresholdVariant::LiHan); return;
      case PPR_THRESHOLD_THM2: *out = auto_threshold(ThresholdVariant::Thm2); return;
      case PPR_THRESHOLD_THM7_STRONG: *out = auto_threshold(ThresholdVariant::Thm7Strong); return;
    }
    throw Error(ErrorCode::InvalidParameters, "unknown threshold variant");
  });
}

void ppr_verify_options_init(ppr_verify_options* options) {
  if (!options) return;
  options->set = PPR_SET_T;
  options->algorithm = PPR_ALGO_LOGS;
  options->jobs = 1;
}

ppr_status ppr_verify_range(uint64_t lo, uint64_t hi, const ppr_verify_options* options, ppr_report** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    if (lo < 2 || hi < lo) throw Error(ErrorCode::InvalidParameters, "verification range must satisfy 2 <= min <= max");
    check_verify_options(*options);
    auto rep = std::make_unique<ppr_report>(ppr_report{RunReport("verify")});
    for (const auto& id : enumerate_prime_powers(lo, hi)) verify_one(rep->report, id.q, *options);
    add_verify_totals(rep->report);
    *out = rep.release();
  });
}

ppr_status ppr_verify_list(const uint64_t* qs, size_t n, const ppr_verify_options* options, ppr_report** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    if (n) require(qs, "qs");
    check_verify_options(*options);
    auto rep = std::make_unique<ppr_report>(ppr_report{RunReport("verify")});
    for (size_t i = 0; i < n; ++i) verify_one(rep->report, qs[i], *options);
    add_verify_totals(rep->report);
    *out = rep.release();
  });
}

void ppr_oracle_options_init(ppr_oracle_options* options) {
  if (!options) return;
  options->kind = PPR_ORACLE_M;
  options->q = 0;
  options->u = 1;
  options->v = 1;
  for (auto& e : options->e) e = 0;
}

ppr_status ppr_oracle(const ppr_oracle_options* options, ppr_report** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    const u64 q = options->q;
    const u64 limit = options->kind == PPR_ORACLE_M ? 1000000 : 10000;
    if (q < 2) throw Error(ErrorCode::InvalidParameters, "oracle needs q >= 2");
    if (q > limit) throw Error(ErrorCode::TooLarge, "q = " + std::to_string(q) + " exceeds the brute-force guard");
    auto rep = std::make_unique<ppr_report>(ppr_report{RunReport("oracle")});
    const auto t0 = std::chrono::steady_clock::now();
    ReportRecord rec;
    if (options->kind == PPR_ORACLE_COROLLARY6) {
      rec = corollary6_record(corollary6_witnesses(q));
    } else if (options->kind == PPR_ORACLE_N || options->kind == PPR_ORACLE_M) {
      const GroupTables g(q);
      const Field& f = g.field();
      const Element u = checked(f, options->u), v = checked(f, options->v);
      u64 e[4];
      for (int i = 0; i < 4; ++i) e[i] = options->e[i] ? options->e[i] : q - 1;
      const bool pairs = options->kind == PPR_ORACLE_N;
      const u64 count = pairs ? count_pairs_free(g, u, v, e[0], e[1], e[2], e[3]) : count_single_free(g, u, v, e[0], e[1]);
      rec.q = q;
      rec.flagged = count == 0;
      rec.cells.emplace_back("q", q);
      rec.cells.emplace_back("kind", pairs ? "N" : "M");
      rec.cells.emplace_back("u", u.code);
      rec.cells.emplace_back("v", v.code);
      for (int i = 0; i < (pairs ? 4 : 2); ++i) rec.cells.emplace_back("e" + std::to_string(i + 1), e[i]);
      rec.cells.emplace_back("count", count);
    } else {
      throw Error(ErrorCode::InvalidParameters, "unknown oracle kind");
    }
    rec.elapsed_ms = ms_since(t0);
    rep->report.add(std::move(rec));
    *out = rep.release();
  });
}

}  // extern "C"
