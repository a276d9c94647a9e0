// SPDX-License-Identifier: Apache-2.0
#include "verify.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace primpairs {

const char* to_string(MembershipSet s) { return s == MembershipSet::T ? "T" : "S"; }

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Algo1: return "algo1";
    case Algorithm::Algo2: return "algo2";
    case Algorithm::Algo3: return "algo3";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

void VerifyStats::absorb(const VerifyStats& o) {
  logs_computed += o.logs_computed;
  primitives_consumed += o.primitives_consumed;
  ie_terms_peak = std::max(ie_terms_peak, o.ie_terms_peak);
  bitmap_fallbacks += o.bitmap_fallbacks;
  escalations += o.escalations;
  cached_pair_hits += o.cached_pair_hits;
}

namespace {

std::vector<u64> distinct_primes(const Field& f) { return f.group_profile().primes(); }

// Runs fn(i) for i in [0, n), worker t taking i = t, t + jobs, ...
template <class Fn>
void parallel_for(size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<size_t>(n, 1))));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex m;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t i = t; i < n; i += jobs) fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void sort_failures(std::vector<FailingPair>& f) {
  std::sort(f.begin(), f.end(), [](const FailingPair& x, const FailingPair& y) {
    return std::tie(x.log_u, x.log_v) < std::tie(y.log_u, y.log_v);
  });
}

void check_divisor(const GroupTables& g, u64 e) {
  if (e == 0 || g.group_order() % e != 0)
    throw Error(ErrorCode::InvalidDivisor, std::to_string(e) + " does not divide q - 1");
}

void check_nonzero(Element u, Element v) {
  if (u.code == 0 || v.code == 0) throw Error(ErrorCode::InvalidParameters, "u and v must be non-zero");
}

FailingPair make_failure(const GroupTables& g, u64 log_u, u64 log_v) {
  const u64 n = g.group_order();
  log_u %= n;
  log_v %= n;
  return {g.exp(log_u), g.exp(log_v), log_u, log_v};
}

}  // namespace

GroupTables::GroupTables(u64 q) : GroupTables(Field::build(q)) {}

GroupTables::GroupTables(Field field)
    : field_(std::move(field)),
      logs_(field_),
      primitives_(field_.primitive_elements()),
      primes_(distinct_primes(field_)),
      layout_(primes_) {}

Element GroupTables::inverse(Element a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const u64 n = group_order();
  return exp((n - log(a)) % n);
}

bool GroupTables::log_is_primitive(u64 log_a) const {
  for (u64 p : primes_)
    if (log_a % p == 0) return false;
  return true;
}

std::vector<char> GroupTables::free_mask(u64 e) const {
  check_divisor(*this, e);
  std::vector<u64> ls;
  for (u64 p : primes_)
    if (e % p == 0) ls.push_back(p);
  const u64 q = field_.order();
  std::vector<char> mask(q, 0);
  for (u64 c = 1; c < q; ++c) {
    const u64 l = log(Element{c});
    bool ok = true;
    for (u64 p : ls)
      if (l % p == 0) {
        ok = false;
        break;
      }
    mask[c] = ok;
  }
  return mask;
}

u64 count_pairs_free(const GroupTables& g, Element u, Element v, u64 e1, u64 e2, u64 e3, u64 e4) {
  check_nonzero(u, v);
  const Field& f = g.field();
  const u64 q = f.order();
  const auto m1 = g.free_mask(e1), m2 = g.free_mask(e2), m3 = g.free_mask(e3), m4 = g.free_mask(e4);
  std::vector<Element> vb(q), ub_inv(q);
  for (u64 b = 1; b < q; ++b) {
    vb[b] = f.mul(v, Element{b});
    ub_inv[b] = f.mul(u, g.inverse(Element{b}));
  }
  u64 count = 0;
  for (u64 a = 1; a < q; ++a) {
    if (!m1[a]) continue;
    const Element ua = f.mul(u, Element{a});
    const Element va_inv = f.mul(v, g.inverse(Element{a}));
    for (u64 b = 1; b < q; ++b) {
      if (!m2[b]) continue;
      if (!m3[f.add(ua, vb[b]).code]) continue;
      if (!m4[f.add(va_inv, ub_inv[b]).code]) continue;
      ++count;
    }
  }
  return count;
}

u64 count_single_free(const GroupTables& g, Element u, Element v, u64 e1, u64 e2) {
  check_nonzero(u, v);
  const Field& f = g.field();
  const auto m1 = g.free_mask(e1), m2 = g.free_mask(e2);
  u64 count = 0;
  for (u64 a = 1; a < f.order(); ++a) {
    if (!m1[a]) continue;
    const Element s = f.add(f.mul(u, Element{a}), f.mul(v, g.inverse(Element{a})));
    if (m2[s.code]) ++count;
  }
  return count;
}

// algo1 ----------------------------------------------------------------

MembershipResult check_T_logs(u64 q, unsigned jobs) { return check_T_logs(GroupTables(q), jobs); }

MembershipResult check_T_logs(const GroupTables& g, unsigned jobs) {
  const Field& f = g.field();
  const u64 n = g.group_order();
  const u64 R = g.radical();
  const auto& prims = g.primitives();
  std::vector<std::vector<FailingPair>> per_w(n);
  std::vector<VerifyStats> per_stats(n);

  parallel_for(n, jobs, [&](size_t j) {
    const Element w = g.exp(j);
    VerifyStats& st = per_stats[j];
    std::vector<u64> stored;
    size_t next = 0;
    auto extend = [&]() -> bool {
      while (next < prims.size()) {
        const Element a = prims[next++];
        ++st.primitives_consumed;
        const Element r = f.add(a, f.mul(w, g.inverse(a)));
        if (r.code == 0) continue;
        ++st.logs_computed;
        stored.push_back(g.log(r) % R);
        return true;
      }
      return false;
    };
    auto served = [&](u64 k, u64 lr) {
      for (u64 p : g.primes())
        if ((k + lr) % p == 0) return false;
      return true;
    };
    for (u64 k = 0; k < R; ++k) {
      bool ok = std::any_of(stored.begin(), stored.end(), [&](u64 lr) { return served(k, lr); });
      while (!ok && extend()) ok = served(k, stored.back());
      if (!ok) per_w[j].push_back(make_failure(g, k, k + j));
    }
  });

  MembershipResult res;
  res.q = f.id();
  res.set = MembershipSet::T;
  res.algorithm = Algorithm::Algo1;
  for (size_t j = 0; j < n; ++j) {
    res.failures.insert(res.failures.end(), per_w[j].begin(), per_w[j].end());
    res.stats.absorb(per_stats[j]);
  }
  sort_failures(res.failures);
  res.member = res.failures.empty();
  return res;
}

// algo3 ----------------------------------------------------------------

std::vector<LadderStage> default_ladder(const GroupTables& g) {
  return {{10, mpq_class(3, 4)},
          {10, mpq_class(4, 5)},
          {12, mpq_class(5, 6)},
          {static_cast<u64>(g.primitives().size()), mpq_class(1)}};
}

bool check_w(const GroupTables& g, Element w, u64 always_accept, const mpq_class& factor, VerifyStats* stats,
             size_t term_cap) {
  VerifyStats local;
  VerifyStats& st = stats ? *stats : local;
  const Field& f = g.field();
  const CoverageLayout& layout = g.layout();
  CoverageState state(layout);
  std::optional<CoverageBitmap> bitmap;
  std::vector<u64> committed;
  u64 c = 0;
  for (const Element a : g.primitives()) {
    ++st.primitives_consumed;
    const Element r = f.add(a, f.mul(w, g.inverse(a)));
    if (r.code == 0) continue;
    ++c;
    ++st.logs_computed;
    const u64 lr = g.log(r);
    if (bitmap) {
      bitmap->add(lr);
      if (bitmap->uncovered() == 0) return true;
      continue;
    }
    if (!coverage_merge(state, coverage_term(layout, lr), c <= always_accept, factor)) continue;
    committed.push_back(lr);
    st.ie_terms_peak = std::max<u64>(st.ie_terms_peak, state.terms.size());
    if (state.uncovered == 0) return true;
    if (state.terms.size() > term_cap) {
      ++st.bitmap_fallbacks;
      bitmap.emplace(layout);
      for (u64 x : committed) bitmap->add(x);
    }
  }
  return false;
}

MembershipResult check_T_ie(u64 q, unsigned jobs) { return check_T_ie(GroupTables(q), jobs); }

MembershipResult check_T_ie(const GroupTables& g, unsigned jobs) {
  const Field& f = g.field();
  const u64 n = g.group_order();
  const auto ladder = default_ladder(g);
  std::vector<std::vector<FailingPair>> per_w(n);
  std::vector<VerifyStats> per_stats(n);

  parallel_for(n, jobs, [&](size_t j) {
    const Element w = g.exp(j);
    VerifyStats& st = per_stats[j];
    for (size_t stage = 0; stage < ladder.size(); ++stage) {
      if (stage > 0) ++st.escalations;
      if (check_w(g, w, ladder[stage].always_accept, ladder[stage].factor, &st)) return;
    }
    // Not coverable: list the classes k that no primitive a serves.
    CoverageBitmap bitmap(g.layout());
    for (const Element a : g.primitives()) {
      const Element r = f.add(a, f.mul(w, g.inverse(a)));
      if (r.code != 0) bitmap.add(g.log(r));
    }
    for (u64 k : bitmap.uncovered_classes()) per_w[j].push_back(make_failure(g, k, k + j));
  });

  MembershipResult res;
  res.q = f.id();
  res.set = MembershipSet::T;
  res.algorithm = Algorithm::Algo3;
  for (size_t j = 0; j < n; ++j) {
    res.failures.insert(res.failures.end(), per_w[j].begin(), per_w[j].end());
    res.stats.absorb(per_stats[j]);
  }
  sort_failures(res.failures);
  res.member = res.failures.empty();
  return res;
}

// algo2 ----------------------------------------------------------------

MembershipResult check_S(u64 q, unsigned jobs) { return check_S(GroupTables(q), jobs); }

MembershipResult check_S(const GroupTables& g, unsigned jobs) {
  const Field& f = g.field();
  const u64 n = g.group_order();
  const u64 R = g.radical();
  const auto& prims = g.primitives();
  const size_t np = prims.size();
  std::vector<Element> inv(np);
  for (size_t i = 0; i < np; ++i) inv[i] = g.inverse(prims[i]);

  // Class i covers log u = i (mod R); pairs (i, j) with i <= j.
  std::vector<std::vector<std::pair<u64, u64>>> failing(R);
  std::vector<VerifyStats> per_stats(R);
  parallel_for(R, jobs, [&](size_t i) {
    VerifyStats& st = per_stats[i];
    std::vector<std::pair<size_t, size_t>> cache;
    std::vector<Element> ua(np), vb(np), va_inv(np), ub_inv(np);
    const Element u = g.exp(i);
    for (size_t x = 0; x < np; ++x) {
      ua[x] = f.mul(u, prims[x]);
      ub_inv[x] = f.mul(u, inv[x]);
    }
    auto works = [&](size_t a, size_t b) {
      return g.is_primitive(f.add(ua[a], vb[b])) && g.is_primitive(f.add(va_inv[a], ub_inv[b]));
    };
    for (u64 j = i; j < R; ++j) {
      const Element v = g.exp(j);
      for (size_t x = 0; x < np; ++x) {
        vb[x] = f.mul(v, prims[x]);
        va_inv[x] = f.mul(v, inv[x]);
      }
      bool found = false;
      for (const auto& [a, b] : cache)
        if (works(a, b)) {
          found = true;
          ++st.cached_pair_hits;
          break;
        }
      for (size_t a = 0; a < np && !found; ++a) {
        ++st.primitives_consumed;
        for (size_t b = 0; b < np; ++b)
          if (works(a, b)) {
            found = true;
            cache.emplace_back(a, b);
            break;
          }
      }
      if (!found) failing[i].emplace_back(i, j);
    }
  });

  MembershipResult res;
  res.q = f.id();
  res.set = MembershipSet::S;
  res.algorithm = Algorithm::Algo2;
  for (u64 i = 0; i < R; ++i) {
    res.stats.absorb(per_stats[i]);
    for (const auto& [cu, cv] : failing[i]) {
      auto expand = [&](u64 a, u64 b) {
        for (u64 lu = a; lu < n; lu += R)
          for (u64 lv = b; lv < n; lv += R) res.failures.push_back(make_failure(g, lu, lv));
      };
      expand(cu, cv);
      if (cu != cv) expand(cv, cu);
    }
  }
  sort_failures(res.failures);
  res.member = res.failures.empty();
  return res;
}

// Oracles --------------------------------------------------------------------

namespace {

struct OracleData {
  Field field;
  std::vector<char> primitive;  // by code
  std::vector<Element> prims;
  std::vector<Element> inverse;  // by code

  explicit OracleData(u64 q) : field(Field::build(q)) {
    primitive.assign(q, 0);
    inverse.assign(q, Element{0});
    for (u64 c = 1; c < q; ++c) {
      const Element a{c};
      primitive[c] = field.is_primitive(a);
      if (primitive[c]) prims.push_back(a);
      inverse[c] = field.inv(a);
    }
  }
};

// Logs for reporting only; the search itself does not use them.
u64 oracle_log(const Field& f, Element a) { return f.discrete_log(a); }

}  // namespace

MembershipResult check_T_oracle(u64 q) {
  OracleData d(q);
  const Field& f = d.field;
  MembershipResult res;
  res.q = f.id();
  res.set = MembershipSet::T;
  res.algorithm = Algorithm::Oracle;
  for (u64 uc = 1; uc < q; ++uc)
    for (u64 vc = 1; vc < q; ++vc) {
      const Element u{uc}, v{vc};
      bool found = false;
      for (const Element a : d.prims) {
        ++res.stats.primitives_consumed;
        if (d.primitive[f.add(f.mul(u, a), f.mul(v, d.inverse[a.code])).code]) {
          found = true;
          break;
        }
      }
      if (!found) res.failures.push_back({u, v, oracle_log(f, u), oracle_log(f, v)});
    }
  sort_failures(res.failures);
  res.member = res.failures.empty();
  return res;
}

MembershipResult check_S_oracle(u64 q) {
  OracleData d(q);
  const Field& f = d.field;
  MembershipResult res;
  res.q = f.id();
  res.set = MembershipSet::S;
  res.algorithm = Algorithm::Oracle;
  for (u64 uc = 1; uc < q; ++uc)
    for (u64 vc = 1; vc < q; ++vc) {
      const Element u{uc}, v{vc};
      bool found = false;
      for (const Element a : d.prims) {
        for (const Element b : d.prims) {
          const Element s1 = f.add(f.mul(u, a), f.mul(v, b));
          const Element s2 = f.add(f.mul(v, d.inverse[a.code]), f.mul(u, d.inverse[b.code]));
          if (d.primitive[s1.code] && d.primitive[s2.code]) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) res.failures.push_back({u, v, oracle_log(f, u), oracle_log(f, v)});
    }
  sort_failures(res.failures);
  res.member = res.failures.empty();
  return res;
}

MembershipResult verify_membership(u64 q, MembershipSet set, Algorithm algorithm, unsigned jobs) {
  if (set == MembershipSet::S) {
    if (algorithm == Algorithm::Oracle) return check_S_oracle(q);
    if (algorithm != Algorithm::Algo2)
      throw Error(ErrorCode::InvalidParameters, "membership in S is checked by algo2 or the oracle");
    return check_S(q, jobs);
  }
  switch (algorithm) {
    case Algorithm::Algo1: return check_T_logs(q, jobs);
    case Algorithm::Algo3: return check_T_ie(q, jobs);
    case Algorithm::Oracle: return check_T_oracle(q);
    case Algorithm::Algo2: break;
  }
  throw Error(ErrorCode::InvalidParameters, "membership in T is checked by algo1, algo3 or the oracle");
}

Corollary6Report corollary6_witnesses(u64 q) {
  OracleData d(q);
  const Field& f = d.field;
  Corollary6Report rep;
  rep.q = f.id();
  const Element m1 = f.minus_one();
  for (int c = 0; c < 2; ++c) {
    const Element sign = c == 0 ? f.one() : m1;
    for (const Element a : d.prims)
      if (d.primitive[f.add(a, f.mul(sign, d.inverse[a.code])).code]) {
        rep.cases[c] = {true, a, std::nullopt};
        break;
      }
  }
  for (int c = 0; c < 2; ++c) {
    const Element sign = c == 0 ? f.one() : m1;
    bool found = false;
    for (const Element a : d.prims) {
      for (const Element b : d.prims) {
        const Element s1 = f.add(a, f.mul(sign, b));
        const Element s2 = f.add(f.mul(sign, d.inverse[a.code]), d.inverse[b.code]);
        if (d.primitive[s1.code] && d.primitive[s2.code]) {
          rep.cases[2 + c] = {true, a, b};
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  return rep;
}

}  // namespace primpairs
