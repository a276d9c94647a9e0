// SPDX-License-Identifier: Apache-2.0
//
// Ground truth for membership of q in S and T: brute-force counts of e-free
// configurations and the explicit checkers.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "coverage.hpp"
#include "field.hpp"

namespace primpairs {

// Field, logarithms and the ordered primitive list, shared read-only.
class GroupTables {
 public:
  explicit GroupTables(u64 q);
  explicit GroupTables(Field field);

  const Field& field() const noexcept { return field_; }
  const LogTable& logs() const noexcept { return logs_; }
  const std::vector<Element>& primitives() const noexcept { return primitives_; }
  const std::vector<u64>& primes() const noexcept { return primes_; }
  const CoverageLayout& layout() const noexcept { return layout_; }
  u64 radical() const noexcept { return layout_.radical; }
  u64 group_order() const noexcept { return logs_.group_order(); }

  u64 log(Element a) const { return logs_.log(a); }
  Element exp(u64 k) const { return logs_.exp(k); }
  Element inverse(Element a) const;
  // Logarithm coprime to Rad(q - 1).
  bool log_is_primitive(u64 log_a) const;
  bool is_primitive(Element a) const { return a.code != 0 && log_is_primitive(log(a)); }
  // Per-element e-freeness mask indexed by code.
  std::vector<char> free_mask(u64 e) const;

 private:
  Field field_;
  LogTable logs_;
  std::vector<Element> primitives_;
  std::vector<u64> primes_;
  CoverageLayout layout_;
};

// Non-zero pairs (a, b) with a, b, ua + vb, va^-1 + ub^-1 respectively
// e1-, e2-, e3-, e4-free.
u64 count_pairs_free(const GroupTables& g, Element u, Element v, u64 e1, u64 e2, u64 e3, u64 e4);
// Non-zero a with a e1-free and ua + va^-1 e2-free.
u64 count_single_free(const GroupTables& g, Element u, Element v, u64 e1, u64 e2);

enum class MembershipSet { T, S };
enum class Algorithm { Algo1, Algo2, Algo3, Oracle };
const char* to_string(MembershipSet s);
const char* to_string(Algorithm a);

struct VerifyStats {
  u64 logs_computed = 0;
  u64 primitives_consumed = 0;
  u64 ie_terms_peak = 0;
  u64 bitmap_fallbacks = 0;
  u64 escalations = 0;
  u64 cached_pair_hits = 0;

  void absorb(const VerifyStats& o);
};

struct FailingPair {
  Element u, v;
  u64 log_u = 0, log_v = 0;

  friend bool operator==(const FailingPair&, const FailingPair&) = default;
};

struct MembershipResult {
  PrimePowerId q;
  MembershipSet set = MembershipSet::T;
  bool member = true;
  // Sorted by (log u, log v).
  std::vector<FailingPair> failures;
  Algorithm algorithm = Algorithm::Algo1;
  VerifyStats stats;
};

// algo2. Classes of (log u mod R, log v mod R) up to the swap symmetry;
// failing classes are expanded to every (u, v) they contain.
MembershipResult check_S(u64 q, unsigned jobs = 1);
MembershipResult check_S(const GroupTables& g, unsigned jobs = 1);

// algo1. For each w = v / u and k = log u mod R, searches the stored
// logs of r = a + w a^-1 for gcd(k + log r, R) = 1. Failing (w, k) are
// reported as the representative (gamma^k, gamma^k w).
MembershipResult check_T_logs(u64 q, unsigned jobs = 1);
MembershipResult check_T_logs(const GroupTables& g, unsigned jobs = 1);

struct LadderStage {
  u64 always_accept;
  mpq_class factor;
};
// (10, 3/4), (10, 4/5), (12, 5/6), then (phi(q - 1), 1).
std::vector<LadderStage> default_ladder(const GroupTables& g);

constexpr size_t kDefaultTermCap = 1u << 14;

// algo3 for one w. Beyond term_cap stored products the union is
// tracked by a direct R-bit bitmap, which is exact.
bool check_w(const GroupTables& g, Element w, u64 always_accept, const mpq_class& factor,
             VerifyStats* stats = nullptr, size_t term_cap = kDefaultTermCap);

MembershipResult check_T_ie(u64 q, unsigned jobs = 1);
MembershipResult check_T_ie(const GroupTables& g, unsigned jobs = 1);

// Exhaustive search straight from the definitions, using Field primitivity
// tests rather than logarithms.
MembershipResult check_T_oracle(u64 q);
MembershipResult check_S_oracle(u64 q);

MembershipResult verify_membership(u64 q, MembershipSet set, Algorithm algorithm, unsigned jobs = 1);

struct Corollary6Case {
  bool exists = false;
  std::optional<Element> a;
  std::optional<Element> b;
};

// (i) a + a^-1, (ii) a - a^-1, (iii) a + b with a^-1 + b^-1,
// (iv) a - b with b^-1 - a^-1; a and b primitive throughout.
struct Corollary6Report {
  PrimePowerId q;
  std::array<Corollary6Case, 4> cases;
};
Corollary6Report corollary6_witnesses(u64 q);

}  // namespace primpairs
