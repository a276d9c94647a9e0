// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <numeric>
#include <set>

#include "test_helpers.hpp"
#include "verify.hpp"

using namespace primpairs;

namespace {

std::vector<std::pair<u64, u64>> logs_of(const MembershipResult& r) {
  std::vector<std::pair<u64, u64>> out;
  for (const auto& f : r.failures) out.emplace_back(f.log_u, f.log_v);
  return out;
}

// M(q, u, v) straight from the definition with Field predicates only.
u64 naive_single(const Field& f, Element u, Element v) {
  u64 c = 0;
  for (u64 x = 1; x < f.order(); ++x) {
    const Element a{x};
    if (!f.is_primitive(a)) continue;
    if (f.is_primitive(f.add(f.mul(u, a), f.mul(v, f.inv(a))))) ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("single counts") {
  const GroupTables g13(13), g11(11);
  CHECK(count_single_free(g13, Element{1}, Element{1}, 12, 12) == 0);
  CHECK(count_single_free(g11, Element{1}, Element{1}, 10, 10) >= 1);
  CHECK(g11.field().is_primitive(g11.field().add(Element{2}, g11.inverse(Element{2}))));
  for (u64 q : {7, 9, 13, 16, 25, 27, 31}) {
    const GroupTables g(q);
    for (u64 u = 1; u < q; ++u)
      for (u64 v = 1; v < q; ++v) {
        const int eps = [&] {
          int n = 0;
          for (u64 a = 1; a < q; ++a)
            if (g.field().add(g.field().mul(Element{u}, g.field().mul(Element{a}, Element{a})), Element{v}).code == 0) ++n;
          return n;
        }();
        REQUIRE(count_single_free(g, Element{u}, Element{v}, 1, 1) == q - 1 - static_cast<u64>(eps));
        REQUIRE(count_single_free(g, Element{u}, Element{v}, q - 1, q - 1) ==
                naive_single(g.field(), Element{u}, Element{v}));
      }
  }
  CHECK_ERROR_CODE(count_single_free(g13, Element{1}, Element{1}, 5, 12), ErrorCode::InvalidDivisor);
  CHECK_ERROR_CODE(count_single_free(g13, Element{0}, Element{1}, 12, 12), ErrorCode::InvalidParameters);
}

TEST_CASE("pair counts") {
  for (u64 q : {5, 7, 8, 9, 13}) {
    const GroupTables g(q);
    const Field& f = g.field();
    for (u64 u = 1; u < q; ++u)
      for (u64 v = 1; v < q; ++v) {
        u64 trivial = 0, prim = 0;
        for (u64 a = 1; a < q; ++a)
          for (u64 b = 1; b < q; ++b) {
            const Element x = f.add(f.mul(Element{u}, Element{a}), f.mul(Element{v}, Element{b}));
            const Element y = f.add(f.mul(Element{v}, f.inv(Element{a})), f.mul(Element{u}, f.inv(Element{b})));
            if (x.code && y.code) {
              ++trivial;
              if (f.is_primitive(Element{a}) && f.is_primitive(Element{b}) && f.is_primitive(x) &&
                  f.is_primitive(y))
                ++prim;
            }
          }
        REQUIRE(count_pairs_free(g, Element{u}, Element{v}, 1, 1, 1, 1) == trivial);
        REQUIRE(count_pairs_free(g, Element{u}, Element{v}, q - 1, q - 1, q - 1, q - 1) == prim);
      }
  }
  const GroupTables g7(7);
  CHECK(count_pairs_free(g7, Element{1}, Element{1}, 6, 6, 6, 6) == 0);
  // Sieving out the prime 5 at the first position scales by theta(5).
  const GroupTables g31(31);
  const u64 full = count_pairs_free(g31, Element{1}, Element{1}, 6, 6, 6, 6);
  CHECK(count_pairs_free(g31, Element{1}, Element{1}, 30, 6, 6, 6) * 5 == 4 * full);
  CHECK_ERROR_CODE(count_pairs_free(g31, Element{1}, Element{1}, 7, 6, 6, 6), ErrorCode::InvalidDivisor);
}

TEST_CASE("membership examples") {
  const auto s7 = check_S(7);
  CHECK_FALSE(s7.member);
  CHECK(std::any_of(s7.failures.begin(), s7.failures.end(),
                    [](const FailingPair& p) { return p.u.code == 1 && p.v.code == 1; }));
  CHECK(check_S(11).member);
  CHECK_FALSE(check_S(13).member);
  CHECK_FALSE(check_T_logs(13).member);
  CHECK(check_T_logs(23).member);
  CHECK_FALSE(check_T_logs(4).member);
  CHECK_FALSE(check_T_logs(9).member);
  CHECK_FALSE(check_T_ie(169).member);
  CHECK(check_T_ie(17).member);
}

TEST_CASE("check_w examples") {
  const GroupTables g23(23), g13(13);
  CHECK(check_w(g23, Element{1}, 10, mpq_class(3, 4)));
  CHECK_FALSE(check_w(g13, Element{1}, 10, mpq_class(3, 4)));
  CHECK_FALSE(check_w(g13, Element{1}, g13.primitives().size(), mpq_class(1)));
  // A tiny term cap forces the bitmap fallback without changing the answer.
  for (u64 q : {211, 331, 421}) {
    const GroupTables g(q);
    for (u64 w = 1; w < q; w += 13) {
      VerifyStats st;
      const bool a = check_w(g, Element{w}, 10, mpq_class(3, 4));
      const bool b = check_w(g, Element{w}, 10, mpq_class(3, 4), &st, 4);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("algorithm equivalence for q <= 500") {
  for (const auto& id : enumerate_prime_powers(2, 500)) {
    CAPTURE(id.q);
    const auto a1 = check_T_logs(id.q, 2);
    const auto a3 = check_T_ie(id.q, 2);
    REQUIRE(a1.member == a3.member);
    REQUIRE(logs_of(a1) == logs_of(a3));
    REQUIRE(a1.member == a1.failures.empty());
    const auto l = logs_of(a1);
    REQUIRE(std::is_sorted(l.begin(), l.end()));
    if (id.q <= 200) {
      // The oracle lists every failing pair; the checkers list one per class.
      const GroupTables g(id.q);
      const auto classes = [&](const MembershipResult& r) {
        std::set<std::pair<u64, u64>> out;
        for (const auto& f : r.failures)
          out.emplace(g.field().mul(g.inverse(f.u), f.v).code, f.log_u % g.radical());
        return out;
      };
      const auto o = check_T_oracle(id.q);
      REQUIRE(o.member == a1.member);
      REQUIRE(classes(o) == classes(a1));
      for (const auto& f : a1.failures) REQUIRE(std::find(o.failures.begin(), o.failures.end(), f) != o.failures.end());
    }
  }
}

TEST_CASE("S membership agrees with the exhaustive oracle for q <= 64") {
  for (const auto& id : enumerate_prime_powers(2, 64)) {
    CAPTURE(id.q);
    const auto a = check_S(id.q, 2);
    const auto o = check_S_oracle(id.q);
    REQUIRE(a.member == o.member);
    REQUIRE(logs_of(a) == logs_of(o));
    REQUIRE(a.member == a.failures.empty());
  }
}

TEST_CASE("reduction to w = v / u") {
  for (const auto& id : enumerate_prime_powers(3, 200)) {
    const GroupTables g(id.q);
    const Field& f = g.field();
    const u64 n = id.q - 1;
    for (u64 u = 1; u < id.q; u += 3)
      for (u64 v = 1; v < id.q; v += 5) {
        const Element w = f.mul(g.inverse(Element{u}), Element{v});
        for (const Element a : g.primitives()) {
          const Element direct = f.add(f.mul(Element{u}, a), f.mul(Element{v}, g.inverse(a)));
          const Element r = f.add(a, f.mul(w, g.inverse(a)));
          const bool lhs = f.is_primitive(direct);
          const bool rhs = r.code != 0 && std::gcd(g.log(Element{u}) + g.log(r), n) == 1;
          REQUIRE(lhs == rhs);
        }
      }
  }
}

TEST_CASE("existence symmetry under swapping u and v") {
  for (const auto& id : enumerate_prime_powers(3, 200)) {
    const GroupTables g(id.q);
    const u64 n = id.q - 1;
    for (u64 u = 1; u < id.q; u += 2)
      for (u64 v = 1; v < id.q; v += 3) {
        const bool uv = count_single_free(g, Element{u}, Element{v}, n, n) > 0;
        const bool vu = count_single_free(g, Element{v}, Element{u}, n, n) > 0;
        REQUIRE(uv == vu);
      }
  }
}

TEST_CASE("corollary6 witnesses") {
  const auto r7 = corollary6_witnesses(7);
  CHECK_FALSE(r7.cases[0].exists);
  CHECK(r7.cases[1].exists);
  REQUIRE(r7.cases[1].a.has_value());
  const Field f7 = Field::build(7);
  const Element a = *r7.cases[1].a;
  CHECK(f7.is_primitive(a));
  CHECK(f7.is_primitive(f7.sub(a, f7.inv(a))));
  CHECK_FALSE(corollary6_witnesses(61).cases[1].exists);
  const auto r121 = corollary6_witnesses(121);
  CHECK_FALSE(r121.cases[0].exists);
  CHECK_FALSE(r121.cases[1].exists);
  const auto r8 = corollary6_witnesses(8);
  CHECK(r8.cases[2].exists == r8.cases[3].exists);
}

TEST_CASE("verify_membership dispatch") {
  CHECK(verify_membership(23, MembershipSet::T, Algorithm::Algo1).member);
  CHECK(verify_membership(23, MembershipSet::T, Algorithm::Algo3).member);
  CHECK(verify_membership(11, MembershipSet::S, Algorithm::Algo2).member);
  CHECK_FALSE(verify_membership(13, MembershipSet::S, Algorithm::Oracle).member);
  CHECK_ERROR_CODE(verify_membership(12, MembershipSet::T, Algorithm::Algo1), ErrorCode::NotAPrimePower);
}
