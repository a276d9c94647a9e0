// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "coverage.hpp"
#include "test_helpers.hpp"
#include "verify.hpp"

using namespace primpairs;

namespace {

u64 popcount(std::span<const u64> words) {
  u64 c = 0;
  for (u64 w : words) c += static_cast<u64>(__builtin_popcountll(w));
  return c;
}

// Classes k mod R with gcd(k + log_r, R) = 1, counted directly.
u64 direct_size(const CoverageLayout& layout, u64 log_r) {
  u64 c = 0;
  for (u64 k = 0; k < layout.radical; ++k) {
    bool ok = true;
    for (u64 p : layout.primes)
      if ((k + log_r) % p == 0) ok = false;
    c += ok;
  }
  return c;
}

}  // namespace

TEST_CASE("coverage term for q = 13, w = 1") {
  const GroupTables g(13);
  const Field& f = g.field();
  const Element a{2};
  const Element r = f.add(a, f.mul(Element{1}, f.inv(a)));
  CHECK(r.code == 9);
  const u64 log_r = g.log(r);
  CHECK(log_r == 8);
  const CoverageTerm t = coverage_term(g.layout(), log_r);
  CHECK(g.layout().primes == std::vector<u64>{2, 3});
  CHECK(popcount(t.bitset(g.layout(), 0)) == 1);
  CHECK(popcount(t.bitset(g.layout(), 1)) == 2);
  CHECK(t.size == 2);
  CHECK(t.generation == 1);
  CHECK(t.coefficient == -1);
}

TEST_CASE("term sizes follow the product of popcounts") {
  for (u64 m : {6, 30, 210, 2310, 12, 60, 1000}) {
    CoverageLayout layout(profile(m).primes());
    u64 generic = 1;
    for (u64 p : layout.primes) generic *= p - 1;
    for (u64 lr = 0; lr < 3 * layout.radical; lr += 7) {
      const CoverageTerm t = coverage_term(layout, lr);
      u64 prod = 1;
      for (size_t i = 0; i < layout.primes.size(); ++i) prod *= popcount(t.bitset(layout, i));
      REQUIRE(t.size == prod);
      REQUIRE(t.size == generic);
      REQUIRE(t.size == direct_size(layout, lr));
      for (u64 k = 0; k < layout.radical; ++k) {
        bool ok = true;
        for (u64 p : layout.primes)
          if ((k + lr) % p == 0) ok = false;
        REQUIRE(t.contains(layout, k) == ok);
      }
    }
  }
}

TEST_CASE("merge basics") {
  CoverageLayout layout({2, 3, 5});
  CoverageState st(layout);
  CHECK(st.uncovered == 30);
  const CoverageTerm t = coverage_term(layout, 4);
  CHECK(coverage_merge(st, t, true, mpq_class(3, 4)));
  CHECK(st.uncovered == 30 - t.size);
  const u64 before = st.uncovered;
  coverage_merge(st, t, true, mpq_class(3, 4));
  CHECK(st.uncovered == before);
  // A non-improving term is rejected under the factor rule.
  const auto terms_before = st.terms.size();
  CHECK_FALSE(coverage_merge(st, t, false, mpq_class(3, 4)));
  CHECK(st.terms.size() == terms_before);
  CHECK(st.uncovered == before);
}

TEST_CASE("merge agrees with a bitmap on random sequences") {
  std::mt19937_64 rng(5);
  for (u64 m : {6, 30, 210, 2310, 30030, 510510, 4620, 9699690}) {
    CoverageLayout layout(profile(m).primes());
    CoverageState st(layout);
    CoverageBitmap bm(layout);
    std::uniform_int_distribution<u64> d(0, layout.radical - 1);
    std::bernoulli_distribution always(0.4);
    for (int step = 0; step < 60 && st.uncovered; ++step) {
      const CoverageTerm t = coverage_term(layout, d(rng));
      if (coverage_merge(st, t, always(rng), mpq_class(4, 5))) bm.add(t);
      REQUIRE(st.uncovered == bm.uncovered());
      REQUIRE(st.uncovered <= layout.radical);
    }
    const auto classes = bm.uncovered_classes();
    CHECK(classes.size() == bm.uncovered());
    for (u64 k : classes) CHECK_FALSE(bm.covered(k));
  }
}

TEST_CASE("bitmap add by log matches add by term") {
  CoverageLayout layout({2, 3, 7});
  CoverageBitmap a(layout), b(layout);
  for (u64 lr : {0, 5, 11, 17}) {
    a.add(lr);
    b.add(coverage_term(layout, lr));
    CHECK(a.uncovered() == b.uncovered());
  }
}
