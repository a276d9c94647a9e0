// SPDX-License-Identifier: Apache-2.0
//
// Residue-class coverage of log u mod R for a fixed w, where R = Rad(q - 1).
// A class k is served by r when gcd(k + log r, R) = 1, i.e. k avoids
// -log r modulo every prime of R. Sets of classes are stored as one bitset per
// prime (CRT product sets) and unions are counted by signed inclusion-exclusion.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "ntcore.hpp"

namespace primpairs {

struct CoverageLayout {
  std::vector<u64> primes;
  std::vector<size_t> offsets;  // word offset of each prime's bitset
  size_t words = 0;
  u64 radical = 1;

  explicit CoverageLayout(std::vector<u64> primes);
};

struct CoverageTerm {
  unsigned generation = 1;
  // Signed multiplicity; (-1)^generation for a single term, the sum over
  // identical products once they are merged.
  long long coefficient = -1;
  std::vector<u64> bits;
  u64 size = 0;

  std::span<const u64> bitset(const CoverageLayout& layout, size_t i) const;
  bool contains(const CoverageLayout& layout, u64 k) const;
};

// Product set of classes k with k != -log_r (mod p) for every p.
CoverageTerm coverage_term(const CoverageLayout& layout, u64 log_r);

struct CoverageState {
  const CoverageLayout* layout = nullptr;
  std::vector<CoverageTerm> terms;
  // R + sum of coefficient * |term|.
  u64 uncovered = 0;

  explicit CoverageState(const CoverageLayout& layout);
};

// Adds the product set `term` to the union: intersects it with every stored
// term, merges identical products and recomputes the uncovered count. The result is committed iff always_accept
// or new_uncovered <= factor * old_uncovered; otherwise the state is left
// unchanged. Returns whether it committed.
bool coverage_merge(CoverageState& state, const CoverageTerm& term, bool always_accept,
                    const mpq_class& factor);

// Direct R-bit union of the classes served by each log r.
class CoverageBitmap {
 public:
  explicit CoverageBitmap(const CoverageLayout& layout);
  void add(u64 log_r);
  void add(const CoverageTerm& term);
  u64 uncovered() const noexcept { return uncovered_; }
  bool covered(u64 k) const { return bits_[k]; }
  std::vector<u64> uncovered_classes() const;

 private:
  const CoverageLayout* layout_;
  std::vector<bool> bits_;
  u64 uncovered_;
};

}  // namespace primpairs
