// SPDX-License-Identifier: Apache-2.0
#include "coverage.hpp"

#include <bit>
#include <unordered_map>

namespace primpairs {

namespace {

constexpr u64 kMaxBitmapRadical = u64{1} << 32;

size_t words_for(u64 bits) { return static_cast<size_t>((bits + 63) / 64); }

struct BitsHash {
  size_t operator()(const std::vector<u64>& v) const noexcept {
    u64 h = 0x9e3779b97f4a7c15ULL;
    for (u64 x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

u64 product_size(const CoverageLayout& layout, const std::vector<u64>& bits) {
  u64 size = 1;
  for (size_t i = 0; i < layout.primes.size(); ++i) {
    const size_t end = i + 1 < layout.primes.size() ? layout.offsets[i + 1] : layout.words;
    u64 pop = 0;
    for (size_t w = layout.offsets[i]; w < end; ++w) pop += static_cast<u64>(std::popcount(bits[w]));
    if (pop == 0) return 0;
    size *= pop;
  }
  return size;
}

}  // namespace

CoverageLayout::CoverageLayout(std::vector<u64> ps) : primes(std::move(ps)) {
  for (u64 p : primes) {
    offsets.push_back(words);
    words += words_for(p);
    radical *= p;
  }
}

std::span<const u64> CoverageTerm::bitset(const CoverageLayout& layout, size_t i) const {
  const size_t end = i + 1 < layout.primes.size() ? layout.offsets[i + 1] : layout.words;
  return {bits.data() + layout.offsets[i], end - layout.offsets[i]};
}

bool CoverageTerm::contains(const CoverageLayout& layout, u64 k) const {
  for (size_t i = 0; i < layout.primes.size(); ++i) {
    const u64 l = k % layout.primes[i];
    if (!((bits[layout.offsets[i] + l / 64] >> (l % 64)) & 1)) return false;
  }
  return true;
}

CoverageTerm coverage_term(const CoverageLayout& layout, u64 log_r) {
  CoverageTerm t;
  t.bits.assign(layout.words, 0);
  t.size = 1;
  for (size_t i = 0; i < layout.primes.size(); ++i) {
    const u64 p = layout.primes[i];
    const size_t base = layout.offsets[i];
    for (u64 l = 0; l < p; ++l) t.bits[base + l / 64] |= u64{1} << (l % 64);
    const u64 banned = (p - log_r % p) % p;
    t.bits[base + banned / 64] &= ~(u64{1} << (banned % 64));
    t.size *= p - 1;
  }
  return t;
}

CoverageState::CoverageState(const CoverageLayout& l) : layout(&l), uncovered(l.radical) {}

bool coverage_merge(CoverageState& state, const CoverageTerm& term, bool always_accept,
                    const mpq_class& factor) {
  const CoverageLayout& layout = *state.layout;
  if (term.size == 0) return always_accept;

  // Signed contributions keyed by product pattern.
  std::unordered_map<std::vector<u64>, std::pair<long long, unsigned>, BitsHash> delta;
  auto bump = [&](std::vector<u64> bits, long long c, unsigned generation) {
    auto [it, inserted] = delta.try_emplace(std::move(bits), c, generation);
    if (!inserted) it->second.first += c;
  };
  bump(term.bits, -1, 1);
  std::vector<u64> scratch(layout.words);
  for (const auto& t : state.terms) {
    for (size_t w = 0; w < layout.words; ++w) scratch[w] = t.bits[w] & term.bits[w];
    if (product_size(layout, scratch) == 0) continue;
    bump(scratch, -t.coefficient, t.generation + 1);
  }

  __int128 next = state.uncovered;
  for (const auto& [bits, cg] : delta) next += static_cast<__int128>(cg.first) * product_size(layout, bits);
  if (next < 0 || next > static_cast<__int128>(layout.radical))
    throw Error(ErrorCode::InvalidParameters, "inclusion-exclusion count out of range");

  const u64 old = state.uncovered;
  const u64 fresh = static_cast<u64>(next);
  if (!always_accept && mpq_class(mpz_class(fresh)) > factor * mpq_class(mpz_class(old))) return false;

  std::unordered_map<std::vector<u64>, size_t, BitsHash> index;
  index.reserve(state.terms.size() + delta.size());
  for (size_t i = 0; i < state.terms.size(); ++i) index.emplace(state.terms[i].bits, i);
  for (auto& [bits, cg] : delta) {
    if (cg.first == 0) continue;
    auto it = index.find(bits);
    if (it != index.end()) {
      state.terms[it->second].coefficient += cg.first;
    } else {
      CoverageTerm t;
      t.generation = cg.second;
      t.coefficient = cg.first;
      t.size = product_size(layout, bits);
      t.bits = bits;
      index.emplace(bits, state.terms.size());
      state.terms.push_back(std::move(t));
    }
  }
  std::erase_if(state.terms, [](const CoverageTerm& t) { return t.coefficient == 0; });
  state.uncovered = fresh;
  return true;
}

CoverageBitmap::CoverageBitmap(const CoverageLayout& layout) : layout_(&layout), uncovered_(layout.radical) {
  if (layout.radical > kMaxBitmapRadical) throw Error(ErrorCode::TooLarge, "radical too large for a bitmap");
  bits_.assign(layout.radical, false);
}

void CoverageBitmap::add(u64 log_r) {
  const auto& primes = layout_->primes;
  for (u64 k = 0; k < layout_->radical; ++k) {
    if (bits_[k]) continue;
    bool ok = true;
    for (u64 p : primes)
      if ((k + log_r) % p == 0) {
        ok = false;
        break;
      }
    if (ok) {
      bits_[k] = true;
      --uncovered_;
    }
  }
}

void CoverageBitmap::add(const CoverageTerm& term) {
  for (u64 k = 0; k < layout_->radical; ++k) {
    if (!bits_[k] && term.contains(*layout_, k)) {
      bits_[k] = true;
      --uncovered_;
    }
  }
}

std::vector<u64> CoverageBitmap::uncovered_classes() const {
  std::vector<u64> out;
  for (u64 k = 0; k < layout_->radical; ++k)
    if (!bits_[k]) out.push_back(k);
  return out;
}

}  // namespace primpairs
