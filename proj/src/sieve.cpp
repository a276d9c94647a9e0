// SPDX-License-Identifier: Apache-2.0
//
// Segmented enumeration of prime powers q together with the distinct prime
// divisors of q - 1.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "ntcore.hpp"

namespace primpairs {

namespace {

constexpr u64 kSegment = u64{1} << 18;
constexpr u64 kMaxEnumerable = 1'000'000'000'000ULL;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Slot {
  PrimePowerId id;
  u64 rem;
  std::vector<u64> primes;
};

}  // namespace

void for_each_prime_power(u64 lo, u64 hi, std::optional<unsigned> omega_filter,
                          const std::function<void(const PrimePowerEntry&)>& visit) {
  lo = std::max<u64>(lo, 2);
  if (hi < lo) return;
  if (hi > kMaxEnumerable)
    throw Error(ErrorCode::TooLarge, "prime power enumeration is limited to 10^12");

  const u64 root = isqrt(hi);
  const auto& small = cached_small_primes();
  std::vector<u64> base;
  for (std::uint32_t p : small) {
    if (p > root) break;
    base.push_back(p);
  }

  std::vector<bool> composite;
  std::vector<int> slot_of;
  std::vector<Slot> slots;

  for (u64 a = lo; a <= hi;) {
    const u64 b = std::min(hi, a + kSegment - 1);
    const u64 len = b - a + 1;

    composite.assign(len, false);
    for (u64 p : base) {
      if (p * p > b) break;
      u64 start = std::max(p * p, (a + p - 1) / p * p);
      for (u64 n = start; n <= b; n += p) composite[n - a] = true;
    }

    slots.clear();
    for (u64 i = 0; i < len; ++i) {
      const u64 q = a + i;
      if (q >= 2 && !composite[i]) slots.push_back({{q, q, 1}, q - 1, {}});
    }
    for (u64 p : base) {
      if (p * p > b) break;
      u64 pw = p * p;
      unsigned r = 2;
      while (pw <= b) {
        if (pw >= a) slots.push_back({{pw, p, r}, pw - 1, {}});
        if (pw > b / p) break;
        pw *= p;
        ++r;
      }
    }
    std::erase_if(slots, [&](const Slot& s) { return s.id.q < a || s.id.q > b; });
    std::sort(slots.begin(), slots.end(),
              [](const Slot& x, const Slot& y) { return x.id.q < y.id.q; });

    // Factor q - 1 over the segment [a - 1, b - 1].
    slot_of.assign(len, -1);
    for (size_t s = 0; s < slots.size(); ++s) slot_of[slots[s].id.q - a] = static_cast<int>(s);
    const u64 n_lo = a - 1, n_hi = b - 1;
    for (u64 p : base) {
      if (p * p > n_hi) break;
      u64 start = (n_lo + p - 1) / p * p;
      if (start == 0) start = p;
      for (u64 n = start; n <= n_hi; n += p) {
        const int s = slot_of[n - n_lo];
        if (s < 0) continue;
        Slot& slot = slots[s];
        slot.primes.push_back(p);
        while (slot.rem % p == 0) slot.rem /= p;
      }
    }

    PrimePowerEntry entry;
    for (auto& slot : slots) {
      if (slot.rem > 1) slot.primes.push_back(slot.rem);
      if (omega_filter && slot.primes.size() != *omega_filter) continue;
      entry.id = slot.id;
      entry.q_minus_1_primes = std::move(slot.primes);
      visit(entry);
    }

    if (b == hi) break;
    a = b + 1;
  }
}

namespace {

constexpr char kCacheMagic[8] = {'P', 'P', 'R', 'S', 'I', 'E', 'V', '1'};

std::filesystem::path cache_file(const char* dir, u64 lo, u64 hi,
                                 std::optional<unsigned> omega_filter) {
  std::string name = "pp_" + std::to_string(lo) + "_" + std::to_string(hi) + "_" +
                     (omega_filter ? std::to_string(*omega_filter) : std::string("all")) + ".bin";
  return std::filesystem::path(dir) / name;
}

template <typename T>
bool read_pod(std::istream& in, T& value) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&value), sizeof value));
}

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

bool load_cache(const std::filesystem::path& path, std::vector<PrimePowerEntry>& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kCacheMagic, 8) != 0) return false;
  u64 count = 0;
  if (!read_pod(in, count)) return false;
  out.clear();
  out.reserve(count);
  for (u64 i = 0; i < count; ++i) {
    PrimePowerEntry e;
    std::uint32_t r = 0, n = 0;
    if (!read_pod(in, e.id.q) || !read_pod(in, e.id.p) || !read_pod(in, r) || !read_pod(in, n))
      return false;
    e.id.r = r;
    e.q_minus_1_primes.resize(n);
    for (auto& p : e.q_minus_1_primes)
      if (!read_pod(in, p)) return false;
    out.push_back(std::move(e));
  }
  return true;
}

void store_cache(const std::filesystem::path& path, const std::vector<PrimePowerEntry>& entries) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out.write(kCacheMagic, 8);
    write_pod(out, static_cast<u64>(entries.size()));
    for (const auto& e : entries) {
      write_pod(out, e.id.q);
      write_pod(out, e.id.p);
      write_pod(out, static_cast<std::uint32_t>(e.id.r));
      write_pod(out, static_cast<std::uint32_t>(e.q_minus_1_primes.size()));
      for (u64 p : e.q_minus_1_primes) write_pod(out, p);
    }
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::vector<PrimePowerEntry> prime_power_entries(u64 lo, u64 hi,
                                                 std::optional<unsigned> omega_filter) {
  std::vector<PrimePowerEntry> out;
  const char* dir = std::getenv("PRIMPAIRS_SIEVE_CACHE");
  std::filesystem::path path;
  if (dir && *dir) {
    path = cache_file(dir, lo, hi, omega_filter);
    if (load_cache(path, out)) return out;
    out.clear();
  }
  for_each_prime_power(lo, hi, omega_filter,
                       [&](const PrimePowerEntry& e) { out.push_back(e); });
  if (!path.empty()) store_cache(path, out);
  return out;
}

}  // namespace primpairs
