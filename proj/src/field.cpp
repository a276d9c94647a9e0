// SPDX-License-Identifier: Apache-2.0
#include "field.hpp"

#include <cmath>
#include <unordered_map>

namespace primpairs {

namespace {

constexpr u64 kMaxCharacteristic = u64{1} << 32;
constexpr u64 kMaxOrder = u64{1} << 62;

u64 ceil_sqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

}  // namespace

Field Field::build(u64 q) {
  const auto id = prime_power_decompose(q);
  return build(id.p, id.r);
}

Field Field::build(u64 p, unsigned r) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidParameters, std::to_string(p) + " is not prime");
  if (r == 0) throw Error(ErrorCode::InvalidParameters, "degree must be positive");
  if (p >= kMaxCharacteristic) throw Error(ErrorCode::TooLarge, "characteristic too large");
  u64 q = 1;
  for (unsigned i = 0; i < r; ++i) {
    if (q > kMaxOrder / p) throw Error(ErrorCode::TooLarge, "field order too large");
    q *= p;
  }

  Field f;
  f.id_ = {q, p, r};
  f.group_ = profile(q - 1);
  const auto& n_factors = f.group_.factors;

  if (r == 1) {
    f.modulus_ = {0, 1};
    for (u64 g = 1; g < p; ++g) {
      if (f.has_order(Element{g}, q - 1, n_factors)) {
        f.gamma_ = {g};
        return f;
      }
    }
    throw Error(ErrorCode::InvalidParameters, "no primitive root found");
  }

  // Enumerate monic candidates in lexicographic order of (c_{r-1}, ..., c_0);
  // the code t = sum c_i p^i orders them exactly that way.
  f.modulus_.assign(r + 1, 0);
  f.modulus_[r] = 1;
  const Element x{p};
  for (u64 t = 1; t < q; ++t) {
    u64 rest = t;
    for (unsigned i = 0; i < r; ++i) {
      f.modulus_[i] = rest % p;
      rest /= p;
    }
    if (f.modulus_[0] == 0) continue;
    if (f.has_order(x, q - 1, n_factors)) {
      f.gamma_ = x;
      return f;
    }
  }
  throw Error(ErrorCode::InvalidParameters, "no primitive polynomial found");
}

bool Field::has_order(Element a, u64 n, const Factorization& n_factors) const {
  if (a.code == 0) return false;
  if (pow(a, n) != one()) return false;
  for (const auto& f : n_factors)
    if (pow(a, n / f.prime) == one()) return false;
  return true;
}

// For r >= 2 the code p - 1 is the constant polynomial p - 1 as well.
Element Field::minus_one() const noexcept { return {id_.p - 1}; }

Element Field::element(u64 code) const {
  if (code >= id_.q)
    throw Error(ErrorCode::InvalidParameters,
                "element code " + std::to_string(code) + " out of range for F_" + std::to_string(id_.q));
  return {code};
}

std::vector<u64> Field::coefficients(Element a) const {
  std::vector<u64> out(id_.r);
  for (unsigned i = 0; i < id_.r; ++i) {
    out[i] = a.code % id_.p;
    a.code /= id_.p;
  }
  return out;
}

Element Field::add(Element a, Element b) const {
  const u64 p = id_.p;
  if (id_.r == 1) {
    u64 s = a.code + b.code;
    return {s >= p ? s - p : s};
  }
  if (p == 2) return {a.code ^ b.code};
  u64 out = 0, scale = 1;
  for (unsigned i = 0; i < id_.r; ++i) {
    u64 s = a.code % p + b.code % p;
    if (s >= p) s -= p;
    out += s * scale;
    scale *= p;
    a.code /= p;
    b.code /= p;
  }
  return {out};
}

Element Field::neg(Element a) const {
  const u64 p = id_.p;
  if (id_.r == 1) return {a.code == 0 ? 0 : p - a.code};
  if (p == 2) return a;
  u64 out = 0, scale = 1;
  for (unsigned i = 0; i < id_.r; ++i) {
    const u64 c = a.code % p;
    out += (c == 0 ? 0 : p - c) * scale;
    scale *= p;
    a.code /= p;
  }
  return {out};
}

Element Field::sub(Element a, Element b) const { return add(a, neg(b)); }

Element Field::mul(Element a, Element b) const {
  if (id_.r == 1) return {mul_mod(a.code, b.code, id_.p)};
  return mul_poly(a, b);
}

Element Field::mul_poly(Element a, Element b) const {
  const u64 p = id_.p;
  const unsigned r = id_.r;
  const auto da = coefficients(a);
  const auto db = coefficients(b);
  std::vector<u64> prod(2 * r - 1, 0);
  for (unsigned i = 0; i < r; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + mul_mod(da[i], db[j], p)) % p;
  }
  // x^r = -(c_0 + ... + c_{r-1} x^{r-1})
  for (unsigned d = 2 * r - 2; d >= r; --d) {
    const u64 c = prod[d];
    if (c != 0) {
      prod[d] = 0;
      for (unsigned i = 0; i < r; ++i) {
        const u64 t = mul_mod(c, modulus_[i], p);
        prod[d - r + i] = (prod[d - r + i] + p - t) % p;
      }
    }
  }
  u64 out = 0, scale = 1;
  for (unsigned i = 0; i < r; ++i) {
    out += prod[i] * scale;
    scale *= p;
  }
  return {out};
}

Element Field::pow(Element a, u64 n) const {
  Element result = one();
  while (n) {
    if (n & 1) result = mul(result, a);
    a = mul(a, a);
    n >>= 1;
  }
  return result;
}

Element Field::inv(Element a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return pow(a, id_.q - 2);
}

bool Field::is_e_free(Element a, u64 e) const {
  const u64 n = id_.q - 1;
  if (e == 0 || n % e != 0)
    throw Error(ErrorCode::InvalidDivisor, std::to_string(e) + " does not divide q - 1");
  if (a.code == 0) return false;
  for (const auto& f : group_.factors) {
    if (e % f.prime != 0) continue;
    if (pow(a, n / f.prime) == one()) return false;
  }
  return true;
}

bool Field::is_primitive(Element a) const { return is_e_free(a, id_.q - 1); }

std::vector<Element> Field::primitive_elements() const {
  const u64 n = id_.q - 1;
  std::vector<Element> out;
  out.reserve(group_.phi);
  Element power = one();
  const Element g = gamma_;
  for (u64 m = 0; m < n; ++m) {
    if (gcd(m, n) == 1) out.push_back(power);
    power = mul(power, g);
  }
  return out;
}

u64 Field::discrete_log(Element a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "logarithm of zero");
  const u64 n = id_.q - 1;
  if (n == 1) return 0;

  u64 x = 0, modulus = 1;
  for (const auto& f : group_.factors) {
    const u64 l = f.prime;
    const u64 le = checked_pow(l, f.exponent);
    const Element g0 = pow(gamma_, n / le);
    const Element h0 = pow(a, n / le);
    const Element gl = pow(g0, le / l);  // order l

    // Baby steps for the order-l subgroup.
    const u64 m = ceil_sqrt(l);
    std::unordered_map<u64, u64> baby;
    baby.reserve(m * 2);
    Element cur = one();
    for (u64 j = 0; j < m; ++j) {
      baby.emplace(cur.code, j);
      cur = mul(cur, gl);
    }
    const Element giant = inv(pow(gl, m));

    u64 xl = 0, lk = 1;
    const Element g0_inv = inv(g0);
    for (unsigned k = 0; k < f.exponent; ++k) {
      const Element hk = pow(mul(h0, pow(g0_inv, xl)), le / (lk * l));
      Element y = hk;
      u64 digit = l;
      for (u64 i = 0; i <= m; ++i) {
        auto it = baby.find(y.code);
        if (it != baby.end()) {
          digit = (i * m + it->second) % l;
          break;
        }
        y = mul(y, giant);
      }
      if (digit == l) throw Error(ErrorCode::InvalidParameters, "discrete logarithm failed");
      xl += digit * lk;
      lk *= l;
    }

    // CRT: x = x mod modulus, xl mod le.
    u64 t = 0;
    {
      const u64 diff = (xl + le - x % le) % le;
      // modulus and le are coprime; solve modulus * t = diff (mod le).
      __int128 r0 = static_cast<__int128>(le), r1 = static_cast<__int128>(modulus % le);
      __int128 s0 = 0, s1 = 1;
      while (r1 != 0) {
        const __int128 qd = r0 / r1;
        __int128 tmp = r0 - qd * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - qd * s1;
        s0 = s1;
        s1 = tmp;
      }
      __int128 invm = s0 % static_cast<__int128>(le);
      if (invm < 0) invm += le;
      t = mul_mod(diff, static_cast<u64>(invm), le);
    }
    x += modulus * t;
    modulus *= le;
  }
  return x % n;
}

LogTable::LogTable(const Field& field, u64 limit) : group_order_(field.order() - 1) {
  const u64 q = field.order();
  if (q > limit || q > (u64{1} << 32))
    throw Error(ErrorCode::TooLarge, "log table for F_" + std::to_string(q) + " exceeds the limit");
  exp_.resize(group_order_);
  log_.assign(q, 0);
  Element cur = field.one();
  const Element g = field.gamma();
  for (u64 k = 0; k < group_order_; ++k) {
    exp_[k] = static_cast<std::uint32_t>(cur.code);
    log_[cur.code] = static_cast<std::uint32_t>(k);
    cur = field.mul(cur, g);
  }
}

u64 LogTable::log(Element a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "logarithm of zero");
  return log_[a.code];
}

}  // namespace primpairs
