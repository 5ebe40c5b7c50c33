#include "pell/field.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <utility>

#include "pell/error.hpp"

namespace pell {

namespace {

constexpr unsigned kMaxDegree = 32;
constexpr uint64_t kMaxQ = uint64_t{1} << 32;
constexpr uint64_t kMaxP = uint64_t{1} << 31;
// Below this size square and cube roots are found by scanning the field.
constexpr uint64_t kExhaustiveRootLimit = uint64_t{1} << 16;

using Digits = std::array<uint64_t, kMaxDegree>;

uint64_t pow_mod(uint64_t base, uint64_t e, uint64_t p) {
  uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Inverse of a modulo m for gcd(a, m) = 1.
uint64_t inverse_mod(uint64_t a, uint64_t m) {
  int64_t old_r = static_cast<int64_t>(a), r = static_cast<int64_t>(m);
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    const int64_t quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  const auto sm = static_cast<int64_t>(m);
  return static_cast<uint64_t>(((old_s % sm) + sm) % sm);
}

// Dense polynomials over F_p, low degree first, no trailing zeros.
using Poly = std::vector<uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_rem(Poly a, const Poly& m, uint64_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint64_t lead_inv = pow_mod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const uint64_t c = a.back() * lead_inv % p;
    const size_t shift = a.size() - 1 - dm;
    for (size_t j = 0; j <= dm; ++j) {
      a[shift + j] = (a[shift + j] + (p - c) * m[j]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_rem(std::move(out), m, p);
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& m, uint64_t p) {
  Poly result = poly_rem({1}, m, p);
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: a monic f of degree k is irreducible iff gcd(f, x^{p^i} - x) = 1
// for every i <= k/2.
bool is_irreducible(const Poly& f, uint64_t p) {
  const size_t k = f.size() - 1;
  if (k <= 1) return true;
  const Poly x = {0, 1};
  Poly h = poly_rem(x, f, p);
  for (size_t i = 1; i <= k / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

// Smallest exponent-pattern in packed order: c_{k-1} is the most significant digit.
Poly smallest_irreducible(uint64_t p, unsigned k) {
  uint64_t count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  for (uint64_t idx = 0; idx < count; ++idx) {
    Poly f(k + 1, 0);
    uint64_t rest = idx;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    f[k] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string_view to_string(CubeKind kind) {
  switch (kind) {
    case CubeKind::NonCube: return "NonCube";
    case CubeKind::CubeThreeRoots: return "CubeThreeRoots";
    case CubeKind::CubeOneRoot: return "CubeOneRoot";
    case CubeKind::Char3: return "Char3";
  }
  return "?";
}

Field Field::make(uint64_t p, unsigned k, std::optional<std::vector<uint64_t>> modulus) {
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  if (p >= kMaxP) throw Error("characteristic must be below 2^31");
  if (k < 1 || k >= kMaxDegree) throw Error("extension degree out of range");
  uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q >= kMaxQ) throw Error("field size must be below 2^32");
  }

  Field f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = q;
  if (modulus) {
    Poly m = *modulus;
    if (m.size() != k + 1) throw Error("modulus must have degree " + std::to_string(k));
    for (uint64_t c : m) {
      if (c >= p) throw Error("modulus coefficients must lie in [0, p)");
    }
    if (m.back() != 1) throw Error("modulus must be monic");
    if (!is_irreducible(m, p)) throw Error("modulus is reducible over F_p");
    f.modulus_ = std::move(m);
  } else if (k == 1) {
    f.modulus_ = {0, 1};
  } else {
    f.modulus_ = smallest_irreducible(p, k);
  }

  if (q % 3 == 1) {
    const uint64_t e = (q - 1) / 3;
    for (uint64_t i = 2; i < q; ++i) {
      const Fq w = f.pow(f.element(i), e);
      if (w != f.one()) {
        f.omega_ = std::min(w, f.mul(w, w));
        break;
      }
    }
  }
  return f;
}

uint64_t Field::reduce_int(int64_t n) const {
  const auto sp = static_cast<int64_t>(p_);
  int64_t r = n % sp;
  if (r < 0) r += sp;
  return static_cast<uint64_t>(r);
}

Fq Field::from_int(int64_t n) const { return {reduce_int(n)}; }

Fq Field::from_coeffs(std::span<const uint64_t> coeffs) const {
  if (coeffs.size() != k_) throw Error("expected " + std::to_string(k_) + " coefficients");
  uint64_t v = 0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw Error("coefficient out of range");
    v = v * p_ + coeffs[i];
  }
  return {v};
}

std::vector<uint64_t> Field::coeffs(Fq a) const {
  std::vector<uint64_t> out(k_);
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = a.v % p_;
    a.v /= p_;
  }
  return out;
}

Fq Field::element(uint64_t index) const {
  if (index >= q_) throw Error("element index out of range");
  return {index};
}

Fq Field::add(Fq a, Fq b) const {
  if (k_ == 1) {
    const uint64_t s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  uint64_t out = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const uint64_t s = (a.v % p_ + b.v % p_) % p_;
    out += s * scale;
    scale *= p_;
    a.v /= p_;
    b.v /= p_;
  }
  return {out};
}

Fq Field::neg(Fq a) const {
  if (k_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
  uint64_t out = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const uint64_t c = a.v % p_;
    out += (c == 0 ? 0 : p_ - c) * scale;
    scale *= p_;
    a.v /= p_;
  }
  return {out};
}

Fq Field::sub(Fq a, Fq b) const { return add(a, neg(b)); }

Fq Field::mul(Fq a, Fq b) const {
  if (k_ == 1) return {a.v * b.v % p_};

  Digits da{}, db{};
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = a.v % p_;
    db[i] = b.v % p_;
    a.v /= p_;
    b.v /= p_;
  }
  std::array<uint64_t, 2 * kMaxDegree> prod{};
  for (unsigned i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
  }
  // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
  for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
    const uint64_t c = prod[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
    }
  }
  uint64_t out = 0;
  for (unsigned i = k_; i-- > 0;) out = out * p_ + prod[i];
  return {out};
}

Fq Field::pow(Fq a, uint64_t e) const {
  Fq result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Fq Field::inv(Fq a) const {
  if (a.v == 0) throw Error("inverse of zero");
  if (k_ == 1) return {inverse_mod(a.v, p_)};
  return pow(a, q_ - 2);
}

bool Field::is_square(Fq d) const {
  if (d.v == 0) throw Error("is_square: zero has no square class");
  if (p_ == 2) return true;
  return pow(d, (q_ - 1) / 2) == one();
}

std::optional<Fq> Field::root_exhaustive(Fq a, unsigned degree, bool all,
                                         std::vector<Fq>* out) const {
  std::optional<Fq> first;
  for (uint64_t i = 1; i < q_; ++i) {
    const Fq x{i};
    Fq y = mul(x, x);
    if (degree == 3) y = mul(y, x);
    if (y == a) {
      if (!first) first = x;
      if (out) out->push_back(x);
      if (!all) break;
    }
  }
  return first;
}

// Generalized Tonelli-Shanks for a prime degree l with l | q - 1: write
// q - 1 = l^e t, take x0 = a^u with l u = 1 mod t, then correct x0 by an
// l-th root of a^{l u - 1}, found as a discrete log inside the order-l^e
// Sylow subgroup.
std::optional<Fq> Field::root_sylow(Fq a, unsigned degree) const {
  const uint64_t l = degree;
  uint64_t t = q_ - 1;
  unsigned e = 0;
  while (t % l == 0) {
    t /= l;
    ++e;
  }
  if (pow(a, (q_ - 1) / l) != one()) return std::nullopt;

  Fq z = one();
  for (uint64_t i = 2; i < q_; ++i) {
    if (pow(Fq{i}, (q_ - 1) / l) != one()) {
      z = Fq{i};
      break;
    }
  }
  const Fq g = pow(z, t);  // order l^e

  const uint64_t u = t > 1 ? inverse_mod(l % t, t) : 0;
  const Fq x0 = pow(a, u);
  Fq x0l = one();
  for (uint64_t i = 0; i < l; ++i) x0l = mul(x0l, x0);
  const Fq b = div(x0l, a);  // x0^l = a b

  uint64_t lpow_e1 = 1;
  for (unsigned i = 0; i + 1 < e; ++i) lpow_e1 *= l;
  const Fq gamma = pow(g, lpow_e1);  // order l
  const Fq g_inv = inv(g);
  uint64_t log = 0, lpow_i = 1, exp_down = lpow_e1;
  for (unsigned i = 0; i < e; ++i) {
    const Fq h = pow(mul(pow(g_inv, log), b), exp_down);
    uint64_t digit = 0;
    Fq acc = one();
    while (acc != h) {
      acc = mul(acc, gamma);
      ++digit;
    }
    log += digit * lpow_i;
    lpow_i *= l;
    exp_down /= l;
  }
  if (log % l != 0) return std::nullopt;
  const Fq y = pow(g, log / l);  // y^l = b
  return div(x0, y);
}

std::optional<Fq> Field::sqrt(Fq d) const {
  if (d.v == 0) throw Error("sqrt: zero argument");
  if (p_ == 2) return pow(d, q_ / 2);
  if (!is_square(d)) return std::nullopt;
  std::optional<Fq> s;
  if (q_ < kExhaustiveRootLimit) {
    s = root_exhaustive(d, 2, false, nullptr);
  } else {
    s = root_sylow(d, 2);
  }
  return std::min(*s, neg(*s));
}

CubeClass Field::classify_cube(Fq r) const {
  if (r.v == 0) throw Error("classify_cube: zero argument");
  CubeClass out;
  if (p_ == 3) {
    out.kind = CubeKind::Char3;
    out.roots = {pow(r, q_ / 3)};
    return out;
  }
  if (q_ % 3 == 2) {
    out.kind = CubeKind::CubeOneRoot;
    out.roots = {pow(r, (2 * q_ - 1) / 3)};
    return out;
  }
  if (pow(r, (q_ - 1) / 3) != one()) {
    out.kind = CubeKind::NonCube;
    return out;
  }
  out.kind = CubeKind::CubeThreeRoots;
  if (q_ < kExhaustiveRootLimit) {
    root_exhaustive(r, 3, true, &out.roots);
  } else {
    const Fq s = *root_sylow(r, 3);
    out.roots = {s, mul(s, *omega_), mul(s, mul(*omega_, *omega_))};
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

std::string Field::format(Fq a) const {
  if (k_ == 1) return std::to_string(a.v);
  std::string out;
  for (unsigned i = 0; i < k_; ++i) {
    if (i) out += ',';
    out += std::to_string(a.v % p_);
    a.v /= p_;
  }
  return out;
}

Fq Field::parse(std::string_view text) const {
  auto parse_int = [&](std::string_view tok) {
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int64_t n = 0;
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    if (!tok.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, n);
    if (tok.empty() || ec != std::errc{} || ptr != end) {
      throw Error("malformed field element '" + std::string(text) + "'");
    }
    return reduce_int(n);
  };

  std::vector<uint64_t> coeffs;
  size_t start = 0;
  while (true) {
    const size_t comma = text.find(',', start);
    coeffs.push_back(parse_int(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coeffs.size() != k_) {
    throw Error("field element '" + std::string(text) + "' needs " + std::to_string(k_) +
                " coefficient(s)");
  }
  return from_coeffs(coeffs);
}

}  // namespace pell
