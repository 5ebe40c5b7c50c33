#include "pell/cubic.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "pell/error.hpp"

namespace pell {

PellCubic::PellCubic(Field field, Fq r, std::optional<Fq> root)
    : field_(std::move(field)), r_(r) {
  if (!field_.contains(r_)) throw Error("r is not a field element");
  if (r_ == field_.zero()) throw Error("r must be nonzero");
  cls_ = field_.classify_cube(r_);
  if (root) {
    if (std::find(cls_.roots.begin(), cls_.roots.end(), *root) == cls_.roots.end()) {
      throw Error(field_.format(*root) + " is not a cube root of r");
    }
    s_ = root;
  } else if (!cls_.roots.empty()) {
    s_ = cls_.roots.front();
  }
}

void PellCubic::require(CubeKind kind, const char* op) const {
  if (cls_.kind != kind) {
    throw UnsupportedError(std::string(op) + " requires class " + std::string(to_string(kind)) +
                           ", r is " + std::string(to_string(cls_.kind)));
  }
}

void PellCubic::exclusion_mismatch(const ProjPoint3& pt) const {
  throw std::logic_error("exclusion set disagrees with the norm predicate at [" +
                         field_.format(pt.l) + ":" + field_.format(pt.m) + ":" +
                         field_.format(pt.n) + "]");
}

CubicPoint PellCubic::mul(const CubicPoint& a, const CubicPoint& b) const {
  const Field& f = field_;
  const auto x1 = f(a.x), y1 = f(a.y), z1 = f(a.z);
  const auto x2 = f(b.x), y2 = f(b.y), z2 = f(b.z);
  const auto r = f(r_);
  return {(x1 * x2 + r * (y1 * z2 + z1 * y2)).raw(),
          (x1 * y2 + y1 * x2 + r * z1 * z2).raw(),
          (x1 * z2 + y1 * y2 + z1 * x2).raw()};
}

ProjPoint3 PellCubic::mul(const ProjPoint3& a, const ProjPoint3& b) const {
  const CubicPoint prod = mul(CubicPoint{a.l, a.m, a.n}, CubicPoint{b.l, b.m, b.n});
  return canonical(prod.x, prod.y, prod.z);
}

CubicPoint PellCubic::conjugate(const CubicPoint& a) const {
  const Field& f = field_;
  const auto x = f(a.x), y = f(a.y), z = f(a.z), r = f(r_);
  return {(x * x - r * y * z).raw(), (r * z * z - x * y).raw(), (y * y - x * z).raw()};
}

ProjPoint3 PellCubic::conjugate(const ProjPoint3& a) const {
  const CubicPoint c = conjugate(CubicPoint{a.l, a.m, a.n});
  return canonical(c.x, c.y, c.z);
}

CubicPoint PellCubic::pow(CubicPoint a, uint64_t e) const {
  CubicPoint result = identity();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Fq PellCubic::norm(Fq xv, Fq yv, Fq zv) const {
  const Field& f = field_;
  const auto x = f(xv), y = f(yv), z = f(zv), r = f(r_);
  return (x * x * x - 3 * r * x * y * z + r * y * y * y + r * r * z * z * z).raw();
}

ProjPoint3 PellCubic::canonical(Fq l, Fq m, Fq n) const {
  const Field& f = field_;
  if (n != f.zero()) {
    const Fq inv = f.inv(n);
    return {f.mul(l, inv), f.mul(m, inv), f.one()};
  }
  if (m != f.zero()) return {f.div(l, m), f.one(), f.zero()};
  if (l != f.zero()) return proj_identity();
  throw Error("[0:0:0] is not a projective point");
}

bool PellCubic::is_valid(const ProjPoint3& pt) const {
  const Field& f = field_;
  if (!f.contains(pt.l) || !f.contains(pt.m) || !f.contains(pt.n)) return false;
  const bool canonical_form = pt.n == f.one() || (pt.n == f.zero() && pt.m == f.one()) ||
                              pt == proj_identity();
  return canonical_form && norm(pt.l, pt.m, pt.n) != f.zero();
}

GroupOrderReport PellCubic::order() const {
  const uint64_t q = field_.q();
  switch (cls_.kind) {
    case CubeKind::NonCube: return {q * q + q + 1, Structure::Cyclic, {q * q + q + 1}};
    case CubeKind::CubeThreeRoots:
      return {(q - 1) * (q - 1), Structure::Product, {q - 1, q - 1}};
    case CubeKind::CubeOneRoot: return {q * q - 1, Structure::Cyclic, {q * q - 1}};
    case CubeKind::Char3: return {q * q, Structure::Unspecified, {}};
  }
  return {};
}

namespace {

void push_unique(std::vector<Fq>& v, Fq a) {
  if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
}

}  // namespace

std::vector<Fq> PellCubic::excluded_in_row(Fq mv) const {
  std::vector<Fq> out;
  if (cls_.kind == CubeKind::NonCube) return out;
  const Field& f = field_;
  const auto m = f(mv), s = f(*s_);
  if (cls_.kind == CubeKind::CubeThreeRoots) {
    // Line generated by [-s w^i : 1 : 0] is [-(m + s w^i) s w^i : m : 1]. Two
    // lines meet where m is the third root; the point shared by lines i and
    // i+1 is kept only on line i+1 (m = s w^{i-1} is dropped from line i).
    const auto w = f(*field_.omega());
    const Scalar rho[3] = {s, s * w, s * w * w};
    for (int i = 0; i < 3; ++i) {
      if (m == rho[(i + 2) % 3]) continue;
      push_unique(out, (-(m + rho[i]) * rho[i]).raw());
    }
    return out;
  }
  // CubeOneRoot and Char3: the line through [-s:1:0] plus [s^2:s:1]. In
  // characteristic 3 the latter already lies on the line.
  push_unique(out, (-(m + s) * s).raw());
  if (m == s) push_unique(out, (s * s).raw());
  return out;
}

std::vector<Fq> PellCubic::excluded_at_infinity() const {
  std::vector<Fq> out;
  if (cls_.kind == CubeKind::NonCube) return out;
  const Field& f = field_;
  if (cls_.kind == CubeKind::CubeThreeRoots) {
    const auto s = f(*s_), w = f(*field_.omega());
    push_unique(out, (-s).raw());
    push_unique(out, (-(s * w)).raw());
    push_unique(out, (-(s * w * w)).raw());
    return out;
  }
  out.push_back(f.neg(*s_));
  return out;
}

bool PellCubic::is_excluded(const ProjPoint3& pt) const {
  const Field& f = field_;
  std::vector<Fq> skip;
  if (pt.n == f.one()) {
    skip = excluded_in_row(pt.m);
  } else if (pt.n == f.zero() && pt.m == f.one()) {
    skip = excluded_at_infinity();
  } else {
    return false;  // [1:0:0]
  }
  return std::find(skip.begin(), skip.end(), pt.l) != skip.end();
}

std::vector<ProjPoint3> PellCubic::excluded_classes() const {
  const Field& f = field_;
  std::vector<ProjPoint3> out;
  for (uint64_t mi = 0; mi < f.q(); ++mi) {
    const Fq m = f.element(mi);
    for (Fq l : excluded_in_row(m)) out.push_back({l, m, f.one()});
  }
  for (Fq l : excluded_at_infinity()) out.push_back({l, f.one(), f.zero()});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint3> PellCubic::enumerate_proj(unsigned threads) const {
  const uint64_t q = field_.q();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<uint64_t>(q, 256))));
  if (threads == 1) {
    std::vector<ProjPoint3> out;
    out.reserve(order().order);
    for_each_proj([&](const ProjPoint3& pt) { out.push_back(pt); });
    return out;
  }

  std::vector<std::vector<ProjPoint3>> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const uint64_t begin = q * t / threads, end = q * (t + 1) / threads;
        for_each_proj([&](const ProjPoint3& pt) { parts[t].push_back(pt); }, begin, end,
                      t + 1 == threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<ProjPoint3> out;
  out.reserve(order().order);
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<CubicPoint> PellCubic::enumerate_solutions(unsigned threads) const {
  const std::vector<ProjPoint3> classes = enumerate_proj(threads);
  std::vector<CubicPoint> out;
  out.reserve(classes.size());
  for (const auto& pt : classes) out.push_back(psi(pt));
  return out;
}

CubicPoint PellCubic::psi1(const ProjPoint3& pt) const {
  require(CubeKind::NonCube, "psi1");
  const Field& f = field_;
  const uint64_t q = f.q();
  // floor(q/3) - 1 = (q - 4)/3 since q = 1 mod 3
  const Fq n = norm(pt.l, pt.m, pt.n);
  if (n == f.zero()) throw Error("psi1: class has zero norm");
  const CubicPoint a{pt.l, pt.m, pt.n};
  const CubicPoint cube = mul(mul(a, a), a);
  const auto scale = f(n).pow((q - 4) / 3);
  return {(scale * f(cube.x)).raw(), (scale * f(cube.y)).raw(), (scale * f(cube.z)).raw()};
}

CubicPoint PellCubic::psi2(const ProjPoint3& pt) const {
  require(CubeKind::CubeThreeRoots, "psi2");
  const Field& f = field_;
  const auto l = f(pt.l), m = f(pt.m), n = f(pt.n), s = f(*s_);
  const auto nr = f(norm(pt.l, pt.m, pt.n));
  if (nr.is_zero()) throw Error("psi2: class has zero norm");
  const auto s2 = s * s, s4 = s2 * s2, s5 = s4 * s;
  // The three numerators sum to (l + s m + s^2 n)^3.
  const auto x = l * l * l + 2 * s2 * l * (m * m + s * m * n + s2 * n * n) + s4 * m * n * (m + s * n);
  const auto y = s2 * m * m * m + 2 * m * (l * l + s2 * l * n + s4 * n * n) + s * l * n * (l + s2 * n);
  const auto z = s5 * n * n * n + 2 * s * n * (l * l + s * l * m + s2 * m * m) + l * m * (l + s * m);
  const auto inv = nr.inv();
  return {(x * inv).raw(), (y * inv).raw(), (z * inv / s).raw()};
}

ProjPoint3 PellCubic::psi2_inv(const CubicPoint& pt) const {
  require(CubeKind::CubeThreeRoots, "psi2_inv");
  const Field& f = field_;
  const auto x = f(pt.x), y = f(pt.y), z = f(pt.z), s = f(*s_);
  const auto s2 = s * s;
  const auto l = s2 * (1 + 2 * x - s * y - s2 * z);
  const auto m = s * (1 - x + 2 * s * y - s2 * z);
  const auto n = 1 - x - s * y + 2 * s2 * z;
  return canonical(l.raw(), m.raw(), n.raw());
}

CubicPoint PellCubic::psi3(const ProjPoint3& pt) const {
  require(CubeKind::CubeOneRoot, "psi3");
  const Field& f = field_;
  // floor(q/3) = (q - 2)/3 since q = 2 mod 3
  const Fq n = norm(pt.l, pt.m, pt.n);
  if (n == f.zero()) throw Error("psi3: class has zero norm");
  const auto scale = f(n).pow((f.q() - 2) / 3);
  return {(scale * f(pt.l)).raw(), (scale * f(pt.m)).raw(), (scale * f(pt.n)).raw()};
}

ProjPoint3 PellCubic::psi3_inv(const CubicPoint& pt) const {
  require(CubeKind::CubeOneRoot, "psi3_inv");
  return canonical(pt.x, pt.y, pt.z);
}

CubicPoint PellCubic::psi3_char3(const ProjPoint3& pt) const {
  require(CubeKind::Char3, "psi3_char3");
  const Field& f = field_;
  const Fq n = norm(pt.l, pt.m, pt.n);
  if (n == f.zero()) throw Error("psi3_char3: class has zero norm");
  const CubicPoint a{pt.l, pt.m, pt.n};
  const CubicPoint sq = mul(a, a);
  const auto scale = f(n).pow(f.q() / 3 - 1);
  return {(scale * f(sq.x)).raw(), (scale * f(sq.y)).raw(), (scale * f(sq.z)).raw()};
}

CubicPoint PellCubic::psi(const ProjPoint3& pt) const {
  switch (cls_.kind) {
    case CubeKind::NonCube: return psi1(pt);
    case CubeKind::CubeThreeRoots: return psi2(pt);
    case CubeKind::CubeOneRoot: return psi3(pt);
    case CubeKind::Char3: return psi3_char3(pt);
  }
  throw std::logic_error("unknown cube class");
}

ProjPoint3 PellCubic::compress(const CubicPoint& pt) const {
  const Field& f = field_;
  if (!f.contains(pt.x) || !f.contains(pt.y) || !f.contains(pt.z) || !contains(pt)) {
    throw Error("compress: point is not on the Pell cubic");
  }
  switch (cls_.kind) {
    case CubeKind::CubeThreeRoots: return psi2_inv(pt);
    case CubeKind::CubeOneRoot: return psi3_inv(pt);
    case CubeKind::NonCube:
      throw UnsupportedError("compress: no explicit inverse of psi1 for a non-cube r");
    case CubeKind::Char3:
      throw UnsupportedError("compress: no explicit inverse of psi3_char3 in characteristic 3");
  }
  throw std::logic_error("unknown cube class");
}

CubicPoint PellCubic::decompress(const ProjPoint3& pt) const {
  const Field& f = field_;
  if (!f.contains(pt.l) || !f.contains(pt.m) || !f.contains(pt.n)) {
    throw Error("decompress: coordinate outside the field");
  }
  const ProjPoint3 c = canonical(pt.l, pt.m, pt.n);
  if (!is_valid(c)) throw Error("decompress: class has zero norm");
  return psi(c);
}

uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  while (true) {
    const uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

CubicSampler::CubicSampler(const PellCubic& cubic, uint64_t seed) : cubic_(&cubic), rng_(seed) {}

ProjPoint3 CubicSampler::next_class() {
  const Field& f = cubic_->field();
  const uint64_t q = f.q();
  const uint64_t total = q * q + q + 1;
  while (true) {
    const uint64_t u = uniform_below(rng_, total);
    ProjPoint3 pt;
    if (u < q * q) {
      pt = {f.element(u % q), f.element(u / q), f.one()};
    } else if (u < q * q + q) {
      pt = {f.element(u - q * q), f.one(), f.zero()};
    } else {
      pt = cubic_->proj_identity();
    }
    if (!cubic_->is_excluded(pt)) return pt;
  }
}

CubicPoint sample(const PellCubic& cubic, uint64_t seed) {
  CubicSampler sampler(cubic, seed);
  return sampler.next();
}

}  // namespace pell
