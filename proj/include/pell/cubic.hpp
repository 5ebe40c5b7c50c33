#pragma once

/**
 * The Pell cubic x^3 - 3 r x y z + r y^3 + r^2 z^3 = 1 over F_q.
 *
 * Points are the norm-one elements of F_q[t]/(t^3 - r). The group is
 * parameterized by P_r, the invertible elements modulo F_q^*, whose classes
 * are written [l:m:1], [l:1:0] and [1:0:0]. Which classes are invertible
 * depends on how r factors:
 *
 *   NonCube         every class                      q^2 + q + 1, cyclic
 *   CubeThreeRoots  minus 3q classes on the lines    (q - 1)^2,   F_q^* x F_q^*
 *                   through [-s w^i : 1 : 0]
 *   CubeOneRoot     minus [-s:1:0], [-(m+s)s:m:1]    q^2 - 1,     cyclic
 *                   and [s^2:s:1]
 *   Char3           as CubeOneRoot, where [s^2:s:1]  q^2
 *                   is already on the excluded line
 *
 * and each case has its own isomorphism P_r -> C_r (psi1, psi2, psi3 and
 * psi3_char3). psi2 and psi3 come with explicit inverses, which give the
 * two-coordinate compressed form of a point.
 *
 * Throughout, s is the fixed cube root of r (smallest in canonical order
 * unless chosen explicitly) and omega is the field's cube root of unity.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pell/field.hpp"
#include "pell/group_order.hpp"

namespace pell {

struct CubicPoint {
  Fq x, y, z;
  friend constexpr auto operator<=>(const CubicPoint&, const CubicPoint&) = default;
};

/// A class [l:m:n], canonical when its last nonzero coordinate is 1.
struct ProjPoint3 {
  Fq l, m, n;
  friend constexpr auto operator<=>(const ProjPoint3&, const ProjPoint3&) = default;
};

class PellCubic {
 public:
  /// Throws pell::Error for r = 0, or if `root` is given and is not a cube
  /// root of r.
  PellCubic(Field field, Fq r, std::optional<Fq> root = std::nullopt);

  const Field& field() const { return field_; }
  Fq r() const { return r_; }
  const CubeClass& cube_class() const { return cls_; }
  CubeKind kind() const { return cls_.kind; }
  /// The fixed cube root s; absent for NonCube.
  std::optional<Fq> root() const { return s_; }
  std::optional<Fq> omega() const { return field_.omega(); }

  CubicPoint identity() const { return {field_.one(), field_.zero(), field_.zero()}; }
  ProjPoint3 proj_identity() const { return {field_.one(), field_.zero(), field_.zero()}; }

  CubicPoint mul(const CubicPoint& a, const CubicPoint& b) const;
  ProjPoint3 mul(const ProjPoint3& a, const ProjPoint3& b) const;
  /// (x^2 - r y z, r z^2 - x y, y^2 - x z): the inverse of a norm-one point.
  CubicPoint conjugate(const CubicPoint& a) const;
  /// The inverse class [l^2 - r m n : r n^2 - l m : m^2 - l n].
  ProjPoint3 conjugate(const ProjPoint3& a) const;
  CubicPoint pow(CubicPoint a, uint64_t e) const;

  /// x^3 - 3 r x y z + r y^3 + r^2 z^3
  Fq norm(Fq x, Fq y, Fq z) const;
  bool contains(const CubicPoint& pt) const { return norm(pt.x, pt.y, pt.z) == field_.one(); }
  /// Scales the last nonzero coordinate to 1. Throws on (0, 0, 0).
  ProjPoint3 canonical(Fq l, Fq m, Fq n) const;
  /// Canonical and of nonzero norm.
  bool is_valid(const ProjPoint3& pt) const;

  GroupOrderReport order() const;

  /// Values of l for which [l:m:1] is excluded from P_r, by construction of
  /// the norm-zero lines (not by evaluating the norm).
  std::vector<Fq> excluded_in_row(Fq m) const;
  /// Values of l for which [l:1:0] is excluded from P_r.
  std::vector<Fq> excluded_at_infinity() const;
  /// Membership of a canonical class in the constructed exclusion set.
  bool is_excluded(const ProjPoint3& pt) const;
  /// Every excluded class, sorted.
  std::vector<ProjPoint3> excluded_classes() const;

  /// Visits the classes of P_r: rows [l:m:1] for m = 0..q-1 (l ascending),
  /// then [l:1:0], then [1:0:0]. Rows are restricted to [m_begin, m_end);
  /// the line at infinity and the identity are visited only when
  /// `with_infinity` is set. Each emitted class is checked against the
  /// nonzero-norm predicate; a disagreement with the constructed exclusion
  /// set throws std::logic_error.
  template <class Fn>
  void for_each_proj(Fn&& fn, uint64_t m_begin, uint64_t m_end, bool with_infinity) const;
  template <class Fn>
  void for_each_proj(Fn&& fn) const {
    for_each_proj(fn, 0, field_.q(), true);
  }

  std::vector<ProjPoint3> enumerate_proj(unsigned threads = 1) const;
  /// psi applied to enumerate_proj, in the same order.
  std::vector<CubicPoint> enumerate_solutions(unsigned threads = 1) const;

  /// N^((q-4)/3) * pt^3. NonCube only.
  CubicPoint psi1(const ProjPoint3& pt) const;
  /// Explicit rational map in s. CubeThreeRoots only.
  CubicPoint psi2(const ProjPoint3& pt) const;
  ProjPoint3 psi2_inv(const CubicPoint& pt) const;
  /// N^((q-2)/3) * pt. CubeOneRoot only.
  CubicPoint psi3(const ProjPoint3& pt) const;
  ProjPoint3 psi3_inv(const CubicPoint& pt) const;
  /// N^(q/3 - 1) * pt^2. Char3 only.
  CubicPoint psi3_char3(const ProjPoint3& pt) const;
  /// The isomorphism for this parameter's class. Throws on invalid classes.
  CubicPoint psi(const ProjPoint3& pt) const;

  /// psi2_inv / psi3_inv of a point on the curve. Throws UnsupportedError
  /// for NonCube and Char3, pell::Error for points off the curve.
  ProjPoint3 compress(const CubicPoint& pt) const;
  /// psi of a valid class (canonicalizing the input first).
  CubicPoint decompress(const ProjPoint3& pt) const;

 private:
  void require(CubeKind kind, const char* op) const;
  [[noreturn]] void exclusion_mismatch(const ProjPoint3& pt) const;

  Field field_;
  Fq r_;
  CubeClass cls_;
  std::optional<Fq> s_;
};

/// Reproducible uniform draws from P_r (rejection on the excluded classes)
/// pushed through psi.
class CubicSampler {
 public:
  CubicSampler(const PellCubic& cubic, uint64_t seed);

  ProjPoint3 next_class();
  CubicPoint next() { return cubic_->psi(next_class()); }

 private:
  const PellCubic* cubic_;
  std::mt19937_64 rng_;
};

/// First draw of CubicSampler(cubic, seed).
CubicPoint sample(const PellCubic& cubic, uint64_t seed);

/// Uniform integer in [0, bound) from a 64-bit engine, independent of the
/// standard library's distribution implementation.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound);

// ---------------------------------------------------------------------------

template <class Fn>
void PellCubic::for_each_proj(Fn&& fn, uint64_t m_begin, uint64_t m_end,
                              bool with_infinity) const {
  const Field& f = field_;
  const uint64_t q = f.q();
  std::vector<Fq> skip;
  auto emit = [&](const ProjPoint3& pt, bool excluded) {
    const bool zero_norm = norm(pt.l, pt.m, pt.n) == f.zero();
    if (excluded != zero_norm) exclusion_mismatch(pt);
    if (!excluded) fn(pt);
  };
  auto in_skip = [&](Fq l) {
    for (Fq e : skip) {
      if (e == l) return true;
    }
    return false;
  };
  for (uint64_t mi = m_begin; mi < m_end; ++mi) {
    const Fq m = f.element(mi);
    skip = excluded_in_row(m);
    for (uint64_t li = 0; li < q; ++li) {
      const Fq l = f.element(li);
      emit(ProjPoint3{l, m, f.one()}, in_skip(l));
    }
  }
  if (!with_infinity) return;
  skip = excluded_at_infinity();
  for (uint64_t li = 0; li < q; ++li) {
    const Fq l = f.element(li);
    emit(ProjPoint3{l, f.one(), f.zero()}, in_skip(l));
  }
  emit(proj_identity(), false);
}

}  // namespace pell
