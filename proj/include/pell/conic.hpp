#pragma once

/**
 * The Pell conic x^2 - d y^2 = 1 over F_q (p odd), as a group under the
 * Brahmagupta product, together with its projective parameterization
 * P_d = { [m:1] } u { [1:0] } (minus [+-s:1] when d = s^2) and the
 * isomorphism phi : P_d -> C_d.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "pell/field.hpp"
#include "pell/group_order.hpp"

namespace pell {

struct ConicPoint {
  Fq x, y;
  friend constexpr auto operator<=>(const ConicPoint&, const ConicPoint&) = default;
};

/// A class [m:n], canonical when n = 1 or (m, n) = (1, 0).
struct ProjPoint2 {
  Fq m, n;
  friend constexpr auto operator<=>(const ProjPoint2&, const ProjPoint2&) = default;
};

class PellConic {
 public:
  /// Throws pell::Error for d = 0 or characteristic 2.
  PellConic(Field field, Fq d);

  const Field& field() const { return field_; }
  Fq d() const { return d_; }
  /// The smaller square root of d, when d is a square.
  std::optional<Fq> sqrt_d() const { return sqrt_d_; }

  ConicPoint identity() const { return {field_.one(), field_.zero()}; }
  ProjPoint2 proj_identity() const { return {field_.one(), field_.zero()}; }

  ConicPoint mul(const ConicPoint& a, const ConicPoint& b) const;
  ProjPoint2 mul(const ProjPoint2& a, const ProjPoint2& b) const;
  ConicPoint inverse(const ConicPoint& a) const { return {a.x, field_.neg(a.y)}; }
  ProjPoint2 inverse(const ProjPoint2& a) const { return canonical(a.m, field_.neg(a.n)); }
  ConicPoint pow(ConicPoint a, uint64_t e) const;

  /// m^2 - d n^2
  Fq norm(Fq m, Fq n) const;
  bool contains(const ConicPoint& pt) const { return norm(pt.x, pt.y) == field_.one(); }
  /// Canonical and of nonzero norm.
  bool is_valid(const ProjPoint2& pt) const;
  /// Scales to n = 1, or to [1:0]. Throws on (0, 0).
  ProjPoint2 canonical(Fq m, Fq n) const;

  /// q + 1 for non-square d, q - 1 for square d.
  uint64_t order() const;
  GroupOrderReport order_report() const;

  ConicPoint phi(const ProjPoint2& pt) const;
  ProjPoint2 phi_inv(const ConicPoint& pt) const;

  /// [m:1] for every allowed m in ascending order, then [1:0].
  template <class Fn>
  void for_each_proj(Fn&& fn) const {
    for (uint64_t i = 0; i < field_.q(); ++i) {
      const Fq m = field_.element(i);
      if (sqrt_d_ && (m == *sqrt_d_ || m == field_.neg(*sqrt_d_))) continue;
      fn(ProjPoint2{m, field_.one()});
    }
    fn(proj_identity());
  }

  std::vector<ProjPoint2> enumerate_proj() const;
  std::vector<ConicPoint> enumerate_solutions() const;

 private:
  Field field_;
  Fq d_;
  std::optional<Fq> sqrt_d_;
};

}  // namespace pell
