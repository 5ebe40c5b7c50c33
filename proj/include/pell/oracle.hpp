#pragma once

/**
 * Brute-force ground truth for the Pell conic and cubic at desk scale.
 *
 * Nothing here calls the projective parameterizations or the psi/phi maps:
 * solution sets come from scanning F_q^2 / F_q^3, and group products are
 * recomputed locally. Only field arithmetic and the parameters (d, r, s,
 * omega) are shared with the code under test.
 */

#include <cstdint>
#include <vector>

#include "pell/conic.hpp"
#include "pell/cubic.hpp"
#include "pell/field.hpp"
#include "pell/group_order.hpp"

namespace pell::oracle {

constexpr uint64_t kMaxConicQ = uint64_t{1} << 12;
constexpr uint64_t kMaxCubicQ = uint64_t{1} << 8;

template <class Point>
struct SolutionSet {
  Field field;
  Fq parameter;               // d or r
  std::vector<Point> points;  // sorted, no duplicates
};

/// Every (x, y) in F_q^2 with x^2 - d y^2 = 1. Requires q <= 2^12, p odd, d != 0.
SolutionSet<ConicPoint> brute_force_conic(const Field& field, Fq d);
/// Every (x, y, z) in F_q^3 of norm one. Requires q <= 2^8, r != 0.
SolutionSet<CubicPoint> brute_force_cubic(const Field& field, Fq r);

/// Coordinates after splitting t^2 - d or t^3 - r into linear factors.
struct CrtCoords {
  Fq u, v, w;  // w unused for the conic
  friend constexpr auto operator<=>(const CrtCoords&, const CrtCoords&) = default;
};

/// Checks that (x, y, z) -> (u, v, w) = (x + w s y + w^2 s^2 z,
/// x + w^2 s y + w s^2 z, x + s y + s^2 z) is a bijection from the
/// brute-force solution set onto { u v w = 1 }, and that
/// x = (u + v + w)/3, y = (w + omega v + omega^2 u)/(3s),
/// z = (w + omega^2 v + omega u)/(3 s^2) inverts it. CubeThreeRoots only;
/// throws UnsupportedError otherwise.
bool check_crt_split(const PellCubic& cubic);
/// Same for the conic with d = s^2: u = x - s y, v = x + s y,
/// x = (u + v)/2, y = (v - u)/(2s). Throws UnsupportedError for non-square d.
bool check_crt_split(const PellConic& conic);

struct OrderCheck {
  GroupOrderReport claimed;   // closed form from the parameter class
  uint64_t set_size = 0;      // brute-force count
  uint64_t max_order = 0;     // largest element order found
  uint64_t exponent = 0;      // lcm of all element orders
  bool confirmed = false;     // size matches; Cyclic: max_order == order;
                              // Product: exponent divides q - 1
};

/// Element orders over the full brute-force solution set.
OrderCheck check_element_orders(const PellCubic& cubic);
OrderCheck check_element_orders(const PellConic& conic);

}  // namespace pell::oracle
