#include "pell/oracle.hpp"

#include <algorithm>

#include "pell/error.hpp"

namespace pell::oracle {

namespace {

// Local copies of the group laws so that the oracle never runs the code it
// is meant to check.
CubicPoint cubic_product(const Field& f, Fq rv, const CubicPoint& a, const CubicPoint& b) {
  const auto x1 = f(a.x), y1 = f(a.y), z1 = f(a.z);
  const auto x2 = f(b.x), y2 = f(b.y), z2 = f(b.z);
  const auto r = f(rv);
  return {(x1 * x2 + r * y1 * z2 + r * z1 * y2).raw(),
          (x1 * y2 + y1 * x2 + r * z1 * z2).raw(),
          (x1 * z2 + y1 * y2 + z1 * x2).raw()};
}

ConicPoint conic_product(const Field& f, Fq dv, const ConicPoint& a, const ConicPoint& b) {
  const auto x1 = f(a.x), y1 = f(a.y), x2 = f(b.x), y2 = f(b.y);
  return {(x1 * x2 + f(dv) * y1 * y2).raw(), (x1 * y2 + y1 * x2).raw()};
}

template <class Point, class Product>
OrderCheck orders_over(const std::vector<Point>& points, const Point& identity,
                       const GroupOrderReport& claimed, uint64_t q, Product&& product) {
  auto power = [&](Point g, uint64_t e) {
    Point acc = identity;
    while (e > 0) {
      if (e & 1) acc = product(acc, g);
      g = product(g, g);
      e >>= 1;
    }
    return acc;
  };
  auto is_identity = [&](const Point& g) { return g == identity; };

  OrderCheck out;
  out.claimed = claimed;
  out.set_size = points.size();
  out.exponent = 1;
  if (points.size() != claimed.order) return out;
  for (const Point& g : points) {
    const uint64_t ord = element_order(g, claimed.order, power, is_identity);
    out.max_order = std::max(out.max_order, ord);
    out.exponent = lcm(out.exponent, ord);
  }
  switch (claimed.structure) {
    case Structure::Cyclic: out.confirmed = out.max_order == claimed.order; break;
    case Structure::Product: out.confirmed = (q - 1) % out.exponent == 0; break;
    case Structure::Unspecified: out.confirmed = true; break;
  }
  return out;
}

}  // namespace

SolutionSet<ConicPoint> brute_force_conic(const Field& field, Fq d) {
  if (field.q() > kMaxConicQ) throw Error("brute_force_conic: field too large");
  if (field.p() == 2) throw Error("brute_force_conic: odd characteristic required");
  if (d == field.zero()) throw Error("brute_force_conic: d must be nonzero");
  SolutionSet<ConicPoint> out{field, d, {}};
  const uint64_t q = field.q();
  const auto one = field(field.one()), dd = field(d);
  for (uint64_t xi = 0; xi < q; ++xi) {
    const auto x = field(field.element(xi));
    for (uint64_t yi = 0; yi < q; ++yi) {
      const auto y = field(field.element(yi));
      if (x * x - dd * y * y == one) out.points.push_back({x.raw(), y.raw()});
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

SolutionSet<CubicPoint> brute_force_cubic(const Field& field, Fq r) {
  if (field.q() > kMaxCubicQ) throw Error("brute_force_cubic: field too large");
  if (r == field.zero()) throw Error("brute_force_cubic: r must be nonzero");
  SolutionSet<CubicPoint> out{field, r, {}};
  const uint64_t q = field.q();
  const auto one = field(field.one()), rr = field(r), three_r = 3 * field(r);
  for (uint64_t yi = 0; yi < q; ++yi) {
    const auto y = field(field.element(yi));
    const auto ry3 = rr * y * y * y;
    for (uint64_t zi = 0; zi < q; ++zi) {
      const auto z = field(field.element(zi));
      const auto tail = ry3 + rr * rr * z * z * z;
      const auto cross = three_r * y * z;
      for (uint64_t xi = 0; xi < q; ++xi) {
        const auto x = field(field.element(xi));
        if (x * x * x - cross * x + tail == one) out.points.push_back({x.raw(), y.raw(), z.raw()});
      }
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

bool check_crt_split(const PellCubic& cubic) {
  if (cubic.kind() != CubeKind::CubeThreeRoots) {
    throw UnsupportedError("check_crt_split: r must have three cube roots");
  }
  const Field& f = cubic.field();
  const auto set = brute_force_cubic(f, cubic.r());
  const auto s = f(*cubic.root()), w = f(*f.omega());
  const auto one = f(f.one()), s2 = s * s, w2 = w * w;
  const auto inv3 = f(3).inv();

  auto forward = [&](const CubicPoint& pt) {
    const auto x = f(pt.x), y = f(pt.y), z = f(pt.z);
    return CrtCoords{(x + w * s * y + w2 * s2 * z).raw(), (x + w2 * s * y + w * s2 * z).raw(),
                     (x + s * y + s2 * z).raw()};
  };
  auto backward = [&](const CrtCoords& c) {
    const auto u = f(c.u), v = f(c.v), ww = f(c.w);
    return CubicPoint{((ww + v + u) * inv3).raw(), ((ww + w * v + w2 * u) * inv3 / s).raw(),
                      ((ww + w2 * v + w * u) * inv3 / s2).raw()};
  };

  std::vector<CrtCoords> image;
  for (const auto& pt : set.points) {
    const CrtCoords c = forward(pt);
    if (f(c.u) * f(c.v) * f(c.w) != one) return false;
    if (backward(c) != pt) return false;
    image.push_back(c);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;

  // Every (u, v, w) with u v w = 1 is hit and maps back onto the curve.
  uint64_t targets = 0;
  for (uint64_t ui = 1; ui < f.q(); ++ui) {
    for (uint64_t vi = 1; vi < f.q(); ++vi) {
      const auto u = f(f.element(ui)), v = f(f.element(vi));
      const CrtCoords c{u.raw(), v.raw(), (u * v).inv().raw()};
      if (!std::binary_search(image.begin(), image.end(), c)) return false;
      if (forward(backward(c)) != c) return false;
      ++targets;
    }
  }
  return targets == image.size();
}

bool check_crt_split(const PellConic& conic) {
  if (!conic.sqrt_d()) throw UnsupportedError("check_crt_split: d must be a square");
  const Field& f = conic.field();
  const auto set = brute_force_conic(f, conic.d());
  const auto s = f(*conic.sqrt_d());
  const auto one = f(f.one()), inv2 = f(2).inv();

  auto forward = [&](const ConicPoint& pt) {
    const auto x = f(pt.x), y = f(pt.y);
    return CrtCoords{(x - s * y).raw(), (x + s * y).raw(), f.zero()};
  };
  auto backward = [&](const CrtCoords& c) {
    const auto u = f(c.u), v = f(c.v);
    return ConicPoint{((u + v) * inv2).raw(), ((v - u) * inv2 / s).raw()};
  };

  std::vector<CrtCoords> image;
  for (const auto& pt : set.points) {
    const CrtCoords c = forward(pt);
    if (f(c.u) * f(c.v) != one) return false;
    if (backward(c) != pt) return false;
    image.push_back(c);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;

  uint64_t targets = 0;
  for (uint64_t ui = 1; ui < f.q(); ++ui) {
    const auto u = f(f.element(ui));
    const CrtCoords c{u.raw(), u.inv().raw(), f.zero()};
    if (!std::binary_search(image.begin(), image.end(), c)) return false;
    if (forward(backward(c)) != c) return false;
    ++targets;
  }
  return targets == image.size();
}

OrderCheck check_element_orders(const PellCubic& cubic) {
  const Field& f = cubic.field();
  const auto set = brute_force_cubic(f, cubic.r());
  const CubicPoint identity{f.one(), f.zero(), f.zero()};
  return orders_over(set.points, identity, cubic.order(), f.q(),
                     [&](const CubicPoint& a, const CubicPoint& b) {
                       return cubic_product(f, cubic.r(), a, b);
                     });
}

OrderCheck check_element_orders(const PellConic& conic) {
  const Field& f = conic.field();
  const auto set = brute_force_conic(f, conic.d());
  const ConicPoint identity{f.one(), f.zero()};
  return orders_over(set.points, identity, conic.order_report(), f.q(),
                     [&](const ConicPoint& a, const ConicPoint& b) {
                       return conic_product(f, conic.d(), a, b);
                     });
}

}  // namespace pell::oracle
