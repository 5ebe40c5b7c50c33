#include "pell/conic.hpp"

#include "pell/error.hpp"

namespace pell {

PellConic::PellConic(Field field, Fq d) : field_(std::move(field)), d_(d) {
  if (field_.p() == 2) throw Error("the Pell conic needs odd characteristic");
  if (!field_.contains(d_)) throw Error("d is not a field element");
  if (d_ == field_.zero()) throw Error("d must be nonzero");
  sqrt_d_ = field_.sqrt(d_);
}

ConicPoint PellConic::mul(const ConicPoint& a, const ConicPoint& b) const {
  const Field& f = field_;
  const auto x1 = f(a.x), y1 = f(a.y), x2 = f(b.x), y2 = f(b.y), d = f(d_);
  return {(x1 * x2 + d * y1 * y2).raw(), (x1 * y2 + y1 * x2).raw()};
}

ProjPoint2 PellConic::mul(const ProjPoint2& a, const ProjPoint2& b) const {
  const ConicPoint prod = mul(ConicPoint{a.m, a.n}, ConicPoint{b.m, b.n});
  return canonical(prod.x, prod.y);
}

ConicPoint PellConic::pow(ConicPoint a, uint64_t e) const {
  ConicPoint result = identity();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Fq PellConic::norm(Fq m, Fq n) const {
  const auto mm = field_(m), nn = field_(n);
  return (mm * mm - field_(d_) * nn * nn).raw();
}

bool PellConic::is_valid(const ProjPoint2& pt) const {
  if (!field_.contains(pt.m) || !field_.contains(pt.n)) return false;
  const bool canonical_form = pt.n == field_.one() || pt == proj_identity();
  return canonical_form && norm(pt.m, pt.n) != field_.zero();
}

ProjPoint2 PellConic::canonical(Fq m, Fq n) const {
  if (n != field_.zero()) return {field_.div(m, n), field_.one()};
  if (m == field_.zero()) throw Error("[0:0] is not a projective point");
  return proj_identity();
}

uint64_t PellConic::order() const { return sqrt_d_ ? field_.q() - 1 : field_.q() + 1; }

GroupOrderReport PellConic::order_report() const {
  const uint64_t n = order();
  return {n, Structure::Cyclic, {n}};
}

ConicPoint PellConic::phi(const ProjPoint2& pt) const {
  const Field& f = field_;
  const auto m = f(pt.m), n = f(pt.n), d = f(d_);
  const auto den = m * m - d * n * n;
  if (den.is_zero()) throw Error("phi: class has zero norm");
  const auto inv = den.inv();
  return {((m * m + d * n * n) * inv).raw(), (2 * m * n * inv).raw()};
}

ProjPoint2 PellConic::phi_inv(const ConicPoint& pt) const {
  if (pt.x == field_.neg(field_.one()) && pt.y == field_.zero()) {
    return {field_.zero(), field_.one()};
  }
  return canonical(field_.add(pt.x, field_.one()), pt.y);
}

std::vector<ProjPoint2> PellConic::enumerate_proj() const {
  std::vector<ProjPoint2> out;
  out.reserve(order());
  for_each_proj([&](const ProjPoint2& pt) { out.push_back(pt); });
  return out;
}

std::vector<ConicPoint> PellConic::enumerate_solutions() const {
  std::vector<ConicPoint> out;
  out.reserve(order());
  for_each_proj([&](const ProjPoint2& pt) { out.push_back(phi(pt)); });
  return out;
}

}  // namespace pell
