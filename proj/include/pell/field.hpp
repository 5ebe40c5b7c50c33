#pragma once

/**
 * Finite field arithmetic for F_q, q = p^k.
 *
 * Elements of F_q = F_p[t]/(f) are coefficient vectors (c0, ..., c_{k-1}) of
 * residues in [0, p). They are stored packed as the integer
 * c0 + c1 p + ... + c_{k-1} p^{k-1}, which is unique per element, so raw
 * values can be compared, hashed and sorted directly. For k = 1 the packed
 * value is the residue itself. "Canonical order" throughout the library is
 * the order of packed values.
 *
 * Bounds: p < 2^31 and q < 2^32, so a product of two residues and the group
 * orders q^2 + q + 1 fit in 64 bits.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pell {

/// A field element in packed canonical form. Meaningless without its Field.
struct Fq {
  uint64_t v = 0;

  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;
};

/// How r sits in F_q with respect to cubing.
enum class CubeKind {
  NonCube,         // q = 1 mod 3, no cube root
  CubeThreeRoots,  // q = 1 mod 3, roots s, s*omega, s*omega^2
  CubeOneRoot,     // q = 2 mod 3, cubing is a bijection
  Char3,           // p = 3, cubing is the Frobenius map
};

std::string_view to_string(CubeKind kind);

struct CubeClass {
  CubeKind kind = CubeKind::NonCube;
  std::vector<Fq> roots;  // ascending canonical order; empty for NonCube
};

class Scalar;

class Field {
 public:
  /// Builds F_{p^k}. Without a modulus (and k > 1) the lexicographically
  /// smallest monic irreducible of degree k is used. Throws pell::Error on a
  /// non-prime p, an out-of-range q, or a bad modulus.
  static Field make(uint64_t p, unsigned k = 1,
                    std::optional<std::vector<uint64_t>> modulus = std::nullopt);

  uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  uint64_t q() const { return q_; }
  /// Monic modulus, low degree first (k + 1 entries). {0, 1} for prime fields.
  const std::vector<uint64_t>& modulus() const { return modulus_; }
  /// The smaller of the two primitive cube roots of unity; present iff q = 1 mod 3.
  std::optional<Fq> omega() const { return omega_; }

  Fq zero() const { return {0}; }
  Fq one() const { return {1}; }
  /// Image of an integer in the prime subfield.
  Fq from_int(int64_t n) const;
  Fq from_coeffs(std::span<const uint64_t> coeffs) const;
  std::vector<uint64_t> coeffs(Fq a) const;
  /// The element with packed value `index`, index in [0, q).
  Fq element(uint64_t index) const;
  bool contains(Fq a) const { return a.v < q_; }

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;  // throws on zero
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, uint64_t e) const;

  /// Euler criterion. Throws on zero.
  bool is_square(Fq d) const;
  /// The smaller of the two square roots, or nullopt. Throws on zero.
  std::optional<Fq> sqrt(Fq d) const;
  /// Generalized Euler criterion plus the full list of cube roots. Throws on zero.
  CubeClass classify_cube(Fq r) const;

  /// Decimal residue for k = 1, "c0,c1,...,c_{k-1}" otherwise.
  std::string format(Fq a) const;
  /// Inverse of format. Prime-field input may be any integer (reduced mod p,
  /// negatives allowed); coefficient lists must have exactly k entries.
  Fq parse(std::string_view text) const;

  /// Bind an element (or an integer) to this field for infix arithmetic.
  Scalar operator()(Fq a) const;
  Scalar operator()(int64_t n) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field() = default;

  uint64_t reduce_int(int64_t n) const;
  std::optional<Fq> root_exhaustive(Fq a, unsigned degree, bool all, std::vector<Fq>* out) const;
  std::optional<Fq> root_sylow(Fq a, unsigned degree) const;

  uint64_t p_ = 2;
  unsigned k_ = 1;
  uint64_t q_ = 2;
  std::vector<uint64_t> modulus_;
  std::optional<Fq> omega_;
};

/// Field element bound to its field, for writing formulas with operators.
/// The referenced Field must outlive the Scalar.
class Scalar {
 public:
  Scalar(const Field& field, Fq value) : field_(&field), value_(value) {}

  Fq raw() const { return value_; }
  const Field& field() const { return *field_; }
  bool is_zero() const { return value_.v == 0; }

  Scalar operator+(Scalar o) const { return {*field_, field_->add(value_, o.value_)}; }
  Scalar operator-(Scalar o) const { return {*field_, field_->sub(value_, o.value_)}; }
  Scalar operator*(Scalar o) const { return {*field_, field_->mul(value_, o.value_)}; }
  Scalar operator/(Scalar o) const { return {*field_, field_->div(value_, o.value_)}; }
  Scalar operator-() const { return {*field_, field_->neg(value_)}; }
  Scalar pow(uint64_t e) const { return {*field_, field_->pow(value_, e)}; }
  Scalar inv() const { return {*field_, field_->inv(value_)}; }

  friend Scalar operator*(int64_t n, Scalar s) { return s.field()(n) * s; }
  friend Scalar operator+(int64_t n, Scalar s) { return s.field()(n) + s; }
  friend Scalar operator-(int64_t n, Scalar s) { return s.field()(n) - s; }

  bool operator==(Scalar o) const { return value_ == o.value_; }
  bool operator==(Fq o) const { return value_ == o; }

 private:
  const Field* field_;
  Fq value_;
};

inline Scalar Field::operator()(Fq a) const { return {*this, a}; }
inline Scalar Field::operator()(int64_t n) const { return {*this, from_int(n)}; }

bool is_prime(uint64_t n);

}  // namespace pell
