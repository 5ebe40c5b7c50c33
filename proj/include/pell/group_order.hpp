#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pell {

enum class Structure { Cyclic, Product, Unspecified };

/// Closed-form size of a Pell group plus what is known about its shape.
/// `invariants` lists the cyclic factors: {n} for Cyclic(n), {q-1, q-1} for
/// Product, empty for Unspecified.
struct GroupOrderReport {
  uint64_t order = 0;
  Structure structure = Structure::Unspecified;
  std::vector<uint64_t> invariants;

  std::string structure_string() const;  // "Cyclic(57)", "Product(12,12)", "Unspecified"
  friend bool operator==(const GroupOrderReport&, const GroupOrderReport&) = default;
};

/// Prime factorization by trial division, ascending primes.
std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n);

uint64_t lcm(uint64_t a, uint64_t b);

/// Order of `g` in a group whose order divides `group_order`: start from the
/// group order and strip each prime while g^(n/p) is still the identity.
template <class T, class Pow, class IsIdentity>
uint64_t element_order(const T& g, uint64_t group_order, Pow&& pow, IsIdentity&& is_identity) {
  uint64_t n = group_order;
  for (const auto& [prime, mult] : factorize(group_order)) {
    for (unsigned i = 0; i < mult && n % prime == 0; ++i) {
      if (!is_identity(pow(g, n / prime))) break;
      n /= prime;
    }
  }
  return n;
}

}  // namespace pell
