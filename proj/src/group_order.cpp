#include "pell/group_order.hpp"

#include <numeric>

namespace pell {

std::string GroupOrderReport::structure_string() const {
  auto join = [this] {
    std::string s;
    for (size_t i = 0; i < invariants.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(invariants[i]);
    }
    return s;
  };
  switch (structure) {
    case Structure::Cyclic: return "Cyclic(" + join() + ")";
    case Structure::Product: return "Product(" + join() + ")";
    case Structure::Unspecified: return "Unspecified";
  }
  return "Unspecified";
}

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    unsigned mult = 0;
    while (n % d == 0) {
      n /= d;
      ++mult;
    }
    if (mult) out.emplace_back(d, mult);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t lcm(uint64_t a, uint64_t b) { return std::lcm(a, b); }

}  // namespace pell
