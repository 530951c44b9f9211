// Prints limiting k-protected proportions three ways: from the probability
// recurrence, from the sqrt(D) pair decomposition, and from the exact
// proportion among all 200-vertex trees.

#include <iostream>

#include "motzkin/motzkin.hpp"

int main() {
  using namespace motzkin;
  const auto p = protected_probability_sequence(6);
  std::cout << "k  recurrence   via pair     n=200\n";
  for (std::size_t k = 1; k <= 6; ++k) {
    std::cout << k << "  " << to_decimal(p[k], 8, Rounding::half_even) << "  "
              << to_decimal(protected_constant_via_pair(k), 8, Rounding::half_even) << "  "
              << to_decimal(protected_fraction(k, 200), 8, Rounding::half_even) << '\n';
  }
}
