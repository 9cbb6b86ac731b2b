#include "bellsim/lhv.hpp"

#include <cstdlib>

namespace bellsim {

std::array<DeterministicStrategy, 16> enumerate_strategies() {
  std::array<DeterministicStrategy, 16> all{};
  for (int bits = 0; bits < 16; ++bits) {
    all[bits] = DeterministicStrategy{
        (bits & 1) ? -1 : 1,
        (bits & 2) ? -1 : 1,
        (bits & 4) ? -1 : 1,
        (bits & 8) ? -1 : 1,
    };
  }
  return all;
}

double strategy_bell_value(const DeterministicStrategy& s) {
  const int value = -s.a1 * s.b1 + s.a1 * s.b2 + s.a2 * s.b1 + s.a2 * s.b2;
  return static_cast<double>(std::abs(value));
}

double lhv_bound() {
  double bound = 0.0;
  for (const DeterministicStrategy& s : enumerate_strategies()) {
    const double value = strategy_bell_value(s);
    if (value > bound) bound = value;
  }
  return bound;
}

}  // namespace bellsim
