#pragma once

#include <array>

// Independent classical oracle: exhaustive enumeration of the deterministic
// local strategies for two settings per side. A deterministic strategy fixes
// each side's +/-1 outcome per setting, so E(i,j) = a_i * b_j and B can be
// evaluated in integer arithmetic. Mixed local models are convex mixtures of
// these 16 strategies, and B is the absolute value of a linear functional of
// the mixture, so its maximum over mixtures is attained at one of the 16
// vertices enumerated here.

namespace bellsim {

struct DeterministicStrategy {
  int a1 = 1;  // Alice's outcome at setting 1, +1 or -1
  int a2 = 1;
  int b1 = 1;  // Bob's outcome at setting 1
  int b2 = 1;
};

// All 16 sign assignments, no duplicates.
std::array<DeterministicStrategy, 16> enumerate_strategies();

// |-a1*b1 + a1*b2 + a2*b1 + a2*b2|
double strategy_bell_value(const DeterministicStrategy& s);

// Maximum over the 16 deterministic strategies; exactly 2.
double lhv_bound();

}  // namespace bellsim
