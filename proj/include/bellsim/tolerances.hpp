#pragma once

// Central numeric tolerances. Every validation threshold in the library
// lives here so tests and implementation agree on the same constants.

namespace bellsim::tol {

inline constexpr double state_norm = 1e-12;   // |  sum |amp|^2 - 1  |
inline constexpr double hermitian = 1e-12;    // max |m(r,c) - conj(m(c,r))|
inline constexpr double dichotomic = 1e-12;   // |trace| and |det + 1|
inline constexpr double projector = 1e-10;    // P*P = P, M*P = lambda*P
inline constexpr double table_sum = 1e-9;     // probability tables sum to 1
inline constexpr double correlation_range = 1e-9;  // |E| <= 1 + this

// Modulated-source intensity factors at or below this are snapped to an
// exact zero. The cos^2((alpha+beta)/2) factor vanishes analytically at
// alpha+beta = pi but evaluates to ~1e-33 in floating point; the snap makes
// the excluded zero-rate point detectable as a true all-zero table.
inline constexpr double zero_rate_snap = 1e-24;

}  // namespace bellsim::tol
