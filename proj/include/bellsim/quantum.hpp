#pragma once

#include <array>
#include <complex>
#include <string>

#include "bellsim/errors.hpp"
#include "bellsim/tolerances.hpp"

// Exact two-qubit polarization quantum mechanics: states over the
// {HH, HV, VH, VV} basis, dichotomic PBS observables, and Born-rule joint
// outcome probabilities. Everything here is a pure function of its inputs.

namespace bellsim {

using Complex = std::complex<double>;

// Detector outcome, semantically the +1 / -1 eigenvalue.
enum class Outcome { Plus, Minus };

// Joint outcome (j at Alice, k at Bob).
struct OutcomePair {
  Outcome a = Outcome::Plus;
  Outcome b = Outcome::Plus;
};

// Canonical index: pp=0, pm=1, mp=2, mm=3 (first letter is Alice's side).
constexpr int pair_index(OutcomePair jk) {
  return (jk.a == Outcome::Minus ? 2 : 0) + (jk.b == Outcome::Minus ? 1 : 0);
}

constexpr std::array<OutcomePair, 4> all_outcome_pairs() {
  return {OutcomePair{Outcome::Plus, Outcome::Plus},
          OutcomePair{Outcome::Plus, Outcome::Minus},
          OutcomePair{Outcome::Minus, Outcome::Plus},
          OutcomePair{Outcome::Minus, Outcome::Minus}};
}

// Closed label set used in file formats: "pp", "pm", "mp", "mm".
const char* outcome_label(OutcomePair jk);
OutcomePair outcome_from_label(const std::string& label);  // throws invalid_input_error

// Two-qubit state vector; basis order HH, HV, VH, VV with |H> the +1
// eigenvector of sigma_z.
struct TwoQubitState {
  std::array<Complex, 4> amp{};

  double norm_squared() const;
  bool is_normalized(double tolerance = tol::state_norm) const;
};

// (|HH> + |VV>) / sqrt(2)
TwoQubitState make_bell_state();

// |HH>
TwoQubitState make_product_hh();

// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> m{};

  Complex operator()(int r, int c) const { return m[2 * r + c]; }
  Complex& operator()(int r, int c) { return m[2 * r + c]; }
};

Mat2 identity2();
bool is_hermitian(const Mat2& m, double tolerance = tol::hermitian);
// Hermitian with eigenvalues exactly {+1, -1}: trace 0 and determinant -1.
bool is_dichotomic(const Mat2& m, double tolerance = tol::dichotomic);

// Alice's PBS observable cos(alpha)*sigma_z + sin(alpha)*sigma_x.
Mat2 alice_observable(double alpha);

// Bob's PBS observable cos(beta)*sigma_z - sin(beta)*sigma_x.
Mat2 bob_observable(double beta);

// Eigenprojector of a +/-1-valued observable, in closed form (I +/- M)/2.
// Throws invalid_observable_error if the matrix is not dichotomic Hermitian.
Mat2 eigenprojector(const Mat2& observable, Outcome o);

// Born rule: <s| P_a(j) (x) P_b(k) |s> for the PBS observables at the given
// settings. Throws invalid_state_error if s is not normalized and
// invalid_input_error for non-finite angles.
double joint_probability(const TwoQubitState& s, double alpha, double beta,
                         OutcomePair jk);

// All four joint probabilities in canonical pair order; sums to 1.
std::array<double, 4> joint_probabilities(const TwoQubitState& s, double alpha,
                                          double beta);

}  // namespace bellsim
