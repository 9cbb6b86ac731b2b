#include "bellsim/quantum.hpp"

#include <cmath>

namespace bellsim {

const char* outcome_label(OutcomePair jk) {
  static constexpr const char* labels[4] = {"pp", "pm", "mp", "mm"};
  return labels[pair_index(jk)];
}

OutcomePair outcome_from_label(const std::string& label) {
  for (OutcomePair jk : all_outcome_pairs()) {
    if (label == outcome_label(jk)) return jk;
  }
  throw invalid_input_error("unknown outcome label '" + label +
                            "' (expected pp, pm, mp or mm)");
}

double TwoQubitState::norm_squared() const {
  double n = 0.0;
  for (const Complex& a : amp) n += std::norm(a);
  return n;
}

bool TwoQubitState::is_normalized(double tolerance) const {
  for (const Complex& a : amp) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  }
  return std::abs(norm_squared() - 1.0) <= tolerance;
}

TwoQubitState make_bell_state() {
  const double r = std::sqrt(0.5);
  return TwoQubitState{{Complex{r, 0.0}, {}, {}, Complex{r, 0.0}}};
}

TwoQubitState make_product_hh() {
  return TwoQubitState{{Complex{1.0, 0.0}, {}, {}, {}}};
}

Mat2 identity2() {
  Mat2 id;
  id(0, 0) = 1.0;
  id(1, 1) = 1.0;
  return id;
}

bool is_hermitian(const Mat2& m, double tolerance) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tolerance) return false;
    }
  }
  return true;
}

bool is_dichotomic(const Mat2& m, double tolerance) {
  if (!is_hermitian(m, tolerance)) return false;
  const Complex trace = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return std::abs(trace) <= tolerance && std::abs(det + 1.0) <= tolerance;
}

namespace {

void require_finite_angle(double angle, const char* name) {
  if (!std::isfinite(angle)) {
    throw invalid_input_error(std::string(name) + " must be finite");
  }
}

}  // namespace

Mat2 alice_observable(double alpha) {
  require_finite_angle(alpha, "alpha");
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  Mat2 m;
  m(0, 0) = c;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -c;
  return m;
}

Mat2 bob_observable(double beta) {
  require_finite_angle(beta, "beta");
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  Mat2 m;
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = -s;
  m(1, 1) = -c;
  return m;
}

Mat2 eigenprojector(const Mat2& observable, Outcome o) {
  if (!is_dichotomic(observable)) {
    throw invalid_observable_error(
        "eigenprojector requires a Hermitian observable with eigenvalues +1/-1");
  }
  const double sign = (o == Outcome::Plus) ? 0.5 : -0.5;
  Mat2 p;
  const Mat2 id = identity2();
  for (int i = 0; i < 4; ++i) p.m[i] = 0.5 * id.m[i] + sign * observable.m[i];
  return p;
}

double joint_probability(const TwoQubitState& s, double alpha, double beta,
                         OutcomePair jk) {
  if (!s.is_normalized()) {
    throw invalid_state_error("state is not normalized");
  }
  const Mat2 pa = eigenprojector(alice_observable(alpha), jk.a);
  const Mat2 pb = eigenprojector(bob_observable(beta), jk.b);

  // t = (P_a (x) P_b) |s>, amplitude index 2*a_bit + b_bit.
  std::array<Complex, 4> t{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Complex acc{};
      for (int ap = 0; ap < 2; ++ap) {
        for (int bp = 0; bp < 2; ++bp) {
          acc += pa(a, ap) * pb(b, bp) * s.amp[2 * ap + bp];
        }
      }
      t[2 * a + b] = acc;
    }
  }
  Complex overlap{};
  for (int i = 0; i < 4; ++i) overlap += std::conj(s.amp[i]) * t[i];

  // Projector expectation values are real and within [0,1]; clamp away the
  // last-ulp excursions so downstream tables stay in range.
  double p = overlap.real();
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

std::array<double, 4> joint_probabilities(const TwoQubitState& s, double alpha,
                                          double beta) {
  std::array<double, 4> p{};
  for (OutcomePair jk : all_outcome_pairs()) {
    p[pair_index(jk)] = joint_probability(s, alpha, beta, jk);
  }
  return p;
}

}  // namespace bellsim
