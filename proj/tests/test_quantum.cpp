#include <doctest.h>

#include <cmath>
#include <limits>

#include "bellsim/montecarlo.hpp"
#include "bellsim/quantum.hpp"

using namespace bellsim;

namespace {

const double kPi = std::acos(-1.0);

double random_angle(SplitMix64& rng) {
  // Angles over a few turns, positive and negative.
  return (rng.next_double() - 0.5) * 8.0 * kPi;
}

bool mat_close(const Mat2& a, const Mat2& b, double tolerance) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(a.m[i] - b.m[i]) > tolerance) return false;
  }
  return true;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int r = 0; r < 2; ++r) {
    for (int k = 0; k < 2; ++k) {
      c(r, k) = a(r, 0) * b(0, k) + a(r, 1) * b(1, k);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("bell state amplitudes and norm") {
  const TwoQubitState bell = make_bell_state();
  CHECK(bell.amp[0].real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(bell.amp[1] == Complex{0.0, 0.0});
  CHECK(bell.amp[2] == Complex{0.0, 0.0});
  CHECK(bell.amp[3].real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(std::abs(bell.norm_squared() - 1.0) <= 1e-12);

  // Squared overlap with |HH> is 1/2.
  const double overlap_sq = std::norm(bell.amp[0]);
  CHECK(overlap_sq == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("product state |HH>") {
  const TwoQubitState hh = make_product_hh();
  CHECK(hh.amp[0] == Complex{1.0, 0.0});
  CHECK(hh.amp[1] == Complex{0.0, 0.0});
  CHECK(hh.amp[2] == Complex{0.0, 0.0});
  CHECK(hh.amp[3] == Complex{0.0, 0.0});
  CHECK(hh.norm_squared() == 1.0);

  // H is the +1 eigenstate of the alpha=0 observable.
  CHECK(joint_probability(hh, 0.0, 0.0, {Outcome::Plus, Outcome::Plus}) == 1.0);
}

TEST_CASE("alice observable at reference angles") {
  const Mat2 at_zero = alice_observable(0.0);
  CHECK(at_zero(0, 0) == Complex{1.0, 0.0});
  CHECK(at_zero(0, 1) == Complex{0.0, 0.0});
  CHECK(at_zero(1, 0) == Complex{0.0, 0.0});
  CHECK(at_zero(1, 1) == Complex{-1.0, 0.0});

  Mat2 sigma_x;
  sigma_x(0, 1) = 1.0;
  sigma_x(1, 0) = 1.0;
  CHECK(mat_close(alice_observable(kPi / 2.0), sigma_x, 1e-15));

  const double r = std::sqrt(0.5);
  const Mat2 tilted = alice_observable(kPi / 4.0);
  CHECK(tilted(0, 0).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(tilted(0, 1).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(tilted(1, 0).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(tilted(1, 1).real() == doctest::Approx(-r).epsilon(1e-15));
}

TEST_CASE("bob observable carries the opposite sigma_x sign") {
  const Mat2 at_zero = bob_observable(0.0);
  CHECK(at_zero(0, 0) == Complex{1.0, 0.0});
  CHECK(at_zero(1, 1) == Complex{-1.0, 0.0});

  Mat2 minus_sigma_x;
  minus_sigma_x(0, 1) = -1.0;
  minus_sigma_x(1, 0) = -1.0;
  CHECK(mat_close(bob_observable(kPi / 2.0), minus_sigma_x, 1e-15));

  const double r = std::sqrt(0.5);
  const Mat2 tilted = bob_observable(-kPi / 4.0);
  CHECK(tilted(0, 0).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(tilted(0, 1).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(tilted(1, 0).real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(tilted(1, 1).real() == doctest::Approx(-r).epsilon(1e-15));

  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const double beta = random_angle(rng);
    CHECK(mat_close(bob_observable(beta), alice_observable(-beta), 1e-15));
  }
}

TEST_CASE("observables are Hermitian and dichotomic") {
  SplitMix64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const double angle = random_angle(rng);
    CHECK(is_hermitian(alice_observable(angle)));
    CHECK(is_dichotomic(alice_observable(angle)));
    CHECK(is_dichotomic(bob_observable(angle)));
  }
}

TEST_CASE("non-finite angles are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(alice_observable(nan), invalid_input_error);
  CHECK_THROWS_AS(bob_observable(inf), invalid_input_error);
  CHECK_THROWS_AS(joint_probability(make_bell_state(), nan, 0.0,
                                    {Outcome::Plus, Outcome::Plus}),
                  invalid_input_error);
}

TEST_CASE("eigenprojectors at reference points") {
  Mat2 sigma_z;
  sigma_z(0, 0) = 1.0;
  sigma_z(1, 1) = -1.0;

  const Mat2 plus = eigenprojector(sigma_z, Outcome::Plus);
  CHECK(plus(0, 0) == Complex{1.0, 0.0});
  CHECK(plus(1, 1) == Complex{0.0, 0.0});
  const Mat2 minus = eigenprojector(sigma_z, Outcome::Minus);
  CHECK(minus(0, 0) == Complex{0.0, 0.0});
  CHECK(minus(1, 1) == Complex{1.0, 0.0});

  // +1 projector of sigma_x is the uniform 1/2 matrix.
  const Mat2 px = eigenprojector(alice_observable(kPi / 2.0), Outcome::Plus);
  for (int i = 0; i < 4; ++i) {
    CHECK(px.m[i].real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(px.m[i].imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("projector completeness, idempotence and eigen-relation") {
  SplitMix64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const double angle = random_angle(rng);
    const Mat2 obs = alice_observable(angle);
    const Mat2 plus = eigenprojector(obs, Outcome::Plus);
    const Mat2 minus = eigenprojector(obs, Outcome::Minus);

    CHECK(mat_close(mat_mul(plus, plus), plus, tol::projector));
    CHECK(mat_close(mat_mul(minus, minus), minus, tol::projector));
    CHECK(is_hermitian(plus, tol::projector));

    Mat2 sum;
    for (int k = 0; k < 4; ++k) sum.m[k] = plus.m[k] + minus.m[k];
    CHECK(mat_close(sum, identity2(), tol::projector));

    // M P(+) = +P(+) and M P(-) = -P(-).
    Mat2 neg_minus;
    for (int k = 0; k < 4; ++k) neg_minus.m[k] = -minus.m[k];
    CHECK(mat_close(mat_mul(obs, plus), plus, tol::projector));
    CHECK(mat_close(mat_mul(obs, minus), neg_minus, tol::projector));
  }
}

TEST_CASE("eigenprojector rejects non-dichotomic matrices") {
  Mat2 doubled;
  doubled(0, 0) = 2.0;
  doubled(1, 1) = -2.0;
  CHECK_THROWS_AS(eigenprojector(doubled, Outcome::Plus),
                  invalid_observable_error);

  Mat2 non_hermitian;
  non_hermitian(0, 1) = Complex{0.0, 1.0};
  non_hermitian(1, 0) = Complex{0.0, 1.0};
  CHECK_THROWS_AS(eigenprojector(non_hermitian, Outcome::Plus),
                  invalid_observable_error);
}

TEST_CASE("observable flip by pi swaps the projectors") {
  SplitMix64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const double angle = random_angle(rng);
    CHECK(mat_close(eigenprojector(alice_observable(angle + kPi), Outcome::Plus),
                    eigenprojector(alice_observable(angle), Outcome::Minus),
                    1e-12));
    CHECK(mat_close(eigenprojector(bob_observable(angle + kPi), Outcome::Plus),
                    eigenprojector(bob_observable(angle), Outcome::Minus),
                    1e-12));
  }
}

TEST_CASE("joint probabilities of the bell state") {
  const TwoQubitState bell = make_bell_state();

  // p(++|alpha,beta) = (1 + cos(alpha+beta)) / 4
  const double expected = 0.25 * (1.0 + std::cos(0.8));
  CHECK(joint_probability(bell, 0.3, 0.5, {Outcome::Plus, Outcome::Plus}) ==
        doctest::Approx(expected).epsilon(1e-12));

  CHECK(joint_probability(bell, 0.0, 0.0, {Outcome::Plus, Outcome::Minus}) ==
        0.0);
}

TEST_CASE("joint probabilities sum to one and stay in range") {
  SplitMix64 rng(15);
  for (const TwoQubitState& state : {make_bell_state(), make_product_hh()}) {
    for (int i = 0; i < 100; ++i) {
      const double alpha = random_angle(rng);
      const double beta = random_angle(rng);
      const std::array<double, 4> p = joint_probabilities(state, alpha, beta);
      double sum = 0.0;
      for (double v : p) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("bell state correlation equals cos(alpha+beta)") {
  const TwoQubitState bell = make_bell_state();
  SplitMix64 rng(16);
  for (int i = 0; i < 100; ++i) {
    const double alpha = random_angle(rng);
    const double beta = random_angle(rng);
    const std::array<double, 4> p = joint_probabilities(bell, alpha, beta);
    const double e = p[0] - p[1] - p[2] + p[3];
    CHECK(e == doctest::Approx(std::cos(alpha + beta)).epsilon(1e-12));
  }
}

TEST_CASE("unnormalized states are rejected") {
  TwoQubitState bad = make_bell_state();
  bad.amp[0] *= 2.0;
  CHECK_THROWS_AS(
      joint_probability(bad, 0.0, 0.0, {Outcome::Plus, Outcome::Plus}),
      invalid_state_error);

  TwoQubitState nan_state = make_product_hh();
  nan_state.amp[3] = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(
      joint_probability(nan_state, 0.0, 0.0, {Outcome::Plus, Outcome::Plus}),
      invalid_state_error);
}

TEST_CASE("outcome labels round-trip") {
  for (OutcomePair jk : all_outcome_pairs()) {
    const OutcomePair back = outcome_from_label(outcome_label(jk));
    CHECK(pair_index(back) == pair_index(jk));
  }
  CHECK_THROWS_AS(outcome_from_label("xx"), invalid_input_error);
}
