#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rotor/errors.hpp"
#include "rotor/specfun.hpp"

using rotor::ScaledComplex;
using cplx = std::complex<double>;

namespace {

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("scaled complex keeps values far outside the double range") {
  const auto big = ScaledComplex::from_log(800.0, 0.5);
  const auto tiny = ScaledComplex::from_log(-900.0, -1.0);
  const auto prod = big * tiny;
  CHECK(prod.log_magnitude() == doctest::Approx(-100.0).epsilon(1e-14));
  CHECK(prod.phase() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(prod.value() - std::polar(std::exp(-100.0), -0.5)) < 1e-58);

  auto p = ScaledComplex::from_real(1.0);
  for (int k = 0; k < 1000; ++k) p = p * big;
  CHECK(p.log_magnitude() == doctest::Approx(8.0e5).epsilon(1e-13));
  CHECK(std::isinf(std::abs(p.value())));
  CHECK(std::abs(p.value_scaled(8.0e5) - std::polar(1.0, rotor::wrap_phase(500.0))) < 1e-8);
}

TEST_CASE("scaled complex arithmetic matches plain complex arithmetic") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const cplx a = oracle::random_complex(rng, 3.0), b = oracle::random_complex(rng, 3.0);
    const auto sa = ScaledComplex::from_value(a), sb = ScaledComplex::from_value(b);
    CHECK(rel_err((sa * sb).value(), a * b) < 1e-15);
    CHECK(std::abs((sa + sb).value() - (a + b)) < 1e-15 * (std::abs(a) + std::abs(b)));
    CHECK(std::abs((sa - sb).value() - (a - b)) < 1e-15 * (std::abs(a) + std::abs(b)));
    CHECK(rel_err((sa * 2.5).value(), a * 2.5) < 1e-15);
    CHECK(rel_err((-sa).value(), -a) < 1e-15);
    CHECK(rel_err(ScaledComplex::from_log(sa.log_magnitude(), sa.phase()).value(), a) < 1e-14);
  }
}

TEST_CASE("scaled complex zero and cancellation") {
  const ScaledComplex zero;
  CHECK(zero.is_zero());
  CHECK(zero.value() == cplx(0.0, 0.0));
  const auto a = ScaledComplex::from_value({1.5, -2.0});
  CHECK((a - a).is_zero());
  CHECK((a * zero).is_zero());
  CHECK((zero + a).value() == a.value());
  // Adding a term 2^-200 times smaller leaves the larger unchanged.
  const auto small = ScaledComplex::from_log(std::log(std::abs(a.value())) - 200 * std::log(2.0), 0.0);
  CHECK((a + small).value() == a.value());
}

TEST_CASE("phase wrapping lands in (-pi, pi]") {
  const double pi = std::numbers::pi;
  CHECK(rotor::wrap_phase(pi) == doctest::Approx(pi));
  CHECK(rotor::wrap_phase(-pi) == doctest::Approx(pi));
  CHECK(rotor::wrap_phase(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(rotor::wrap_phase(1e6) == doctest::Approx(std::remainder(1e6, 2 * pi)).epsilon(1e-9));
  for (double x = -20.0; x < 20.0; x += 0.37) {
    const double w = rotor::wrap_phase(x);
    CHECK(w > -pi);
    CHECK(w <= pi);
    CHECK(std::abs(std::polar(1.0, w) - std::polar(1.0, x)) < 1e-13);
  }
}

TEST_CASE("legendre recurrence agrees with the explicit sum") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const cplx w = oracle::random_complex(rng, 1.5);
    for (int n = 0; n <= 20; ++n) {
      const cplx want = oracle::legendre_explicit(n, w);
      CHECK(std::abs(rotor::legendre_p(n, w).value() - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("legendre special values") {
  for (int n = 0; n <= 40; ++n) {
    CHECK(rotor::legendre_p(n, 1.0).value().real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rotor::legendre_p(n, -1.0).value().real() == doctest::Approx(n % 2 ? -1.0 : 1.0).epsilon(1e-13));
  }
  const cplx w(0.3, -0.8);
  for (int n = 0; n <= 30; ++n) {
    const cplx a = rotor::legendre_p(n, w).value();
    const cplx b = rotor::legendre_p(n, -w).value();
    CHECK(std::abs(a - (n % 2 ? -b : b)) < 1e-12 * std::max(1.0, std::abs(a)));
  }
  // P_n(0) = (-1)^{n/2} (n-1)!! / n!! for even n, zero for odd n.
  double p = 1.0;
  for (int n = 0; n <= 30; n += 2) {
    if (n > 0) p *= -(n - 1.0) / n;
    CHECK(rotor::legendre_p(n, 0.0).value().real() == doctest::Approx(p).epsilon(1e-13));
    CHECK(std::abs(rotor::legendre_p(n + 1, 0.0).value()) < 1e-15);
  }
}

TEST_CASE("gegenbauer agrees with the explicit sum") {
  std::mt19937_64 rng(12);
  for (double alpha : {0.5, 1.0, 2.5, 7.5}) {
    for (int i = 0; i < 20; ++i) {
      const cplx w = oracle::random_complex(rng, 1.2);
      for (int n = 0; n <= 15; ++n) {
        const cplx want = oracle::gegenbauer_explicit(n, alpha, w);
        const cplx got = rotor::gegenbauer_c(n, alpha, w).value();
        CHECK(std::abs(got - want) <= 1e-11 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

TEST_CASE("gegenbauer of order one half is legendre") {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx w = oracle::random_complex(rng, 2.0);
    const auto c = rotor::gegenbauer_sequence(30, 0.5, w);
    const auto p = rotor::legendre_sequence(30, w);
    for (int n = 0; n <= 30; ++n) worst = std::max(worst, rel_err(c[n].value(), p[n].value()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("no overflow at large real argument") {
  const double eta = 11.0;
  const cplx w = std::cosh(eta);
  const auto p = rotor::legendre_sequence(60, w);
  const auto c = rotor::gegenbauer_sequence(60, 0.5, w);
  for (int n = 0; n <= 60; ++n) {
    CAPTURE(n);
    REQUIRE(std::isfinite(p[n].log_magnitude()));
    CHECK(p[n].log_magnitude() == doctest::Approx(oracle::log_legendre_cosh(n, eta)).epsilon(1e-12));
    CHECK(std::abs(p[n].phase()) < 1e-12);
    CHECK(c[n].log_magnitude() == doctest::Approx(p[n].log_magnitude()).epsilon(1e-12));
  }
  // P_60(cosh 11) ~ e^{660}: far outside double, still finite in log form.
  CHECK(p[60].log_magnitude() > 600.0);
  CHECK(rotor::gegenbauer_c(200, 3.5, std::cosh(40.0)).log_magnitude() > 8000.0);
}

TEST_CASE("sequences agree with single evaluations") {
  const cplx w(0.7, 0.4);
  const auto seq = rotor::gegenbauer_sequence(25, 3.0, w);
  REQUIRE(seq.size() == 26);
  for (int n = 0; n <= 25; ++n) CHECK(seq[n].value() == rotor::gegenbauer_c(n, 3.0, w).value());
}

TEST_CASE("invalid degrees and orders are rejected") {
  CHECK_THROWS_AS(rotor::legendre_p(-1, 0.5), rotor::InvalidArgument);
  CHECK_THROWS_AS(rotor::gegenbauer_c(-2, 1.0, 0.5), rotor::InvalidArgument);
  CHECK_THROWS_AS(rotor::gegenbauer_c(3, 0.0, 0.5), rotor::InvalidArgument);
  CHECK_THROWS_AS(rotor::gegenbauer_c(3, -1.5, 0.5), rotor::InvalidArgument);
}

TEST_CASE("log factorial") {
  CHECK(rotor::log_factorial(0) == 0.0);
  CHECK(rotor::log_factorial(1) == 0.0);
  CHECK(rotor::log_factorial(10) == doctest::Approx(std::log(3628800.0)).epsilon(1e-15));
  double acc = 0.0;
  for (int n = 1; n <= 170; ++n) acc += std::log(static_cast<double>(n));
  CHECK(rotor::log_factorial(170) == doctest::Approx(acc).epsilon(1e-14));
}

TEST_CASE("legendre series with automatic cutoff") {
  // sum_j (2j+1) e^{-j(j+1)} P_j(1): direct sum oracle.
  auto weight = [](int j) { return ScaledComplex::from_log(-static_cast<double>(j) * (j + 1) + std::log(2.0 * j + 1.0), 0.0); };
  const auto s = rotor::legendre_series(1.0, -1, weight);
  CHECK(s.value().real() == doctest::Approx(oracle::fiducial_norm_sq()).epsilon(1e-15));
  CHECK(s.value().real() == doctest::Approx(1.41844264).epsilon(1e-8));

  // Fixed cutoffs: partial sums.
  double partial = 0.0;
  for (int j = 0; j <= 2; ++j) partial += (2.0 * j + 1.0) * std::exp(-static_cast<double>(j) * (j + 1));
  CHECK(rotor::legendre_series(1.0, 2, weight).value().real() == doctest::Approx(partial).epsilon(1e-15));

  // Slowly decaying weights stop at the hard cap.
  int highest = -1;
  auto flat = [&](int j) {
    highest = std::max(highest, j);
    return ScaledComplex::from_real(1.0);
  };
  (void)rotor::legendre_series(1.0, -1, flat, 50);
  CHECK(highest == 50);
}

TEST_CASE("legendre series at huge argument") {
  // Weights e^{-j(j+1)/2} against P_j(cosh 30): terms grow to ~e^{450} before the gaussian wins.
  auto weight = [](int j) { return ScaledComplex::from_log(-0.5 * j * (j + 1.0), 0.0); };
  const auto s = rotor::legendre_series(std::cosh(30.0), -1, weight);
  double best = -1e300, lse = 0.0;
  std::vector<double> logs;
  for (int j = 0; j <= 200; ++j) logs.push_back(-0.5 * j * (j + 1.0) + oracle::log_legendre_cosh(j, 30.0));
  for (double v : logs) best = std::max(best, v);
  for (double v : logs) lse += std::exp(v - best);
  CHECK(s.log_magnitude() == doctest::Approx(best + std::log(lse)).epsilon(1e-11));
}
