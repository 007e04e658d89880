#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rotor/errors.hpp"
#include "rotor/hilbert.hpp"

using namespace rotor;

namespace {

StateVector random_state(const RepresentationConfig& cfg, int j_top, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector s(cfg);
  for (int j = 0; j <= j_top; ++j)
    for (int m = -j; m <= j; ++m) s(j, m) = cplx(g(rng), g(rng));
  return s;
}

// sum_jm s_jm Y_jm(theta, phi)
cplx expand(const StateVector& s, double theta, double phi) {
  cplx f = 0.0;
  for (int j = 0; j <= s.config().j_max(); ++j)
    for (int m = -j; m <= j; ++m) f += s(j, m) * oracle::spherical_harmonic(j, m, theta, phi);
  return f;
}

}  // namespace

TEST_CASE("representation config and dense index") {
  CHECK_THROWS_AS(RepresentationConfig(1), InvalidArgument);
  const RepresentationConfig cfg(7);
  CHECK(cfg.dimension() == 64);
  std::size_t expect = 0;
  for (int j = 0; j <= 7; ++j)
    for (int m = -j; m <= j; ++m) {
      CHECK(RepresentationConfig::index(j, m) == expect);
      CHECK(RepresentationConfig::basis_index(expect) == BasisIndex{j, m});
      ++expect;
    }
  CHECK(cfg.contains(7, -7));
  CHECK_FALSE(cfg.contains(8, 0));
  CHECK_FALSE(cfg.contains(3, 4));
}

TEST_CASE("state vector arithmetic and inner product") {
  const RepresentationConfig cfg(4);
  std::mt19937_64 rng(1);
  const StateVector a = random_state(cfg, 4, rng), b = random_state(cfg, 4, rng);
  cplx direct = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) direct += std::conj(a[i]) * b[i];
  CHECK(std::abs(inner_product(a, b) - direct) < 1e-13);
  CHECK(inner_product(a, a).real() == doctest::Approx(a.norm_sq()));
  CHECK(std::abs(inner_product(a, a).imag()) < 1e-14);
  double shells = 0.0;
  for (int j = 0; j <= 4; ++j) shells += a.shell_mass(j);
  CHECK(shells == doctest::Approx(a.norm_sq()));
  CHECK(((a + b) - b - a).norm() < 1e-14);
  CHECK((cplx(0, 2) * a).norm() == doctest::Approx(2 * a.norm()));
  CHECK_THROWS_AS(inner_product(a, StateVector(RepresentationConfig(5))), DimensionError);
  CHECK_THROWS_AS(StateVector(cfg, std::vector<cplx>(3)), DimensionError);
  const StateVector e = StateVector::basis(cfg, 3, -2);
  CHECK(e(3, -2) == cplx(1.0));
  CHECK(e.norm_sq() == 1.0);
}

TEST_CASE("operators act as multiplication and differentiation on spherical harmonics") {
  const RepresentationConfig cfg(9);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(0.1, 3.0), up(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 4; ++trial) {
    // Interior support, so raising never leaves the truncated space.
    const StateVector s = random_state(cfg, 7, rng);
    const double th = ut(rng), ph = up(rng);
    const cplx f = expand(s, th, ph);
    const double scale = s.norm();
    CHECK(std::abs(expand(apply_x3(s), th, ph) - std::cos(th) * f) < 1e-12 * scale);
    CHECK(std::abs(expand(apply_xpm(s, Sign::plus), th, ph) - std::sin(th) * std::polar(1.0, ph) * f) < 1e-12 * scale);
    CHECK(std::abs(expand(apply_xpm(s, Sign::minus), th, ph) - std::sin(th) * std::polar(1.0, -ph) * f) < 1e-12 * scale);
    // J3 = -i d/dphi, checked by a centred difference.
    const double h = 1e-5;
    const cplx dphi = (expand(s, th, ph + h) - expand(s, th, ph - h)) / (2 * h);
    CHECK(std::abs(expand(apply_j3(s), th, ph) - cplx(0, -1) * dphi) < 1e-7 * scale);
  }
}

TEST_CASE("ladder amplitudes follow the textbook formulas") {
  for (int j = 0; j <= 12; ++j)
    for (int m = -j; m <= j; ++m) {
      CHECK(jpm_amplitude(Sign::plus, j, m) == doctest::Approx(std::sqrt((j - m) * (j + m + 1.0))));
      CHECK(jpm_amplitude(Sign::minus, j, m) == doctest::Approx(std::sqrt((j + m) * (j - m + 1.0))));
    }
  const RepresentationConfig cfg(5);
  const StateVector up = apply_jpm(StateVector::basis(cfg, 3, 1), Sign::plus);
  CHECK(up(3, 2).real() == doctest::Approx(std::sqrt(10.0)));
  CHECK(up.norm_sq() == doctest::Approx(10.0));
  CHECK(apply_jpm(StateVector::basis(cfg, 3, 3), Sign::plus).norm() == 0.0);
  CHECK(apply_j3(StateVector::basis(cfg, 4, -3))(4, -3) == cplx(-3.0));
}

TEST_CASE("truncation drops the top shell's raising component") {
  const RepresentationConfig cfg(3);
  const StateVector top = StateVector::basis(cfg, 3, 0);
  const StateVector x = apply_x3(top);
  CHECK(x.shell_mass(2) > 0.0);
  CHECK(x.norm() < 1.0);
}

TEST_CASE("band operators: construction, algebra and adjoint") {
  const RepresentationConfig cfg(4);
  const std::vector<BandEntry> entries = {{{2, 1}, {1, 0}, {1.0, 2.0}}, {{2, 1}, {1, 0}, {0.5, 0.0}}, {{0, 0}, {0, 0}, 3.0}};
  const BandOperator op(cfg, entries);
  CHECK(op.element({2, 1}, {1, 0}) == cplx(1.5, 2.0));
  CHECK(op.element({0, 0}, {0, 0}) == cplx(3.0));
  CHECK(op.element({1, 0}, {2, 1}) == cplx(0.0));
  CHECK(op.adjoint().element({1, 0}, {2, 1}) == cplx(1.5, -2.0));
  CHECK(op.entries().size() == 2);

  const std::vector<BandEntry> far = {{{3, 0}, {1, 0}, 1.0}};
  CHECK_THROWS_AS(BandOperator(cfg, far), InvalidArgument);
  const std::vector<BandEntry> wide = {{{2, 2}, {2, -1}, 1.0}};
  CHECK_THROWS_AS(BandOperator(cfg, wide), InvalidArgument);
  const std::vector<BandEntry> outside = {{{5, 0}, {4, 0}, 1.0}};
  CHECK_THROWS(BandOperator(cfg, outside));

  std::mt19937_64 rng(3);
  const StateVector s = random_state(cfg, 4, rng);
  const BandOperator j3 = angular_momentum_operator(cfg, Component::three);
  const BandOperator x3 = position_operator(cfg, Component::three);
  CHECK(((j3 + x3).apply(s) - j3.apply(s) - x3.apply(s)).norm() < 1e-13);
  CHECK(((j3 - x3).apply(s) - j3.apply(s) + x3.apply(s)).norm() < 1e-13);
  CHECK(((j3 * cplx(0, 2)).apply(s) - cplx(0, 2) * j3.apply(s)).norm() < 1e-13);
  CHECK((j3.apply(s) - apply_j3(s)).norm() < 1e-13);
  CHECK((x3.apply(s) - apply_x3(s)).norm() < 1e-13);
  CHECK((position_operator(cfg, Component::plus).apply(s) - apply_xpm(s, Sign::plus)).norm() < 1e-13);
  CHECK((angular_momentum_operator(cfg, Component::minus).apply(s) - apply_jpm(s, Sign::minus)).norm() < 1e-13);
  CHECK_THROWS_AS(j3.apply(StateVector(RepresentationConfig(5))), DimensionError);
}

TEST_CASE("cartesian components are hermitian") {
  const RepresentationConfig cfg(6);
  for (Component c : {Component::one, Component::two, Component::three}) {
    for (const auto& op : {angular_momentum_operator(cfg, c), position_operator(cfg, c)}) {
      for (const auto& e : op.entries()) CHECK(std::abs(op.element(e.col, e.row) - std::conj(e.value)) < 1e-15);
    }
  }
  const BandOperator xp = position_operator(cfg, Component::plus);
  const BandOperator xm = position_operator(cfg, Component::minus);
  for (const auto& e : xp.entries()) CHECK(std::abs(xm.element(e.col, e.row) - std::conj(e.value)) < 1e-15);
}

TEST_CASE("algebra closes on interior states") {
  const RepresentationConfig cfg(20);
  const BandOperator J[3] = {angular_momentum_operator(cfg, Component::one), angular_momentum_operator(cfg, Component::two),
                             angular_momentum_operator(cfg, Component::three)};
  const BandOperator X[3] = {position_operator(cfg, Component::one), position_operator(cfg, Component::two),
                             position_operator(cfg, Component::three)};
  const cplx I(0, 1);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector s = random_state(cfg, 18, rng);
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, c = (a + 2) % 3;
      const double scale = s.norm() * 400.0;
      CHECK((J[a].apply(J[b].apply(s)) - J[b].apply(J[a].apply(s)) - I * J[c].apply(s)).norm() < 1e-12 * scale);
      CHECK((J[a].apply(X[b].apply(s)) - X[b].apply(J[a].apply(s)) - I * X[c].apply(s)).norm() < 1e-12 * scale);
      CHECK((X[a].apply(X[b].apply(s)) - X[b].apply(X[a].apply(s))).norm() < 1e-12 * s.norm());
    }
    StateVector x2(cfg), jx(cfg);
    for (int a = 0; a < 3; ++a) {
      x2 += X[a].apply(X[a].apply(s));
      jx += J[a].apply(X[a].apply(s));
    }
    CHECK((x2 - s).norm() < 1e-13 * s.norm());
    CHECK(jx.norm() < 1e-12 * s.norm() * 20.0);
  }
}

TEST_CASE("Z operator is the similarity transform of X") {
  const RepresentationConfig cfg(8);
  for (int axis = 1; axis <= 3; ++axis) {
    const BandOperator z = build_z_operator(cfg, axis);
    const BandOperator x = position_operator(cfg, axis == 1 ? Component::one : axis == 2 ? Component::two : Component::three);
    for (const auto& e : x.entries()) {
      const double jr = e.row.j, jc = e.col.j;
      const double factor = std::exp(-0.5 * (jr * (jr + 1) - jc * (jc + 1)));
      CHECK(std::abs(z.element(e.row, e.col) - factor * e.value) <= 1e-14 * std::abs(factor * e.value));
    }
    CHECK(z.entries().size() == x.entries().size());
  }
  CHECK_THROWS_AS(build_z_operator(cfg, 0), InvalidArgument);
  CHECK_THROWS_AS(build_z_operator(cfg, 4), InvalidArgument);
}
