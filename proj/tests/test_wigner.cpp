// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oracle.hpp"
#include "spinqudit/dynamics.hpp"
#include "spinqudit/wigner.hpp"

#include <sstream>

using namespace spinqudit;

namespace {
const SpinQuantum q7(7);

// Gauss-Legendre in cos(theta) times a uniform phi rule; exact for band-limited W.
double sphere_integral(const MatrixXc& rho, const SpinQuantum& q) {
  std::vector<double> x, w;
  oracle::gauss_legendre(24, x, w);
  const int n_phi = 32;
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int j = 0; j < n_phi; ++j)
      s += w[i] * (kTwoPi / n_phi) * wigner_value(rho, q, std::acos(x[i]), -kPi + kTwoPi * j / n_phi);
  return s;
}

Eigen::Vector3d unit(double th, double ph) {
  return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}
}  // namespace

TEST_CASE("Clebsch-Gordan closed forms") {
  const double r2 = std::sqrt(0.5);
  CHECK(clebsch_gordan(1, 1, 1, -1, 2, 0) == doctest::Approx(r2));
  CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(r2));
  CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == doctest::Approx(-r2));
  CHECK(clebsch_gordan(2, 2, 2, -2, 0, 0) == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(clebsch_gordan(2, 0, 2, 0, 0, 0) == doctest::Approx(-1 / std::sqrt(3.0)));
  CHECK(clebsch_gordan(2, 2, 2, -2, 4, 0) == doctest::Approx(1 / std::sqrt(6.0)));
  CHECK(clebsch_gordan(2, 0, 2, 0, 4, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(clebsch_gordan(2, 0, 2, 0, 2, 0) == doctest::Approx(0.0));
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 0) == 0.0);  // M mismatch
  CHECK(clebsch_gordan(1, 1, 1, 1, 6, 2) == 0.0);  // triangle
}

TEST_CASE("spherical harmonics closed forms") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ut(0, kPi), up(-kPi, kPi);
  for (int t = 0; t < 20; ++t) {
    const double th = ut(rng), ph = up(rng), c = std::cos(th), s = std::sin(th);
    const auto e = [&](int m) { return std::polar(1.0, m * ph); };
    CHECK(std::abs(spherical_harmonic(0, 0, th, ph) - 0.5 / std::sqrt(kPi)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(1, 0, th, ph) - std::sqrt(3 / (4 * kPi)) * c) < 1e-13);
    CHECK(std::abs(spherical_harmonic(1, 1, th, ph) + std::sqrt(3 / (8 * kPi)) * s * e(1)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(1, -1, th, ph) - std::sqrt(3 / (8 * kPi)) * s * e(-1)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(2, 0, th, ph) - std::sqrt(5 / (16 * kPi)) * (3 * c * c - 1)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(2, 1, th, ph) + 0.5 * std::sqrt(15 / (2 * kPi)) * s * c * e(1)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(2, 2, th, ph) - 0.25 * std::sqrt(15 / (2 * kPi)) * s * s * e(2)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(3, 0, th, ph) - 0.25 * std::sqrt(7 / kPi) * (5 * c * c * c - 3 * c)) < 1e-13);
    CHECK(std::abs(spherical_harmonic(3, -3, th, ph) - 0.125 * std::sqrt(35 / kPi) * s * s * s * e(-3)) < 1e-13);
  }
}

TEST_CASE("tensor operators are orthonormal") {
  const SphericalTensorBasis b(q7);
  CHECK(b.ops.size() == 64);
  double worst = 0;
  for (std::size_t i = 0; i < b.ops.size(); ++i)
    for (std::size_t j = 0; j < b.ops.size(); ++j)
      worst = std::max(worst, std::abs((b.ops[i].adjoint() * b.ops[j]).trace() - cplx(i == j ? 1 : 0)));
  CHECK(worst < 1e-12);
  CHECK((b.T(0, 0) - MatrixXc::Identity(8, 8) / std::sqrt(8.0)).cwiseAbs().maxCoeff() < 1e-14);
  // T_10 is proportional to I_z
  const auto s = oracle::spin(7);
  const cplx ratio = b.T(1, 0)(0, 0) / s.z(0, 0);
  CHECK((b.T(1, 0) - ratio * s.z).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("decomposition round trip") {
  const SphericalTensorBasis b(q7);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const MatrixXc rho = oracle::random_density(8, rng);
    CHECK((tensor_reconstruct(tensor_decompose(rho, b), b) - rho).cwiseAbs().maxCoeff() < 1e-12);
  }
  const VectorXc mixed = tensor_decompose(MatrixXc::Identity(8, 8) / 8.0, b);
  CHECK(std::abs(mixed(0) - 1 / std::sqrt(8.0)) < 1e-14);
  CHECK(mixed.tail(63).cwiseAbs().maxCoeff() < 1e-14);

  const VectorXc top = tensor_decompose(projector(basis_state(q7, 3.5)), b);
  for (int k = 0; k <= 7; ++k)
    for (int qq = -k; qq <= k; ++qq)
      if (qq != 0) CHECK(std::abs(top(SphericalTensorBasis::index(k, qq))) < 1e-14);

  const VectorXc cat = tensor_decompose(projector(z_cat(q7, kPi)), b);
  CHECK(std::abs(cat(SphericalTensorBasis::index(7, 7))) > 0.1);
  CHECK(std::abs(cat(SphericalTensorBasis::index(7, -7))) > 0.1);
  for (int qq = 1; qq < 7; ++qq) CHECK(std::abs(cat(SphericalTensorBasis::index(7, qq))) < 1e-14);
}

TEST_CASE("maximally mixed state is flat") {
  const MatrixXc mixed = MatrixXc::Identity(8, 8) / 8.0;
  for (double th : {0.0, 0.7, 2.0, kPi})
    for (double ph : {-3.0, 0.0, 1.2})
      CHECK(wigner_value(mixed, q7, th, ph) == doctest::Approx(1 / (4 * kPi)).epsilon(1e-12));
}

TEST_CASE("normalization") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t)
    CHECK(sphere_integral(oracle::random_density(8, rng, 1 + t), q7) == doctest::Approx(1.0).epsilon(1e-10));
  // sqrt(8/d) for other spins
  const SpinQuantum q3(3);
  CHECK(sphere_integral(projector(basis_state(q3, 0.5)), q3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  // the grid quadrature with trapezoid weights also lands near 1
  const WignerGrid g = wigner_grid(projector(basis_state(q7, 1.5)), q7, 181, 361, Projection::None);
  double s = 0;
  const double dth = g.thetas(1) - g.thetas(0), dph = g.phis(1) - g.phis(0);
  for (int i = 0; i < g.thetas.size(); ++i)
    for (int j = 0; j + 1 < g.phis.size(); ++j)
      s += g.values(i, j) * std::sin(g.thetas(i)) * dth * dph * ((i == 0 || i + 1 == g.thetas.size()) ? 0.5 : 1);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("eigenstate maps") {
  const WignerGrid top = wigner_grid(projector(basis_state(q7, 3.5)), q7, 91, 181);
  Eigen::Index r, c;
  top.values.maxCoeff(&r, &c);
  CHECK(r == 0);
  CHECK(top.max() < kWignerColorLimit);
  CHECK(top.min() > -kWignerColorLimit);
  for (int k = 1; k < 7; ++k) {
    const WignerGrid g = wigner_grid(projector(basis_state(q7, 3.5 - k)), q7, 91, 181);
    CHECK(g.min() < 0);
    CHECK(g.max() < kWignerColorLimit);
    CHECK(g.min() > -kWignerColorLimit);
  }
}

TEST_CASE("z-cat equatorial fringes") {
  const int n = 256;
  for (double xi : {kPi, 0.3}) {
    const MatrixXc rho = projector(z_cat(q7, xi));
    VectorXd cut(n);
    for (int j = 0; j < n; ++j) cut(j) = wigner_value(rho, q7, kPi / 2, -kPi + kTwoPi * j / n);
    CHECK(dominant_harmonic(cut) == 7);
  }
  // the fringe pattern shifts by dxi / 7 in phi
  const double dxi = 0.9, phi0 = 0.37;
  CHECK(wigner_value(projector(z_cat(q7, dxi)), q7, kPi / 2, phi0 + dxi / 7) ==
        doctest::Approx(wigner_value(projector(z_cat(q7, 0.0)), q7, kPi / 2, phi0)).epsilon(1e-12));
  // a single period over the cat phase
  VectorXd sweep(64);
  for (int j = 0; j < 64; ++j)
    sweep(j) = wigner_value(projector(z_cat(q7, -kPi + kTwoPi * j / 64)), q7, kPi / 2, -kPi / 2);
  CHECK(dominant_harmonic(sweep) == 1);
}

TEST_CASE("rotational covariance") {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> ua(-kPi, kPi), ut(0, kPi);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const MatrixXc rho = oracle::random_density(8, rng, 1 + t % 8);
    const double th = ua(rng), ph = ua(rng);
    const MatrixXc u = covariant_rotation(q7, th, ph);
    const MatrixXc rot = u * rho * u.adjoint();
    // U moves Bloch vectors by -th about n; W of the image is W at the pre-image
    const Eigen::Matrix3d back =
        Eigen::AngleAxisd(th, Eigen::Vector3d(std::cos(ph), std::sin(ph), 0)).toRotationMatrix();
    for (int p = 0; p < 4; ++p) {
      const double a = ut(rng), b = ua(rng);
      const Eigen::Vector3d v = back * unit(a, b);
      const double a2 = std::acos(std::clamp(v.z(), -1.0, 1.0)), b2 = std::atan2(v.y(), v.x());
      worst = std::max(worst, std::abs(wigner_value(rot, q7, a, b) - wigner_value(rho, q7, a2, b2)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("linearity and periodicity") {
  std::mt19937_64 rng(5);
  const MatrixXc a = oracle::random_density(8, rng), b = oracle::random_density(8, rng);
  CHECK(wigner_value(MatrixXc(0.3 * a + 0.7 * b), q7, 1.1, 0.4) ==
        doctest::Approx(0.3 * wigner_value(a, q7, 1.1, 0.4) + 0.7 * wigner_value(b, q7, 1.1, 0.4)));
  CHECK(wigner_value(a, q7, 1.1, 0.4 + kTwoPi) == doctest::Approx(wigner_value(a, q7, 1.1, 0.4)).epsilon(1e-12));
  const WignerGrid g = wigner_grid(a, q7, 19, 37, Projection::None);
  CHECK((g.values.col(0) - g.values.col(36)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projections and export") {
  auto [x0, y0] = project(Projection::Hammer, kPi / 2, 0.0);
  CHECK(x0 == doctest::Approx(0.0));
  CHECK(y0 == doctest::Approx(0.0));
  auto [xe, ye] = project(Projection::Hammer, kPi / 2, kPi);
  CHECK(xe == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(ye == doctest::Approx(0.0));
  auto [xn, yn] = project(Projection::Hammer, 0.0, 0.3);
  CHECK(yn == doctest::Approx(std::sqrt(2.0)));
  CHECK(xn == doctest::Approx(0.0).epsilon(1e-12));
  auto [xs, ys] = project(Projection::Polar, kPi, 1.0);
  CHECK(std::hypot(xs, ys) == doctest::Approx(0.0));
  auto [xq, yq] = project(Projection::Polar, kPi / 2, 1.0);
  CHECK(std::hypot(xq, yq) == doctest::Approx(0.5));
  CHECK(parse_projection("hammer") == Projection::Hammer);
  CHECK(to_string(parse_projection("polar")) == "polar");
  CHECK_THROWS_AS(parse_projection("mollweide"), SpinError);

  const WignerGrid g = wigner_grid(projector(basis_state(q7, 3.5)), q7, 5, 9);
  std::ostringstream os;
  g.write_csv(os);
  const std::string csv = os.str();
  CHECK(csv.rfind("theta_rad,phi_rad,x_proj,y_proj,W", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 45);
  const std::string svg = wigner_svg(g, "top");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS_AS(wigner_grid(projector(basis_state(q7, 3.5)), q7, 1, 9), SpinError);
}
