// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oracle.hpp"
#include "spinqudit/dynamics.hpp"
#include "spinqudit/floquet.hpp"

#include <sstream>

using namespace spinqudit;

namespace {
const SpinQuantum q7(7);

// -(i pi / T) int_0^T dt1 int_0^t1 dt2 [H(t1), H(t2)] by nested Gauss-Legendre
MatrixXc first_order_oracle(const CrossCouplingParams& p) {
  std::vector<double> x, w;
  oracle::gauss_legendre(48, x, w);
  const double period = 1 / p.f_q;
  MatrixXc acc = MatrixXc::Zero(8, 8);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t1 = 0.5 * period * (x[i] + 1), w1 = 0.5 * period * w[i];
    const MatrixXc h1 = cross_coupling_hamiltonian(p, t1);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double t2 = 0.5 * t1 * (x[j] + 1), w2 = 0.5 * t1 * w[j];
      const MatrixXc h2 = cross_coupling_hamiltonian(p, t2);
      acc += (w1 * w2) * (h1 * h2 - h2 * h1);
    }
  }
  return cplx(0, -kPi / period) * acc;
}
}  // namespace

TEST_CASE("cross-coupling Hamiltonian") {
  const CrossCouplingParams p{163.4, 28e3, q7};
  const MatrixXc h0 = cross_coupling_hamiltonian(p, 0.0);
  // all 2I Fourier terms add up at t = 0
  CHECK(std::abs(h0(0, 1) + 0.5 * p.f_rabi * std::sqrt(7.0) * 7) < 1e-9);
  CHECK(std::abs(h0(3, 4) + 0.5 * p.f_rabi * 4 * 7) < 1e-9);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1e-3);
  for (int k = 0; k < 10; ++k) {
    const double t = u(rng);
    const MatrixXc h = cross_coupling_hamiltonian(p, t);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h - cross_coupling_hamiltonian(p, t + 1 / p.f_q)).cwiseAbs().maxCoeff() < 1e-8);
  }
  // period average by quadrature is -f_rabi I_x
  const int n = 64;
  MatrixXc avg = MatrixXc::Zero(8, 8);
  for (int k = 0; k < n; ++k) avg += cross_coupling_hamiltonian(p, k / (n * p.f_q)) / double(n);
  const auto s = oracle::spin(7);
  CHECK((avg + p.f_rabi * s.x).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(avg(0, 1) + 0.5 * p.f_rabi * std::sqrt(7.0)) < 1e-9);

  CrossCouplingParams bad = p;
  bad.f_q = 0;
  CHECK_THROWS_AS(bad.validate(), SpinError);
}

TEST_CASE("Fourier components reassemble the Hamiltonian") {
  const CrossCouplingParams p{300.0, 28e3, q7};
  const auto hn = cross_coupling_fourier(p);
  CHECK(hn.size() == 13);
  for (double t : {0.0, 1.3e-5, 2.9e-5}) {
    MatrixXc sum = MatrixXc::Zero(8, 8);
    for (int n = -6; n <= 6; ++n) sum += hn[n + 6] * std::polar(1.0, kTwoPi * n * p.f_q * t);
    CHECK((sum - cross_coupling_hamiltonian(p, t)).cwiseAbs().maxCoeff() < 1e-9);
  }
  for (int n = 1; n <= 6; ++n) CHECK((hn[6 + n] - hn[6 - n].adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("average Hamiltonian") {
  const CrossCouplingParams p{163.4, 28e3, q7};
  const AverageHamiltonian a = average_hamiltonian(p);
  const auto s = oracle::spin(7);
  CHECK((a.order0 + p.f_rabi * s.x).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((a.order1 - a.order1.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  const MatrixXd m = printed_first_order_matrix();
  const double scale = first_order_scale(p);
  CHECK(scale == doctest::Approx(std::pow(2 * p.f_rabi, 2) / (16 * p.f_q)));
  const double rel = (a.order1 - scale * m.cast<cplx>()).cwiseAbs().maxCoeff() / (scale * m.cwiseAbs().maxCoeff());
  MESSAGE("order1 vs printed matrix, relative: " << rel);
  CHECK(rel < 1e-8);
  CHECK(a.order1(0, 0).real() == doctest::Approx(-343.0 / 20 * scale));
  CHECK(a.order1(0, 2).real() == doctest::Approx(-std::sqrt(7.0 / 3) * scale));
  CHECK(a.order1(1, 3).real() == doctest::Approx(-6 / std::sqrt(5.0) * scale));
  CHECK(a.order1(2, 4).real() == doctest::Approx(-std::sqrt(15.0) * scale));
  // the diagonal sums to zero
  CHECK(std::abs(a.order1.trace()) < 1e-12 * scale);

  const MatrixXc q = first_order_oracle(p);
  const double qrel = (a.order1 - q).cwiseAbs().maxCoeff() / q.cwiseAbs().maxCoeff();
  MESSAGE("order1 vs double-commutator quadrature, relative: " << qrel);
  CHECK(qrel < 1e-8);
}

TEST_CASE("contrast at small drive ratios") {
  const double c3 = peak_contrast({28.0, 28e3, q7}, SweepMethod::Exact);
  CHECK(c3 >= 1 - 1e-5);
  CHECK(c3 <= 1 + 1e-9);
  const double loss = 1 - peak_contrast({280.0, 28e3, q7}, SweepMethod::Exact);
  MESSAGE("1 - contrast at ratio 1e-2: " << loss);
  CHECK(loss > 1e-4 / 3);
  CHECK(loss < 3e-4);
  // only the ratio matters
  CHECK(1 - peak_contrast({0.01, 1.0, q7}, SweepMethod::Exact) == doctest::Approx(loss).epsilon(1e-5));
}

TEST_CASE("Magnus1 tracks the exact contrast loss") {
  const std::vector<double> ratios = {1e-3, 5e-3, 1e-2, 2e-2, 3e-2, 4e-2, 5e-2};
  const SweepResult ex = contrast_sweep(ratios, SweepMethod::Exact);
  const SweepResult mg = contrast_sweep(ratios, SweepMethod::Magnus1);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double le = 1 - ex.contrast[i], lm = 1 - mg.contrast[i];
    INFO("ratio " << ratios[i] << ": exact " << le << ", magnus1 " << lm);
    CHECK(std::abs(lm - le) <= 0.1 * le);
    CHECK_FALSE(ex.flagged[i]);
  }
}

TEST_CASE("power-law fit") {
  const std::vector<double> x = {1e-3, 1e-2, 0.5, 1.0, 10.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * v * v);
  y[2] = 7;  // excluded window
  y[3] = -1;
  const PowerLawFit f = fit_power_law(x, y);
  CHECK(f.points == 3);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-10));

  const SweepResult ex = contrast_sweep({1e-3, 3e-3, 1e-2, 3e-2}, SweepMethod::Exact);
  std::vector<double> loss;
  for (double c : ex.contrast) loss.push_back(1 - c);
  const PowerLawFit g = fit_power_law(ex.ratios, loss);
  MESSAGE("slope over [1e-3, 3e-2]: " << g.exponent);
  CHECK(g.exponent == doctest::Approx(2.0).epsilon(0.1));

  std::ostringstream os;
  ex.write_csv(os);
  CHECK(os.str().rfind("ratio_frabi_over_fq,contrast_max_iz_over_I,method,flagged\n", 0) == 0);
  CHECK(parse_sweep_method("magnus1") == SweepMethod::Magnus1);
  CHECK_THROWS_AS(parse_sweep_method("magnus2"), SpinError);
  CHECK_THROWS_AS(contrast_sweep({-1.0}, SweepMethod::Exact), SpinError);
}

TEST_CASE("cross-coupling model against the full lab-frame drive") {
  const auto p = StaticParams::with_fq(1.384, 5.55e6, 28e3);
  const FrameDefinition fr = FrameDefinition::from_static(static_hamiltonian(p, q7), q7);
  SweepOptions grid;
  grid.refine_peak = false;
  LabOptions o;
  o.tol = 1e-10;
  o.samples_per_segment = int(grid.rabi_periods * grid.samples_per_period);
  for (double ratio : {1e-2, 3e-2, 0.1}) {
    PulseSchedule s;
    s.segments.emplace_back(covariant_pulse(q7, fr, ratio * 28e3, grid.rabi_periods * kTwoPi, 0.0, p.gamma_n));
    const double lab = 1 - evolve_lab(basis_state(q7, -3.5), s, fr, p, q7, o).iz_expect.maxCoeff() / 3.5;
    const double zeta = 1 - peak_contrast({ratio * 28e3, 28e3, q7}, SweepMethod::Exact, grid);
    INFO("ratio " << ratio << ": lab " << lab << ", model " << zeta);
    CHECK(std::abs(lab - zeta) < 0.05 * zeta);
  }
}
