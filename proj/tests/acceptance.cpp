// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. `acceptance N` runs criterion N, no argument runs all.
// Each prints one line "criterion N: PASS|FAIL ..." and the exit status is
// the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "spinqudit/catcode.hpp"
#include "spinqudit/dynamics.hpp"
#include "spinqudit/floquet.hpp"
#include "spinqudit/tomography.hpp"
#include "spinqudit/wigner.hpp"

using namespace spinqudit;

namespace {

const SpinQuantum q7(7);
constexpr double kGamma = 5.55e6;
constexpr double kFRabi = 163.4;

// tolerances
constexpr double kRabiDev = 1e-9;
constexpr double kRabiPeriod = 6.1199e-3, kRabiPeriodTol = 1e-6;
constexpr double kMagnusRel = 1e-8;
constexpr double kLossLo = 3e-5, kLossHi = 3e-4, kSlope = 2.0, kSlopeTol = 0.2;
constexpr double kXCatTol = 1e-3, kOatTol = 1e-12;
constexpr double kParityContrastTol = 1e-6;
constexpr double kFtePaper = 76.3, kFtePaperTol = 0.5;
constexpr double kTwoDesign = 67.4, kTwoDesignTol = 1e-6;
constexpr double kFteUniform = 73.8, kFteUniformTol = 0.4;
constexpr double kInfFid = 0.999, kMedianFid = 0.90;
constexpr int kMetaTrials = 20, kMetaPass = 18, kPowerTrials = 10;
constexpr double kPowerFrac = 0.8;
constexpr double kKlTol = 1e-10, kSwapTol = 1e-12, kBiasTol = 1e-12;
constexpr double kIntegralTol = 1e-6, kCovarianceTol = 1e-8;
constexpr double kDephaseTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

FrameDefinition flat_frame() { return FrameDefinition::on_resonance(VectorXd::Constant(7, 7.68e6)); }

Outcome rabi() {
  const FrameDefinition fr = flat_frame();
  PulseSchedule s;
  s.segments.emplace_back(covariant_pulse(q7, fr, kFRabi, 4 * kPi, 0.0, kGamma));
  const auto res = evolve_grf(basis_state(q7, -3.5), s, fr, q7, kGamma, 4000);
  double dev = 0;
  for (std::size_t i = 0; i < res.times.size(); ++i)
    dev = std::max(dev, std::abs(res.iz_expect(i) + 3.5 * std::cos(kTwoPi * kFRabi * res.times[i])));
  // period from upward zero crossings of the trace
  std::vector<double> up;
  for (std::size_t i = 1; i < res.times.size(); ++i) {
    const double a = res.iz_expect(i - 1), b = res.iz_expect(i);
    if (a < 0 && b >= 0) up.push_back(res.times[i - 1] + (res.times[i] - res.times[i - 1]) * a / (a - b));
  }
  const double period = up.size() >= 2 ? (up.back() - up.front()) / double(up.size() - 1) : 0;
  const bool ok = dev < kRabiDev && std::abs(period - kRabiPeriod) < kRabiPeriodTol;
  return {ok, fmt("max |<Iz> + 3.5 cos| = %.2e (< %.0e), period %.6f ms (%.4f +- %.3f)", dev, kRabiDev,
                  period * 1e3, kRabiPeriod * 1e3, kRabiPeriodTol * 1e3)};
}

Outcome magnus() {
  const CrossCouplingParams p{kFRabi, 28e3, q7};
  // printed matrix, transcribed
  const double a = -343.0 / 20, b = 7.0 / 4, c = 133.0 / 20, d = 35.0 / 4;
  const double u = -std::sqrt(7.0 / 3), v = -6 / std::sqrt(5.0), w = -std::sqrt(15.0);
  MatrixXd m(8, 8);
  m << a, 0, u, 0, 0, 0, 0, 0,
       0, b, 0, v, 0, 0, 0, 0,
       u, 0, c, 0, w, 0, 0, 0,
       0, v, 0, d, 0, w, 0, 0,
       0, 0, w, 0, d, 0, v, 0,
       0, 0, 0, w, 0, c, 0, u,
       0, 0, 0, 0, v, 0, b, 0,
       0, 0, 0, 0, 0, u, 0, a;
  const double scale = std::pow(2 * p.f_rabi, 2) / (16 * p.f_q);
  const MatrixXc h1 = average_hamiltonian(p).order1;
  const double rel = (h1 - scale * m.cast<cplx>()).cwiseAbs().maxCoeff() / (scale * m.cwiseAbs().maxCoeff());
  return {rel <= kMagnusRel, fmt("max relative deviation %.2e (<= %.0e)", rel, kMagnusRel)};
}

Outcome scaling() {
  const std::vector<double> ratios = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2};
  const SweepResult r = contrast_sweep(ratios, SweepMethod::Exact);
  std::vector<double> loss;
  bool flagged = false;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    loss.push_back(1 - r.contrast[i]);
    flagged = flagged || r.flagged[i];
  }
  const double at1e2 = loss[3];
  const PowerLawFit f = fit_power_law(ratios, loss);
  const bool ok = !flagged && at1e2 >= kLossLo && at1e2 <= kLossHi && f.points == int(ratios.size()) &&
                  std::abs(f.exponent - kSlope) <= kSlopeTol;
  return {ok, fmt("1-contrast at 1e-2 = %.3e in [%.0e, %.0e], slope %.3f (%.1f +- %.1f)", at1e2, kLossLo, kLossHi,
                  f.exponent, kSlope, kSlopeTol)};
}

Outcome snap_cat() {
  const double amp[8] = {-0.088, 0.234, -0.405, 0.523, -0.523, 0.405, -0.234, 0.088};
  VectorXc printed(8);
  for (int k = 0; k < 8; ++k) printed(k) = std::polar(amp[k], k % 2 == 0 ? -3 * kPi / 4 : -kPi / 4);
  // scs along -x, then the alternating update applied as a virtual SNAP
  const VectorXc scs = spin_coherent_state(q7, kPi / 2, kPi);
  const VectorXc cat = virtual_snap(flat_frame(), alternating_snap_update(q7)).second * scs;
  const double dx = oracle::phase_aligned_distance(cat, printed);

  const cplx i(0, 1);
  MatrixXc oat_printed(8, 8);
  oat_printed << 1, 0, 0, 0, 0, 0, 0, i,
                 0, -i, 0, 0, 0, 0, 1, 0,
                 0, 0, 1, 0, 0, i, 0, 0,
                 0, 0, 0, -i, 1, 0, 0, 0,
                 0, 0, 0, i, 1, 0, 0, 0,
                 0, 0, 1, 0, 0, -i, 0, 0,
                 0, i, 0, 0, 0, 0, 1, 0,
                 1, 0, 0, 0, 0, 0, 0, -i;
  oat_printed /= std::sqrt(2.0);
  const double doat = diagonal_phase_distance(one_axis_twisting(q7), oat_printed);
  return {dx < kXCatTol && doat < kOatTol,
          fmt("x-cat max deviation %.2e (< %.0e), OAT residual %.2e (< %.0e)", dx, kXCatTol, doat, kOatTol)};
}

Outcome parity() {
  bool ok = true;
  std::ostringstream os;
  for (int sub : {7, 5, 3}) {
    const auto p = simulate_parity_oscillation(z_cat(q7, kPi, sub), q7, 256, sub);
    const int h = dominant_harmonic(p.samples);
    ok = ok && h == sub && std::abs(p.contrast - 1) <= kParityContrastTol && !p.flagged;
    os << (sub == 7 ? "" : ", ") << "sub " << sub << "/2: " << h << " periods, contrast "
       << fmt("%.8f", p.contrast);
  }
  return {ok, os.str() + fmt(" (1 +- %.0e)", kParityContrastTol)};
}

Outcome efficiency() {
  const double fp = tomographic_efficiency(frame_superoperator(paper_design(q7), q7)).f_te;
  const double td = two_design_efficiency(q7);
  const double fu = tomographic_efficiency(frame_superoperator(uniform_random_design(20000, 1), q7)).f_te;
  const bool a = std::abs(fp - kFtePaper) <= kFtePaperTol;
  const bool b = std::abs(td - kTwoDesign) <= kTwoDesignTol && std::abs(td - std::sqrt(4545.0)) <= kTwoDesignTol;
  const bool c = std::abs(fu - kFteUniform) <= kFteUniformTol;
  return {a && b && c, fmt("paper design %.4f (%.1f +- %.1f) %s; 2-design %.6f vs sqrt(4545) = %.6f %s; "
                           "uniform 2e4 axes %.4f (%.1f +- %.1f) %s",
                           fp, kFtePaper, kFtePaperTol, a ? "ok" : "off", td, std::sqrt(4545.0), b ? "ok" : "off",
                           fu, kFteUniform, kFteUniformTol, c ? "ok" : "off")};
}

Outcome mle() {
  const ExperimentDesign pd = paper_design(q7);
  const VectorXc cat = z_cat(q7, kPi / 2);
  MleOptions o;
  o.keep_trace = true;
  // infinite data: counts proportional to the Born probabilities
  ShotRecord exact;
  exact.counts = (outcome_probabilities(projector(cat), pd, q7) * 1e6).array().round().cast<int>();
  const MleResult inf = mle_reconstruct(exact, pd, q7, o);
  bool monotone = inf.converged;
  for (std::size_t k = 1; k < inf.trace.size(); ++k) monotone = monotone && inf.trace[k] >= inf.trace[k - 1];
  const double f_inf = fidelity(inf.rho, cat);

  std::vector<double> fids;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const MleResult m = mle_reconstruct(simulate_shots(projector(cat), pd, q7, seed), pd, q7, o);
    for (std::size_t k = 1; k < m.trace.size(); ++k) monotone = monotone && m.trace[k] >= m.trace[k - 1];
    monotone = monotone && m.converged;
    fids.push_back(fidelity(m.rho, cat));
  }
  std::nth_element(fids.begin(), fids.begin() + 50, fids.end());
  const bool ok = monotone && f_inf >= kInfFid && fids[50] >= kMedianFid;
  return {ok, fmt("loglik monotone and converged: %s, infinite-data fidelity %.6f (>= %.3f), 675-shot median "
                  "fidelity %.4f (>= %.2f)",
                  monotone ? "yes" : "no", f_inf, kInfFid, fids[50], kMedianFid)};
}

Outcome bootstrap() {
  const ExperimentDesign pd = paper_design(q7);
  BootstrapOptions bo;
  bo.n_samples = 1000;
  // calibration: data drawn from an MLE state and analysed with the true design
  const MatrixXc rho0 = mle_reconstruct(simulate_shots(projector(z_cat(q7, kPi / 2)), pd, q7, 1), pd, q7).rho;
  int inside = 0;
  for (int t = 0; t < kMetaTrials; ++t) {
    const ShotRecord r = simulate_shots(rho0, pd, q7, 1000 + t);
    bo.seed = 7 + t;
    const ValidationReport v = parametric_bootstrap(r, mle_reconstruct(r, pd, q7).rho, pd, q7, bo);
    inside += v.p_value > 0.01 && v.p_value < 0.99;
  }
  // power: one axis rotated by 10 degrees in the analysis only
  ExperimentDesign dense = pd;
  dense.shots_per_axis = 200;
  ExperimentDesign bad = dense;
  bad.axes[44].phi += 10 * kPi / 180;
  const MatrixXc cat = projector(z_cat(q7, kPi / 2));
  int rejected = 0;
  for (int t = 0; t < kPowerTrials; ++t) {
    const ShotRecord r = simulate_shots(cat, dense, q7, 2000 + t);
    bo.seed = 70 + t;
    const ValidationReport v = parametric_bootstrap(r, mle_reconstruct(r, bad, q7).rho, bad, q7, bo);
    rejected += v.p_value < 0.01;
  }
  const bool ok = inside >= kMetaPass && rejected >= kPowerFrac * kPowerTrials;
  return {ok, fmt("p in (0.01, 0.99) in %d/%d calibration trials (>= %d); corrupted axis p < 0.01 in %d/%d "
                  "(>= %.0f%%)",
                  inside, kMetaTrials, kMetaPass, rejected, kPowerTrials, kPowerFrac * 100)};
}

Outcome catcode() {
  const KlReport k7 = kl_check(codewords(q7), iz_power_errors(q7, 3), kKlTol);
  const SpinQuantum q5(5);
  const KlReport k5 = kl_check(codewords(q5), iz_power_errors(q5, 3), kKlTol);
  const CodePair c = codewords(q7);
  const MatrixXc x = logical_gate(q7, LogicalKind::X);
  const double swap = std::min(std::abs(c.one_L.dot(x * c.zero_L)), std::abs(c.zero_L.dot(x * c.one_L)));
  const MatrixXc iz = oracle::spin(7).z;
  const double bias = bias_preservation_check(x, iz).residual;
  const bool ok = k7.pass && !k5.pass && swap >= 1 - kSwapTol && bias < kBiasTol;
  return {ok, fmt("KL 7/2 %s (violation %.1e), KL 5/2 with Iz^3 %s (violation %.1e), X swap overlap 1 - %.1e, "
                  "bias residual %.1e",
                  k7.pass ? "pass" : "fail", std::max(k7.max_offdiag_violation, k7.max_diag_mismatch),
                  k5.pass ? "pass" : "fail", std::max(k5.max_offdiag_violation, k5.max_diag_mismatch), 1 - swap,
                  bias)};
}

Outcome wigner() {
  std::vector<double> x, w;
  oracle::gauss_legendre(24, x, w);
  const auto integral = [&](const MatrixXc& rho) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int j = 0; j < 32; ++j) s += w[i] * (kTwoPi / 32) * wigner_value(rho, q7, std::acos(x[i]), -kPi + kTwoPi * j / 32);
    return s;
  };
  std::mt19937_64 rng(10);
  std::vector<MatrixXc> states = {projector(z_cat(q7, kPi)), MatrixXc::Identity(8, 8) / 8.0};
  for (int k = 0; k < 8; ++k) states.push_back(projector(basis_state(q7, 3.5 - k)));
  for (int t = 0; t < 10; ++t) states.push_back(oracle::random_density(8, rng, 1 + t % 8));
  double idev = 0;
  for (const auto& s : states) idev = std::max(idev, std::abs(integral(s) - 1));

  std::uniform_real_distribution<double> ua(-kPi, kPi), ut(0, kPi);
  double cov = 0;
  for (int t = 0; t < 50; ++t) {
    const MatrixXc rho = oracle::random_density(8, rng, 1 + t % 8);
    const double th = ua(rng), ph = ua(rng);
    const MatrixXc u = covariant_rotation(q7, th, ph);
    const MatrixXc rot = u * rho * u.adjoint();
    const Eigen::Matrix3d back =
        Eigen::AngleAxisd(th, Eigen::Vector3d(std::cos(ph), std::sin(ph), 0)).toRotationMatrix();
    for (int p = 0; p < 4; ++p) {
      const double a = ut(rng), b = ua(rng);
      const Eigen::Vector3d n(std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a));
      const Eigen::Vector3d v = back * n;
      const double a2 = std::acos(std::clamp(v.z(), -1.0, 1.0)), b2 = std::atan2(v.y(), v.x());
      cov = std::max(cov, std::abs(wigner_value(rot, q7, a, b) - wigner_value(rho, q7, a2, b2)));
    }
  }

  int negative = 0;
  for (int k = 1; k < 7; ++k)
    negative += wigner_grid(projector(basis_state(q7, 3.5 - k)), q7, 91, 181, Projection::None).min() < 0;
  const bool ok = idev <= kIntegralTol && cov < kCovarianceTol && negative == 6;
  return {ok, fmt("max |int W - 1| = %.1e over %zu states (<= %.0e), covariance %.1e on 50 states (< %.0e), "
                  "negativity in %d/6 |m|<I eigenstates",
                  idev, states.size(), kIntegralTol, cov, kCovarianceTol, negative)};
}

Outcome dephasing() {
  const MatrixXc cat = projector(z_cat(q7, kPi));
  const double c0 = simulate_parity_oscillation(cat, q7, 64).contrast;
  const double c1 = simulate_parity_oscillation(apply_dephasing(cat, 15e-3, NoiseModel::uniform(q7, 15e-3)), q7, 64)
                        .contrast;
  const double dev = std::abs(c1 / c0 - std::exp(-1.0));
  const NoiseModel table = NoiseModel::from_channels(q7, 1.0 / (7 * 15e-3), 2.5, 1.0);
  const VectorXd taus = VectorXd::LinSpaced(60, 0.0, 0.15);
  const StretchedFit f = fit_stretched_exponential(taus, ramsey_envelope(q7, table, taus));
  return {dev < kDephaseTol && f.alpha < 1,
          fmt("contrast ratio at 15 ms off 1/e by %.1e (< %.0e), Ramsey stretch exponent %.3f (< 1)", dev,
              kDephaseTol, f.alpha)};
}

const std::vector<std::function<Outcome()>> kCriteria = {rabi,      magnus,  scaling, snap_cat,  parity,   efficiency,
                                                         mle,       bootstrap, catcode, wigner, dephasing};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int n = 1; n <= int(kCriteria.size()); ++n) which.push_back(n);
  int failures = 0;
  for (int n : which) {
    if (n < 1 || n > int(kCriteria.size())) {
      std::cerr << "unknown criterion " << n << "\n";
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = kCriteria[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << fmt("  [%.1f s]", secs) << std::endl;
    failures += !o.pass;
  }
  return failures;
}
