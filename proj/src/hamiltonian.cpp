// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/hamiltonian.hpp"

#include <set>
#include <string>

namespace spinqudit {

StaticParams StaticParams::with_fq(double b0, double gamma_n, double f_q) {
  StaticParams p;
  p.b0 = b0;
  p.gamma_n = gamma_n;
  p.quad.setZero();
  p.quad(2, 2) = -0.5 * f_q;
  return p;
}

void StaticParams::validate() const {
  if (!(b0 > 0)) throw SpinError("b0 must be positive");
  if ((quad - quad.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw SpinError("quadrupole tensor must be symmetric");
}

MatrixXc static_hamiltonian(const StaticParams& p, const SpinQuantum& q) {
  p.validate();
  const auto ops = spin_operators<double>(q);
  const MatrixXc* I[3] = {&ops.ix, &ops.iy, &ops.iz};
  MatrixXc h = -p.gamma_n * p.b0 * ops.iz;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (p.quad(a, b) != 0.0) h += p.quad(a, b) * (*I[a]) * (*I[b]);
  return h;
}

VectorXd transition_frequencies(const MatrixXc& h, const SpinQuantum& q, double dominance_tol) {
  const int d = q.d();
  if (h.rows() != d || h.cols() != d) throw SpinError("static Hamiltonian has wrong dimension");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  // Zeeman dominance: each eigenvector must sit on one |m> with the energy
  // ordering of the descending basis reversed (|+I> lowest for gamma_n B0 > 0).
  VectorXd level_energy(d);
  std::vector<bool> taken(d, false);
  for (int e = 0; e < d; ++e) {
    Eigen::Index k;
    const double w = es.eigenvectors().col(e).cwiseAbs2().maxCoeff(&k);
    if (1.0 - w > dominance_tol || taken[k])
      throw NumericalError(
          "static Hamiltonian eigenstates are mixed beyond the Zeeman-dominance tolerance; "
          "use the full eigendecomposition instead of labelled NMR lines");
    taken[k] = true;
    level_energy(k) = es.eigenvalues()(e);
  }
  VectorXd f(q.two_I);
  for (int k = 1; k <= q.two_I; ++k) f(k - 1) = level_energy(k) - level_energy(k - 1);
  return f;
}

VectorXd nmr_frequencies(const MatrixXc& h, const SpinQuantum& q, double dominance_tol) {
  return transition_frequencies(h, q, dominance_tol).reverse();
}

VectorXd FrameDefinition::level_clocks() const {
  VectorXd F(ref_freqs.size() + 1);
  F(0) = reference_energy;
  for (Eigen::Index k = 0; k < ref_freqs.size(); ++k) F(k + 1) = F(k) + ref_freqs(k);
  return F;
}

VectorXd FrameDefinition::level_phases() const {
  VectorXd xi(accumulated_phases.size() + 1);
  xi(0) = 0;
  for (Eigen::Index k = 0; k < accumulated_phases.size(); ++k) xi(k + 1) = xi(k) - accumulated_phases(k);
  return xi;
}

void FrameDefinition::check(const SpinQuantum& q) const {
  if (ref_freqs.size() != q.two_I || accumulated_phases.size() != q.two_I ||
      detunings.size() != q.two_I)
    throw SpinError("frame definition must carry 2I = " + std::to_string(q.two_I) + " entries");
}

FrameDefinition FrameDefinition::on_resonance(const VectorXd& f, double reference_energy) {
  FrameDefinition fr;
  fr.ref_freqs = f;
  fr.accumulated_phases = VectorXd::Zero(f.size());
  fr.detunings = VectorXd::Zero(f.size());
  fr.reference_energy = reference_energy;
  return fr;
}

FrameDefinition FrameDefinition::detuned(const VectorXd& f, const VectorXd& delta,
                                         double reference_energy) {
  if (f.size() != delta.size()) throw SpinError("detuning vector length mismatch");
  FrameDefinition fr = on_resonance(f + delta, reference_energy);
  fr.detunings = delta;
  return fr;
}

FrameDefinition FrameDefinition::from_static(const MatrixXc& h, const SpinQuantum& q) {
  return on_resonance(transition_frequencies(h, q), h(0, 0).real());
}

MatrixXc lab_drive_hamiltonian(double t, const std::vector<DriveTone>& tones, const SpinQuantum& q,
                               double gamma_n) {
  if (tones.empty()) throw SpinError("lab_drive_hamiltonian needs at least one tone");
  double field = 0;
  for (const auto& tone : tones) field += tone.b1 * std::cos(kTwoPi * tone.f * t + tone.phase);
  return -gamma_n * field * spin_operators<double>(q).ix;
}

MatrixXc grf_drive_hamiltonian(const std::vector<DriveTone>& tones, const FrameDefinition& frame,
                               const SpinQuantum& q, double gamma_n) {
  frame.check(q);
  const int d = q.d();
  const VectorXd c = ladder_coefficients<double>(q);
  MatrixXc h = MatrixXc::Zero(d, d);
  std::set<int> seen;
  for (const auto& tone : tones) {
    const int k = tone.transition;
    if (k < 1 || k > q.two_I) throw SpinError("tone transition index out of range: " + std::to_string(k));
    if (!seen.insert(k).second)
      throw SpinError("duplicate tone on transition " + std::to_string(k));
    if (tone.b1 < 0) throw SpinError("tone amplitude must be nonnegative");
    const cplx v = -0.25 * gamma_n * c(k - 1) * tone.b1 * std::polar(1.0, tone.phase);
    h(k - 1, k) += v;
    h(k, k - 1) += std::conj(v);
  }
  double acc = 0;
  for (int k = 1; k < d; ++k) {
    acc -= frame.detunings(k - 1);
    h(k, k) += acc;
  }
  return h;
}

MatrixXc grf_transform(const MatrixXc& h_lab, const FrameDefinition& frame, double t) {
  const VectorXd F = frame.level_clocks();
  const VectorXd xi = frame.level_phases();
  const Eigen::Index d = F.size();
  if (h_lab.rows() != d) throw SpinError("grf_transform: dimension mismatch");
  VectorXc u(d);
  for (Eigen::Index k = 0; k < d; ++k) u(k) = std::polar(1.0, -(kTwoPi * F(k) * t + xi(k)));
  MatrixXc out = u.conjugate().asDiagonal() * h_lab * u.asDiagonal();
  out.diagonal() -= F.cast<cplx>();
  return out;
}

MatrixXc grf_transform(const std::function<MatrixXc(double)>& h_lab, const FrameDefinition& frame,
                       double t) {
  return grf_transform(h_lab(t), frame, t);
}

double transition_b1(const SpinQuantum& q, int k, double f_rabi, double gamma_n) {
  if (k < 1 || k > q.two_I) throw SpinError("transition index out of range");
  return 2.0 * f_rabi / (gamma_n * ladder_coefficients<double>(q)(k - 1));
}

}  // namespace spinqudit
