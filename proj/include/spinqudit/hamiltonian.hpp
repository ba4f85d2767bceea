// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Static and driven Hamiltonians, all in Hz.
//
// Transition numbering. A tone's `transition` k in 1..2I couples matrix
// indices (k-1, k), i.e. levels m = I-k+1 and m = I-k. Frames and pulse
// schedules use this matrix order. nmr_frequencies() instead reports the
// conventional spectroscopic order, f_1 = (-I <-> -I+1) ... f_2I = (I-1 <-> I);
// transition_frequencies() gives the same numbers in matrix order.

#pragma once

#include <functional>
#include <vector>

#include "spinqudit/spincore.hpp"
#include "spinqudit/types.hpp"

namespace spinqudit {

struct StaticParams {
  double b0 = 1.384;         // T
  double gamma_n = 5.55e6;   // Hz/T
  Eigen::Matrix3d quad = Eigen::Matrix3d::Zero();  // Hz

  // Diagonal quadrupole tensor giving f_{k+1} - f_k = f_q in nmr_frequencies().
  static StaticParams with_fq(double b0, double gamma_n, double f_q);
  double larmor() const { return gamma_n * b0; }
  void validate() const;
};

struct DriveTone {
  double f = 0.0;      // Hz, carrier
  double phase = 0.0;  // rad
  double b1 = 0.0;     // T
  int transition = 1;  // matrix-order transition index, 1..2I
};

// Generalized rotating frame: one software clock per transition.
struct FrameDefinition {
  VectorXd ref_freqs;           // Hz, matrix order
  VectorXd accumulated_phases;  // rad, running sum of frame updates per transition
  VectorXd detunings;           // Hz, f_ref - f_0 per transition
  double reference_energy = 0;  // Hz, clock of level index 0 (|+I>)

  static FrameDefinition on_resonance(const VectorXd& transition_freqs, double reference_energy = 0);
  static FrameDefinition from_static(const MatrixXc& h_static, const SpinQuantum& q);
  // f_0 + detuning per transition; f_0 is taken from `transition_freqs`.
  static FrameDefinition detuned(const VectorXd& transition_freqs, const VectorXd& detunings,
                                 double reference_energy = 0);

  int transitions() const { return static_cast<int>(ref_freqs.size()); }
  // F_0 = reference_energy, F_k = F_{k-1} + f_k^ref
  VectorXd level_clocks() const;
  // xi_k = -sum_{i<=k} accumulated_phases_i, xi_0 = 0
  VectorXd level_phases() const;
  void check(const SpinQuantum& q) const;
};

MatrixXc static_hamiltonian(const StaticParams& p, const SpinQuantum& q);

// Spectroscopic order f_1 (-I <-> -I+1) ... f_2I. Throws NumericalError when the
// eigenbasis is not close to the I_z basis (mixing above dominance_tol).
VectorXd nmr_frequencies(const MatrixXc& h_static, const SpinQuantum& q, double dominance_tol = 1e-3);
VectorXd transition_frequencies(const MatrixXc& h_static, const SpinQuantum& q,
                                double dominance_tol = 1e-3);

// -gamma_n I_x sum_k B_k cos(2 pi f_k t + phi_k)
MatrixXc lab_drive_hamiltonian(double t, const std::vector<DriveTone>& tones, const SpinQuantum& q,
                               double gamma_n);

// RWA Hamiltonian in the frame: entry (k-1,k) = -(gamma_n/4) c_k B_k e^{i phi_k};
// diagonal = level energy minus level clock = -cumsum(detunings).
MatrixXc grf_drive_hamiltonian(const std::vector<DriveTone>& tones, const FrameDefinition& frame,
                               const SpinQuantum& q, double gamma_n);

// U^dag H U - (i/2pi) U^dag dU/dt with U = diag(exp(-i(2 pi F_k t + xi_k))).
MatrixXc grf_transform(const std::function<MatrixXc(double)>& h_lab, const FrameDefinition& frame,
                       double t);
// Same transform for an already evaluated lab Hamiltonian.
MatrixXc grf_transform(const MatrixXc& h_lab, const FrameDefinition& frame, double t);

// Amplitude giving a single-transition Rabi frequency f_rabi on transition k
// (populations oscillate as sin^2(pi f_rabi t)).
double transition_b1(const SpinQuantum& q, int k, double f_rabi, double gamma_n);
// Common amplitude of 2I equal tones giving covariant Rabi frequency f_rabi.
inline double covariant_b1(double f_rabi, double gamma_n) { return 2.0 * f_rabi / gamma_n; }

}  // namespace spinqudit
