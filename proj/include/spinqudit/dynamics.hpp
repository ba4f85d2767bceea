// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "spinqudit/hamiltonian.hpp"
#include "spinqudit/spincore.hpp"

namespace spinqudit {

struct PulseSegment {
  double duration = 0;  // s
  std::vector<DriveTone> tones;
};
struct FrameUpdate {
  VectorXd delta_phi;  // rad, one entry per transition (matrix order)
};
struct WaitSegment {
  double duration = 0;  // s
};
using Segment = std::variant<PulseSegment, FrameUpdate, WaitSegment>;

struct PulseSchedule {
  std::vector<Segment> segments;

  PulseSchedule& pulse(double duration, std::vector<DriveTone> tones);
  PulseSchedule& frame_update(VectorXd delta_phi);
  PulseSchedule& wait(double duration);
  PulseSchedule& append(const PulseSchedule& other);
  double duration() const;
  void validate(const SpinQuantum& q) const;
};

// Per-coherence dephasing: rho_{ab} -> rho_{ab} exp(-(tau/T2_{ab})^alpha).
struct NoiseModel {
  MatrixXd t2;  // s, symmetric; diagonal ignored; +inf disables a coherence
  double alpha = 1.0;
  double readout_flip = 0.0;  // probability of reporting a uniformly random other level

  static NoiseModel uniform(const SpinQuantum& q, double t2, double alpha = 1.0);
  // Independent Zeeman-like (rate ~ |m - m'|) and quadrupole-like
  // (rate ~ |m^2 - m'^2|) frequency noise. The resulting kernel is positive
  // definite for 0 < alpha <= 2, so the channel is completely positive.
  static NoiseModel from_channels(const SpinQuantum& q, double zeeman_rate, double quad_rate,
                                  double alpha = 1.0);
  void validate(const SpinQuantum& q) const;
};

struct EvolutionResult {
  std::vector<double> times;    // s
  std::vector<VectorXc> states;  // in the generalized rotating frame
  MatrixXd populations;          // d x N
  VectorXd iz_expect;            // N
  FrameDefinition final_frame;
};

struct LabOptions {
  double tol = 1e-10;
  int samples_per_segment = 1;
  double min_step = 1e-16;  // s; smaller steps raise NumericalError
};

// R_theta(phi) = exp(i theta (I_x cos phi + I_y sin phi))
MatrixXc covariant_rotation(const SpinQuantum& q, double theta, double phi);

// 2I equal tones implementing R_theta(phi) for t = theta / (2 pi f_rabi).
// The RWA Hamiltonian of tone phase p is -f_rabi (I_x cos p - I_y sin p),
// so the tones carry phase -phi.
std::vector<DriveTone> covariant_tones(const SpinQuantum& q, const FrameDefinition& frame,
                                       double f_rabi, double phi, double gamma_n);
PulseSegment covariant_pulse(const SpinQuantum& q, const FrameDefinition& frame, double f_rabi,
                             double theta, double phi, double gamma_n);

EvolutionResult evolve_grf(const VectorXc& psi, const PulseSchedule& schedule,
                           const FrameDefinition& frame, const SpinQuantum& q, double gamma_n,
                           int samples_per_segment = 1);

EvolutionResult evolve_lab(const VectorXc& psi, const PulseSchedule& schedule,
                           const FrameDefinition& frame, const StaticParams& p,
                           const SpinQuantum& q, const LabOptions& opts = {});

// Per-tone amplitudes for a covariant rotation of the centred sub-spin
// sub_two_I/2. Entries outside the subspace are zero; the sum of amplitudes
// equals total_b1_budget.
VectorXd subspace_rotation_amplitudes(const SpinQuantum& q, int sub_two_I, double total_b1_budget);
// Amplitudes giving sub-spin Rabi frequency f_rabi.
VectorXd subspace_rabi_amplitudes(const SpinQuantum& q, int sub_two_I, double f_rabi, double gamma_n);
PulseSegment subspace_pulse(const SpinQuantum& q, const FrameDefinition& frame, int sub_two_I,
                            double f_rabi, double theta, double phi, double gamma_n);
// 1 - population on levels with |m| <= sub_two_I/2
double leakage(const VectorXc& psi, const SpinQuantum& q, int sub_two_I);

// xi_0 = 0, xi_k = -sum_{i<=k} delta_phi_i
VectorXd snap_phases(const VectorXd& delta_phi);
std::pair<FrameDefinition, MatrixXc> virtual_snap(const FrameDefinition& frame,
                                                  const VectorXd& delta_phi);
// The alternating (-pi/2, +pi/2, ...) update that turns an equatorial
// coherent state into an x-oriented cat.
VectorXd alternating_snap_update(const SpinQuantum& q);

// pi/2 on the lowest transition of the sub-spin, then ascending pi pulses.
// The final pulse phase is chosen so |-I_sub> -> (|I_sub> + e^{i xi}|-I_sub>)/sqrt2.
PulseSchedule givens_cat_sequence(const SpinQuantum& q, int sub_two_I, double f_rabi,
                                  const FrameDefinition& frame, double gamma_n, double xi = kPi);

enum class CatOrientation { X, Z };
// CR pi/2 from |-I> to the -x coherent state, alternating frame update, and
// for Z a second CR pi/2 about +y.
PulseSchedule snap_cat_sequence(const SpinQuantum& q, double f_rabi, CatOrientation orient,
                                const FrameDefinition& frame, double gamma_n);

// (|+I> + e^{i xi}|-I>)/sqrt2 restricted to the sub-spin levels
VectorXc z_cat(const SpinQuantum& q, double xi, int sub_two_I = -1);

// R_{pi/2}(0) exp(-i I_z^2 pi/2) R_{pi/2}(-pi/2)
MatrixXc one_axis_twisting(const SpinQuantum& q);

// min over diagonal phase matrices L, R of max|A - L B R| (entries of B with
// modulus < 1e-9 fix no phase). Returns the residual max-abs deviation.
double diagonal_phase_distance(const MatrixXc& a, const MatrixXc& b);

MatrixXc apply_dephasing(const MatrixXc& rho, double tau, const NoiseModel& noise);

struct ParityResult {
  double contrast = 0;  // fitted amplitude of the harmonic
  double phase = 0;     // rad, <Pi>(phi) ~ offset + contrast cos(h phi - phase)
  double offset = 0;
  int harmonic = 0;
  double residual = 0;  // rms fit residual
  bool flagged = false;
  VectorXd phis;
  VectorXd samples;
};

// <Pi> after R_{pi/2}(phi) on a uniform phi grid, least-squares fit at the
// given harmonic (0 selects 2I).
ParityResult simulate_parity_oscillation(const MatrixXc& rho, const SpinQuantum& q, int n_phi,
                                         int harmonic = 0, double flag_threshold = 1e-6);
ParityResult simulate_parity_oscillation(const VectorXc& psi, const SpinQuantum& q, int n_phi,
                                         int harmonic = 0, double flag_threshold = 1e-6);

// Index of the largest DFT magnitude over harmonics 1..n/2 of uniformly sampled data.
int dominant_harmonic(const VectorXd& samples);

// Ramsey envelope: CR pi/2 to the equator, dephase for tau, return the
// transverse spin length |<I_perp>|/I (the fringe amplitude).
VectorXd ramsey_envelope(const SpinQuantum& q, const NoiseModel& noise, const VectorXd& taus);

struct StretchedFit {
  double t2 = 0;     // s
  double alpha = 0;  // stretch exponent
  double amplitude = 1;
};
// Least-squares fit of y = A exp(-(tau/T2)^alpha) on log(-log(y/A)) with A = y(0)
// when tau(0) == 0, else A = 1.
StretchedFit fit_stretched_exponential(const VectorXd& taus, const VectorXd& values);

// Populations with readout_flip misassignment applied.
VectorXd apply_readout_flip(const VectorXd& populations, double p_flip);

}  // namespace spinqudit
