// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Cross-coupling of a covariant multi-tone drive. Every tone also drives
// the other transitions off resonance; in the frame of the transitions the
// coupling on the pair (j, j+1) is
//   -(f_rabi/2) c_j e^{-i j w t} sum_{n=0}^{2I-1} e^{i n w t},   w = 2 pi f_q,
// whose time average is -f_rabi I_x, so <I_z> oscillates at f_rabi.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinqudit/types.hpp"

namespace spinqudit {

struct CrossCouplingParams {
  double f_rabi = 163.4;  // Hz, observable covariant Rabi frequency
  double f_q = 28e3;      // Hz, spacing of adjacent transitions
  SpinQuantum q{7};

  void validate() const;
  double ratio() const { return f_rabi / f_q; }
};

MatrixXc cross_coupling_hamiltonian(const CrossCouplingParams& p, double t);

// Fourier components H_n, n = -(2I-1) .. 2I-1, of the periodic Hamiltonian;
// element n + 2I - 1 holds H_n.
std::vector<MatrixXc> cross_coupling_fourier(const CrossCouplingParams& p);

struct AverageHamiltonian {
  MatrixXc order0;  // Hz, -f_rabi I_x
  MatrixXc order1;  // Hz
};
// Zeroth and first Magnus orders over one period 1/f_q, in Hz.
AverageHamiltonian average_hamiltonian(const CrossCouplingParams& p);

// The rational/radical matrix M with order1 = first_order_scale(p) * M
// for spin 7/2. With f_drive = 2 f_rabi the scale reads f_drive^2 / (16 f_q).
MatrixXd printed_first_order_matrix();
inline double first_order_scale(const CrossCouplingParams& p) { return p.f_rabi * p.f_rabi / (4 * p.f_q); }

enum class SweepMethod { Exact, Magnus1 };
std::string to_string(SweepMethod m);
SweepMethod parse_sweep_method(const std::string& s);

struct SweepOptions {
  double rabi_periods = 8;
  int samples_per_period = 400;
  double tol = 1e-12;  // integrator abs/rel tolerance
  bool refine_peak = true;  // golden-section refinement of the grid maximum
};

struct SweepResult {
  std::vector<double> ratios;
  std::vector<double> contrast;  // max <I_z>/I starting from |-I>
  std::vector<char> flagged;     // integration failure
  SweepMethod method = SweepMethod::Exact;

  void write_csv(std::ostream& os) const;
};

double peak_contrast(const CrossCouplingParams& p, SweepMethod method, const SweepOptions& opts = {});

// Contrast per ratio with f_q = 1 Hz (the result only depends on the ratio).
SweepResult contrast_sweep(const std::vector<double>& ratios, SweepMethod method, const SweepOptions& opts = {},
                           const SpinQuantum& q = SpinQuantum{7});

struct PowerLawFit {
  double exponent = 0;
  double prefactor = 0;  // y = prefactor * x^exponent
  int points = 0;
};
// Least squares in log-log space; points with x inside [exclude_lo, exclude_hi]
// and non-positive y are skipped.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, double exclude_lo = 0.3,
                          double exclude_hi = 3.0);

}  // namespace spinqudit
