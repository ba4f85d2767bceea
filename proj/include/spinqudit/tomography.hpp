// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Projective spin tomography: each axis n yields the d eigenprojectors of
// I.n, ordered by descending eigenvalue.

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "spinqudit/types.hpp"

namespace spinqudit {

struct Axis {
  double theta = 0;  // rad
  double phi = 0;    // rad
};

struct ExperimentDesign {
  std::vector<Axis> axes;
  int shots_per_axis = 15;

  int n_axes() const { return static_cast<int>(axes.size()); }
  void validate() const;
};

struct ShotRecord {
  Eigen::MatrixXi counts;  // n_axes x d
  std::uint64_t seed = 0;

  int total() const { return counts.sum(); }
};

struct MleResult {
  MatrixXc rho;
  double loglik = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // loglik after each accepted step, if requested
};

struct MleOptions {
  double tol = 1e-10;  // stop when a step gains less than tol per shot in loglik
  int max_iter = 5000;
  double prob_floor = 1e-12;
  bool keep_trace = false;
};

struct ValidationReport {
  double lambda_observed = 0;
  std::vector<double> null_samples;
  double p_value = 0;
  int dof_nominal = 0;
  int excluded = 0;  // bootstrap samples whose MLE did not converge
};

struct BootstrapOptions {
  int n_samples = 1000;
  std::uint64_t seed = 1;
  MleOptions mle{};
};

// Columns are eigenvectors of I.n with eigenvalues I, I-1, ..., -I.
MatrixXc axis_eigenbasis(const SpinQuantum& q, double theta, double phi);
std::vector<MatrixXc> axis_effects(const SpinQuantum& q, double theta, double phi);

// theta in {pi/4, pi/3, 9pi/20} x phi_n = 2 pi n / 15, theta-major, 15 shots.
ExperimentDesign paper_design(const SpinQuantum& q);
ExperimentDesign uniform_random_design(int n_axes, std::uint64_t seed, int shots_per_axis = 15);
// Rigidly rotates every axis by R_z(alpha) R_y(beta) R_z(gamma).
ExperimentDesign rotate_design(const ExperimentDesign& design, double alpha, double beta, double gamma);

// F[X] = (1/N) sum_j E_j Tr(E_j X) over all N = n_axes * d effects, as a
// d^2 x d^2 matrix on column-stacked operators.
MatrixXc frame_superoperator(const ExperimentDesign& design, const SpinQuantum& q);

struct Efficiency {
  double f_te = std::numeric_limits<double>::infinity();  // sqrt(Tr F^-1), +inf if singular
  int rank = 0;
};
Efficiency tomographic_efficiency(const MatrixXc& frame, double rank_tol = 1e-10);
// Closed form for any projective 2-design: sqrt(d + d(d+1)(d^2-1)).
double two_design_efficiency(const SpinQuantum& q);

// Born probabilities, n_axes x d
MatrixXd outcome_probabilities(const MatrixXc& rho, const ExperimentDesign& design, const SpinQuantum& q);

ShotRecord simulate_shots(const MatrixXc& rho, const ExperimentDesign& design, const SpinQuantum& q,
                          std::uint64_t seed);

double log_likelihood(const ShotRecord& record, const MatrixXc& rho, const ExperimentDesign& design,
                      const SpinQuantum& q, double prob_floor = 1e-12);

MleResult mle_reconstruct(const ShotRecord& record, const ExperimentDesign& design, const SpinQuantum& q,
                          const MleOptions& opts = {});

// -2 (log L(rho) - log L_saturated), saturated = per-axis empirical frequencies
double loglik_ratio(const ShotRecord& record, const MatrixXc& rho, const ExperimentDesign& design,
                    const SpinQuantum& q, double prob_floor = 1e-12);

inline int dof_nominal(int n_axes, int d) { return n_axes * (d - 1) - (d * d - 1); }

// Null distribution of lambda from data simulated under rho_mle and refitted.
ValidationReport parametric_bootstrap(const ShotRecord& observed, const MatrixXc& rho_mle,
                                      const ExperimentDesign& design, const SpinQuantum& q,
                                      const BootstrapOptions& opts = {});

// (p_+ + p_-)/2 + (C/2) cos(delta_xi)
double reduced_parity_fidelity(double p_plus, double p_minus, double parity_contrast, double delta_xi);
// Cat phase xi implied by the fitted phase of a z-cat parity fringe.
double cat_phase_from_parity(const SpinQuantum& q, double fitted_phase);

}  // namespace spinqudit
