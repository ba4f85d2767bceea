// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Spin-cat code: codewords are the coherent states along -x and +x.

#pragma once

#include <string>
#include <vector>

#include "spinqudit/types.hpp"

namespace spinqudit {

struct CodePair {
  SpinQuantum q;
  VectorXc zero_L;  // |I,-I>_x, amplitudes d_{m,-I}(pi/2)
  VectorXc one_L;   // |I,+I>_x, amplitudes d_{m,+I}(pi/2)
};

struct ErrorSet {
  std::vector<std::string> labels;
  std::vector<MatrixXc> ops;

  void add(std::string label, MatrixXc op);
};

// {1, I_z, ..., I_z^max_power}
ErrorSet iz_power_errors(const SpinQuantum& q, int max_power);

CodePair codewords(const SpinQuantum& q);

struct KlReport {
  MatrixXc c;  // C_ij = <0|E_i^dag E_j|0>
  double max_offdiag_violation = 0;  // max |<0|E_i^dag E_j|1>|
  double max_diag_mismatch = 0;      // max |<0|..|0> - <1|..|1>|
  bool pass = false;
};

KlReport kl_check(const CodePair& code, const ErrorSet& errors, double tol = 1e-10);

enum class LogicalKind { X, Z };
// X = exp(-i pi I_z), Z = exp(-i pi I_x)
MatrixXc logical_gate(const SpinQuantum& q, LogicalKind kind);

struct BiasResult {
  cplx c;           // least-squares scalar in U E U^dag ~ c E
  double residual;  // |U E U^dag - c E|_F / |E|_F
};
BiasResult bias_preservation_check(const MatrixXc& u, const MatrixXc& e);

// |0_L><0_L| + |1_L><1_L|
MatrixXc codespace_projector(const CodePair& code);

}  // namespace spinqudit
