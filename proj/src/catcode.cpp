// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/catcode.hpp"

#include "spinqudit/spincore.hpp"

namespace spinqudit {

void ErrorSet::add(std::string label, MatrixXc op) {
  if (!ops.empty() && op.rows() != ops.front().rows())
    throw SpinError("error operator '" + label + "' has the wrong dimension");
  labels.push_back(std::move(label));
  ops.push_back(std::move(op));
}

ErrorSet iz_power_errors(const SpinQuantum& q, int max_power) {
  const MatrixXc iz = spin_operators(q).iz;
  ErrorSet es;
  MatrixXc p = MatrixXc::Identity(q.d(), q.d());
  es.add("1", p);
  for (int k = 1; k <= max_power; ++k) {
    p = p * iz;
    es.add(k == 1 ? "Iz" : "Iz^" + std::to_string(k), p);
  }
  return es;
}

CodePair codewords(const SpinQuantum& q) {
  if (!q.half_integer())
    throw SpinError("spin-cat codewords need half-odd-integer spin, got 2I = " + std::to_string(q.two_I));
  CodePair c{q, VectorXc(q.d()), VectorXc(q.d())};
  for (int k = 0; k < q.d(); ++k) {
    c.zero_L(k) = wigner_d(q, q.m(k), -q.I(), kPi / 2);
    c.one_L(k) = wigner_d(q, q.m(k), q.I(), kPi / 2);
  }
  return c;
}

KlReport kl_check(const CodePair& code, const ErrorSet& errors, double tol) {
  const int n = static_cast<int>(errors.ops.size());
  KlReport r;
  r.c.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const MatrixXc m = errors.ops[i].adjoint() * errors.ops[j];
      const cplx c00 = code.zero_L.dot(m * code.zero_L);
      const cplx c11 = code.one_L.dot(m * code.one_L);
      const cplx c01 = code.zero_L.dot(m * code.one_L);
      const cplx c10 = code.one_L.dot(m * code.zero_L);
      r.c(i, j) = c00;
      r.max_offdiag_violation = std::max({r.max_offdiag_violation, std::abs(c01), std::abs(c10)});
      r.max_diag_mismatch = std::max(r.max_diag_mismatch, std::abs(c00 - c11));
    }
  r.pass = r.max_offdiag_violation < tol && r.max_diag_mismatch < tol;
  return r;
}

MatrixXc logical_gate(const SpinQuantum& q, LogicalKind kind) {
  if (!q.half_integer()) throw SpinError("logical gates need half-odd-integer spin");
  const auto ops = spin_operators(q);
  return expi_hermitian<double>(kind == LogicalKind::X ? ops.iz : ops.ix, -kPi);
}

BiasResult bias_preservation_check(const MatrixXc& u, const MatrixXc& e) {
  const double ee = e.squaredNorm();
  if (!(ee > 0)) throw SpinError("bias_preservation_check: zero error operator");
  const MatrixXc conj = u * e * u.adjoint();
  const cplx c = (e.adjoint() * conj).trace() / ee;
  return {c, (conj - c * e).norm() / std::sqrt(ee)};
}

MatrixXc codespace_projector(const CodePair& code) {
  return code.zero_L * code.zero_L.adjoint() + code.one_L * code.one_L.adjoint();
}

}  // namespace spinqudit
