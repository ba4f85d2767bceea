// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Spin-I algebra in the descending-m basis: index 0 is |m=+I>, index d-1 is
// |m=-I>. All functions are templated on the real scalar type and return
// plain Eigen objects.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinqudit/types.hpp"

namespace spinqudit {

template <typename Scalar>
struct SpinOperators {
  CMatrix<Scalar> ix, iy, iz;
  CMatrix<Scalar> ip;  // raising operator I+
};

// c_k = sqrt(I(I+1) - m(m+1)) for the pair (index k-1, index k), k = 1..2I.
template <typename Scalar = double>
RVector<Scalar> ladder_coefficients(const SpinQuantum& q) {
  const Scalar I = Scalar(q.two_I) / 2;
  RVector<Scalar> c(q.two_I);
  for (int k = 1; k <= q.two_I; ++k) {
    const Scalar m = I - k;  // lower level of the pair
    c(k - 1) = std::sqrt(I * (I + 1) - m * (m + 1));
  }
  return c;
}

template <typename Scalar = double>
SpinOperators<Scalar> spin_operators(const SpinQuantum& q) {
  using C = Complex<Scalar>;
  const int d = q.d();
  const auto c = ladder_coefficients<Scalar>(q);
  SpinOperators<Scalar> ops;
  ops.ip = CMatrix<Scalar>::Zero(d, d);
  for (int k = 1; k < d; ++k) ops.ip(k - 1, k) = c(k - 1);
  const CMatrix<Scalar> im = ops.ip.adjoint();
  ops.ix = (ops.ip + im) / Scalar(2);
  ops.iy = (ops.ip - im) * C(0, Scalar(-0.5));
  ops.iz = CMatrix<Scalar>::Zero(d, d);
  for (int k = 0; k < d; ++k) ops.iz(k, k) = Scalar(q.two_I) / 2 - k;
  return ops;
}

// Diagonal (-1)^(I+m); +1 on |-I>.
template <typename Scalar = double>
CMatrix<Scalar> parity_operator(const SpinQuantum& q) {
  const int d = q.d();
  CMatrix<Scalar> p = CMatrix<Scalar>::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const int i_plus_m = q.two_I - k;  // I + m for index k
    p(k, k) = (i_plus_m % 2 == 0) ? Scalar(1) : Scalar(-1);
  }
  return p;
}

namespace detail {
inline double factorial(int n) {
  static const auto table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 170) throw SpinError("factorial argument out of table range");
  return table[n];
}
}  // namespace detail

// d^I_{m',m}(beta) = <I m'| exp(-i beta I_y) |I m>, explicit Wigner sum.
template <typename Scalar = double>
Scalar wigner_d(const SpinQuantum& q, double m_row, double m_col, Scalar beta) {
  if (q.two_I > 20) throw SpinError("wigner_d supports 2I <= 20");
  const int j2 = q.two_I;
  const int mp2 = static_cast<int>(std::lround(2 * m_row));
  const int m2 = static_cast<int>(std::lround(2 * m_col));
  if (std::abs(mp2) > j2 || std::abs(m2) > j2 || (j2 - mp2) % 2 || (j2 - m2) % 2)
    throw SpinError("wigner_d: |m| must not exceed I");
  const int jpm = (j2 + m2) / 2, jmm = (j2 - m2) / 2;
  const int jpmp = (j2 + mp2) / 2, jmmp = (j2 - mp2) / 2;
  const int mpm = (mp2 - m2) / 2;  // m' - m
  const Scalar cb = std::cos(beta / 2), sb = std::sin(beta / 2);
  const Scalar pref = std::sqrt(Scalar(detail::factorial(jpmp) * detail::factorial(jmmp) *
                                       detail::factorial(jpm) * detail::factorial(jmm)));
  Scalar sum = 0;
  const int smin = std::max(0, -mpm);
  const int smax = std::min(jpm, jmmp);
  for (int s = smin; s <= smax; ++s) {
    const Scalar denom = Scalar(detail::factorial(jpm - s) * detail::factorial(s) *
                                detail::factorial(mpm + s) * detail::factorial(jmmp - s));
    const Scalar sign = ((mpm + s) % 2 == 0) ? Scalar(1) : Scalar(-1);
    sum += sign / denom * std::pow(cb, j2 - 2 * s - mpm) * std::pow(sb, mpm + 2 * s);
  }
  return pref * sum;
}

template <typename Scalar = double>
RMatrix<Scalar> wigner_d_matrix(const SpinQuantum& q, Scalar beta) {
  const int d = q.d();
  RMatrix<Scalar> D(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) D(r, c) = wigner_d<Scalar>(q, q.m(r), q.m(c), beta);
  return D;
}

// exp(-i theta (I . n)) |+I> with n = (-sin phi, cos phi, 0); the Bloch vector
// of the result points along (sin theta cos phi, sin theta sin phi, cos theta).
template <typename Scalar = double>
CVector<Scalar> spin_coherent_state(const SpinQuantum& q, Scalar theta, Scalar phi) {
  const int d = q.d();
  CVector<Scalar> a(d);
  const Scalar I = Scalar(q.two_I) / 2;
  for (int k = 0; k < d; ++k) {
    const Scalar m = I - k;
    a(k) = wigner_d<Scalar>(q, double(m), double(I), theta) * std::polar(Scalar(1), (I - m) * phi);
  }
  return a;
}

template <typename Scalar = double>
CVector<Scalar> basis_state(const SpinQuantum& q, double m) {
  CVector<Scalar> v = CVector<Scalar>::Zero(q.d());
  v(q.index_of(m)) = Scalar(1);
  return v;
}

// Unitary exp(-i 2 pi H t) for Hermitian H given in Hz.
template <typename Scalar = double>
CMatrix<Scalar> propagator(const CMatrix<Scalar>& h, Scalar t) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(h);
  const Scalar w = -2 * Scalar(kPi) * t;
  CVector<Scalar> ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) ph(i) = std::polar(Scalar(1), w * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(i a A) for Hermitian generator A.
template <typename Scalar = double>
CMatrix<Scalar> expi_hermitian(const CMatrix<Scalar>& a, Scalar angle) {
  return propagator<Scalar>(a, -angle / (2 * Scalar(kPi)));
}

template <typename Scalar = double>
CMatrix<Scalar> projector(const CVector<Scalar>& psi) {
  return psi * psi.adjoint();
}

template <typename Scalar = double>
Scalar expectation(const CMatrix<Scalar>& op, const CVector<Scalar>& psi) {
  return (psi.adjoint() * op * psi)(0, 0).real();
}

template <typename Scalar = double>
Scalar expectation(const CMatrix<Scalar>& op, const CMatrix<Scalar>& rho) {
  return (op * rho).trace().real();
}

// <psi|rho|psi>, clipped into [0,1] when within 1e-12 of the range.
template <typename Scalar = double>
Scalar fidelity(const CMatrix<Scalar>& rho, const CVector<Scalar>& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size())
    throw SpinError("fidelity: dimension mismatch");
  Scalar f = (psi.adjoint() * rho * psi)(0, 0).real();
  if (f < 0 && f > -1e-12) f = 0;
  if (f > 1 && f < 1 + 1e-12) f = 1;
  return f;
}

// |<a|b>|^2
template <typename Scalar = double>
Scalar state_fidelity(const CVector<Scalar>& a, const CVector<Scalar>& b) {
  if (a.size() != b.size()) throw SpinError("state_fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

template <typename Scalar = double>
CVector<Scalar> normalized_state(CVector<Scalar> v, Scalar tol = Scalar(1e-12)) {
  const Scalar n = v.norm();
  if (!(n > 0)) throw SpinError("state has zero norm");
  if (std::abs(n - 1) > tol) v /= n;
  return v;
}

// Throws unless rho is Hermitian, unit trace and positive within tolerances.
template <typename Scalar = double>
void validate_density_matrix(const CMatrix<Scalar>& rho, const Tolerances& tol = {}) {
  if (rho.rows() != rho.cols()) throw SpinError("density matrix is not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian)
    throw SpinError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex<Scalar>(1)) > tol.unit_trace)
    throw SpinError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol.eig_floor)
    throw SpinError("density matrix has a negative eigenvalue");
}

// Dicke embedding of |I,m> into 2I qubits: equal superposition over all
// bit strings with I-m ones (bit b of the index is qubit b).
inline int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

template <typename Scalar = double>
CVector<Scalar> dicke_embed(const SpinQuantum& q, double m, int cap = 10) {
  if (q.two_I > cap)
    throw SpinError("dicke_embed: 2I = " + std::to_string(q.two_I) + " exceeds cap " +
                    std::to_string(cap));
  const int n = q.two_I;
  const int exc = q.index_of(m);  // I - m
  CVector<Scalar> v = CVector<Scalar>::Zero(Eigen::Index(1) << n);
  const Scalar amp = Scalar(1) / std::sqrt(Scalar(binomial(n, exc)));
  for (Eigen::Index s = 0; s < v.size(); ++s)
    if (std::popcount(static_cast<unsigned long long>(s)) == exc) v(s) = amp;
  return v;
}

template <typename Scalar = double>
CVector<Scalar> dicke_embed(const SpinQuantum& q, const CVector<Scalar>& psi, int cap = 10) {
  if (psi.size() != q.d()) throw SpinError("dicke_embed: state dimension mismatch");
  CVector<Scalar> out = CVector<Scalar>::Zero(Eigen::Index(1) << q.two_I);
  for (int k = 0; k < q.d(); ++k)
    if (psi(k) != Complex<Scalar>(0)) out += psi(k) * dicke_embed<Scalar>(q, q.m(k), cap);
  return out;
}

}  // namespace spinqudit
