// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinqudit {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// double-precision aliases used by the non-templated modules
using cplx = std::complex<double>;
using VectorXc = CVector<double>;
using MatrixXc = CMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Raised for bad arguments: wrong dimensions, invalid spin, malformed input.
class SpinError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a numerical procedure cannot deliver (integrator underflow,
// singular systems, probability defects).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpinQuantum {
  int two_I = 7;

  SpinQuantum() = default;
  explicit SpinQuantum(int twoI) : two_I(twoI) {
    if (twoI < 1) throw SpinError("two_I must be >= 1, got " + std::to_string(twoI));
  }
  int d() const { return two_I + 1; }
  double I() const { return 0.5 * two_I; }
  // m value of basis index k (descending order, index 0 = +I)
  double m(int k) const { return I() - k; }
  int index_of(double m) const;
  bool half_integer() const { return two_I % 2 == 1; }
  friend bool operator==(const SpinQuantum&, const SpinQuantum&) = default;
};

inline int SpinQuantum::index_of(double mval) const {
  double k = I() - mval;
  int ki = static_cast<int>(std::lround(k));
  if (std::abs(k - ki) > 1e-9 || ki < 0 || ki >= d())
    throw SpinError("m = " + std::to_string(mval) + " is not a level of spin " +
                    std::to_string(two_I) + "/2");
  return ki;
}

struct Tolerances {
  double hermitian = 1e-12;
  double unit_norm = 1e-12;
  double unit_trace = 1e-10;
  double eig_floor = -1e-10;
};

}  // namespace spinqudit
