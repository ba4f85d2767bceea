// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Spin Wigner function W(theta, phi) = sqrt(2/pi) sum_kq Y_kq rho_kq with
// rho_kq = Tr(rho T_kq^dag) and orthonormal tensor operators
// <I m'|T_kq|I m> = sqrt((2k+1)/(2I+1)) <I m; k q|I m'>.
// With this normalization the integral over the sphere is sqrt(8/d) Tr rho.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinqudit/types.hpp"

namespace spinqudit {

// <j1 m1; j2 m2 | J M> with all angular momenta passed doubled.
double clebsch_gordan(int j1x2, int m1x2, int j2x2, int m2x2, int Jx2, int Mx2);

// Y_l^m with the Condon-Shortley phase.
cplx spherical_harmonic(int l, int m, double theta, double phi);

struct SphericalTensorBasis {
  SpinQuantum q;
  std::vector<MatrixXc> ops;  // index k*k + (qq + k)

  explicit SphericalTensorBasis(const SpinQuantum& q);
  static int index(int k, int qq) { return k * k + qq + k; }
  const MatrixXc& T(int k, int qq) const { return ops[index(k, qq)]; }
  int kmax() const { return q.two_I; }
};

// rho_kq ordered as SphericalTensorBasis::index
VectorXc tensor_decompose(const MatrixXc& rho, const SphericalTensorBasis& basis);
MatrixXc tensor_reconstruct(const VectorXc& coeffs, const SphericalTensorBasis& basis);

double wigner_value(const VectorXc& coeffs, const SphericalTensorBasis& basis, double theta,
                    double phi);
double wigner_value(const MatrixXc& rho, const SpinQuantum& q, double theta, double phi);

enum class Projection { None, Hammer, Polar };
Projection parse_projection(const std::string& name);
std::string to_string(Projection p);

// (x, y) of Hammer equal-area (lat = pi/2 - theta, lon = phi) or the polar
// view from the south pole (r = (pi - theta)/pi).
std::pair<double, double> project(Projection p, double theta, double phi);

struct WignerGrid {
  VectorXd thetas;  // rad, ascending in [0, pi]
  VectorXd phis;    // rad, ascending in [-pi, pi]
  MatrixXd values;  // n_theta x n_phi
  Projection projection = Projection::None;

  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  void write_csv(std::ostream& os) const;   // theta_rad,phi_rad,x_proj,y_proj,W
  std::string to_json() const;
};

WignerGrid wigner_grid(const MatrixXc& rho, const SpinQuantum& q, int n_theta = 181, int n_phi = 361,
                       Projection projection = Projection::Hammer);

// Fixed colour scale used for every map so images are comparable.
inline constexpr double kWignerColorLimit = 1.2;
std::string wigner_svg(const WignerGrid& grid, const std::string& title = "",
                       double limit = kWignerColorLimit);

}  // namespace spinqudit
