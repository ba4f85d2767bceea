// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/wigner.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "spinqudit/parallel.hpp"
#include "spinqudit/spincore.hpp"
#include "spinqudit/svg.hpp"

namespace spinqudit {

namespace {
double fact2(int twice) {
  // argument is a doubled integer; odd values never reach here
  return detail::factorial(twice / 2);
}
}  // namespace

double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  if (m1 + m2 != M) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
  if (J < std::abs(j1 - j2) || J > j1 + j2) return 0.0;
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (J + M) % 2 || (j1 + j2 + J) % 2) return 0.0;
  const double pre =
      std::sqrt((J + 1) * fact2(J + j1 - j2) * fact2(J - j1 + j2) * fact2(j1 + j2 - J) /
                fact2(j1 + j2 + J + 2)) *
      std::sqrt(fact2(J + M) * fact2(J - M) * fact2(j1 - m1) * fact2(j1 + m1) * fact2(j2 - m2) *
                fact2(j2 + m2));
  double sum = 0;
  for (int k = 0;; k += 2) {
    const int a = j1 + j2 - J - k, b = j1 - m1 - k, c = j2 + m2 - k;
    const int e = J - j2 + m1 + k, f = J - j1 - m2 + k;
    if (a < 0 || b < 0 || c < 0) break;
    if (e < 0 || f < 0) continue;
    const double term = 1.0 / (fact2(k) * fact2(a) * fact2(b) * fact2(c) * fact2(e) * fact2(f));
    sum += ((k / 2) % 2 ? -term : term);
  }
  return pre * sum;
}

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw SpinError("spherical_harmonic: need |m| <= l");
  const int am = std::abs(m);
  const double x = std::cos(theta), s = std::sin(theta);
  // normalized associated Legendre, Condon-Shortley phase included
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int i = 1; i <= am; ++i) pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  double plm = pmm;
  if (l > am) {
    double pm1 = x * std::sqrt(2.0 * am + 3.0) * pmm;
    double pm2 = pmm;
    plm = pm1;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
      const double b = std::sqrt((double(ll - 1) * (ll - 1) - double(am) * am) /
                                 (4.0 * (ll - 1) * (ll - 1) - 1.0));
      plm = a * (x * pm1 - b * pm2);
      pm2 = pm1;
      pm1 = plm;
    }
  }
  const cplx y = plm * std::polar(1.0, am * phi);
  if (m >= 0) return y;
  return (am % 2 ? -1.0 : 1.0) * std::conj(y);
}

SphericalTensorBasis::SphericalTensorBasis(const SpinQuantum& qq) : q(qq) {
  const int d = q.d();
  const int j = q.two_I;
  ops.resize((j + 1) * (j + 1));
  for (int k = 0; k <= j; ++k) {
    const double norm = std::sqrt((2.0 * k + 1.0) / d);
    for (int qi = -k; qi <= k; ++qi) {
      MatrixXc t = MatrixXc::Zero(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          const int mr = j - 2 * r, mc = j - 2 * c;  // doubled m values
          if (mr != mc + 2 * qi) continue;
          t(r, c) = norm * clebsch_gordan(j, mc, 2 * k, 2 * qi, j, mr);
        }
      ops[index(k, qi)] = std::move(t);
    }
  }
}

VectorXc tensor_decompose(const MatrixXc& rho, const SphericalTensorBasis& basis) {
  if (rho.rows() != basis.q.d()) throw SpinError("tensor_decompose: dimension mismatch");
  VectorXc c(basis.ops.size());
  for (size_t i = 0; i < basis.ops.size(); ++i)
    c(i) = (rho * basis.ops[i].adjoint()).trace();
  return c;
}

MatrixXc tensor_reconstruct(const VectorXc& coeffs, const SphericalTensorBasis& basis) {
  const int d = basis.q.d();
  MatrixXc rho = MatrixXc::Zero(d, d);
  for (size_t i = 0; i < basis.ops.size(); ++i) rho += coeffs(i) * basis.ops[i];
  return rho;
}

double wigner_value(const VectorXc& coeffs, const SphericalTensorBasis& basis, double theta,
                    double phi) {
  cplx w = 0;
  for (int k = 0; k <= basis.kmax(); ++k)
    for (int qi = -k; qi <= k; ++qi)
      w += spherical_harmonic(k, qi, theta, phi) * coeffs(SphericalTensorBasis::index(k, qi));
  w *= std::sqrt(2.0 / kPi);
  if (std::abs(w.imag()) > 1e-10 * std::max(1.0, std::abs(w.real())))
    throw NumericalError("wigner_value: imaginary residue " + std::to_string(w.imag()) +
                         " (input not Hermitian?)");
  return w.real();
}

double wigner_value(const MatrixXc& rho, const SpinQuantum& q, double theta, double phi) {
  const SphericalTensorBasis basis(q);
  return wigner_value(tensor_decompose(rho, basis), basis, theta, phi);
}

Projection parse_projection(const std::string& name) {
  if (name == "none") return Projection::None;
  if (name == "hammer") return Projection::Hammer;
  if (name == "polar") return Projection::Polar;
  throw SpinError("unknown projection '" + name + "' (expected none, hammer, polar)");
}

std::string to_string(Projection p) {
  switch (p) {
    case Projection::Hammer: return "hammer";
    case Projection::Polar: return "polar";
    default: return "none";
  }
}

std::pair<double, double> project(Projection p, double theta, double phi) {
  switch (p) {
    case Projection::Hammer: {
      const double lat = kPi / 2 - theta;
      const double lon = std::remainder(phi, kTwoPi);
      const double den = std::sqrt(1 + std::cos(lat) * std::cos(lon / 2));
      return {2 * std::sqrt(2.0) * std::cos(lat) * std::sin(lon / 2) / den,
              std::sqrt(2.0) * std::sin(lat) / den};
    }
    case Projection::Polar: {
      const double r = (kPi - theta) / kPi;
      return {r * std::cos(phi), r * std::sin(phi)};
    }
    default: return {phi, kPi / 2 - theta};
  }
}

WignerGrid wigner_grid(const MatrixXc& rho, const SpinQuantum& q, int n_theta, int n_phi,
                       Projection projection) {
  if (n_theta < 2 || n_phi < 2) throw SpinError("wigner_grid: need at least 2 points per axis");
  const SphericalTensorBasis basis(q);
  const VectorXc coeffs = tensor_decompose(rho, basis);
  WignerGrid g;
  g.projection = projection;
  g.thetas = VectorXd::LinSpaced(n_theta, 0.0, kPi);
  g.phis = VectorXd::LinSpaced(n_phi, -kPi, kPi);
  g.values.resize(n_theta, n_phi);
  parallel_for(static_cast<size_t>(n_theta), [&](size_t i) {
    for (int j = 0; j < n_phi; ++j) g.values(i, j) = wigner_value(coeffs, basis, g.thetas(i), g.phis(j));
  });
  return g;
}

void WignerGrid::write_csv(std::ostream& os) const {
  os << "theta_rad,phi_rad,x_proj,y_proj,W\n";
  os << std::setprecision(12);
  for (Eigen::Index i = 0; i < thetas.size(); ++i)
    for (Eigen::Index j = 0; j < phis.size(); ++j) {
      const auto [x, y] = project(projection, thetas(i), phis(j));
      os << thetas(i) << ',' << phis(j) << ',' << x << ',' << y << ',' << values(i, j) << '\n';
    }
}

std::string WignerGrid::to_json() const {
  nlohmann::json j;
  j["projection"] = to_string(projection);
  j["units"] = {{"theta", "rad"}, {"phi", "rad"}, {"W", "1/sr"}};
  j["thetas"] = std::vector<double>(thetas.data(), thetas.data() + thetas.size());
  j["phis"] = std::vector<double>(phis.data(), phis.data() + phis.size());
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    std::vector<double> r(values.cols());
    for (Eigen::Index c = 0; c < values.cols(); ++c) r[c] = values(i, c);
    rows.push_back(r);
  }
  j["values"] = rows;
  return j.dump();
}

std::string wigner_svg(const WignerGrid& g, const std::string& title, double limit) {
  // at most ~90 x 180 cells keeps files small
  const int si = std::max<int>(1, static_cast<int>(g.thetas.size() / 90));
  const int sj = std::max<int>(1, static_cast<int>(g.phis.size() / 180));
  std::vector<svg::Polygon> cells;
  const Projection p = g.projection == Projection::None ? Projection::Hammer : g.projection;
  for (Eigen::Index i = 0; i + si < g.thetas.size(); i += si)
    for (Eigen::Index j = 0; j + sj < g.phis.size(); j += sj) {
      svg::Polygon poly;
      for (auto [a, b] : {std::pair{i, j}, {i, j + sj}, {i + si, j + sj}, {i + si, j}})
        poly.pts.push_back(project(p, g.thetas(a), g.phis(b)));
      poly.value = 0.25 * (g.values(i, j) + g.values(i, j + sj) + g.values(i + si, j) +
                           g.values(i + si, j + sj));
      cells.push_back(std::move(poly));
    }
  if (p == Projection::Polar) return svg::color_map(cells, -1.05, 1.05, -1.05, 1.05, limit, title);
  const double xm = 2 * std::sqrt(2.0) + 0.05, ym = std::sqrt(2.0) + 0.05;
  return svg::color_map(cells, -xm, xm, -ym, ym, limit, title);
}

}  // namespace spinqudit
