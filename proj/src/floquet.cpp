// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/floquet.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include "spinqudit/parallel.hpp"
#include "spinqudit/spincore.hpp"

namespace spinqudit {

void CrossCouplingParams::validate() const {
  if (f_q == 0 || !std::isfinite(f_q)) throw SpinError("cross coupling: f_q must be nonzero");
  if (!(f_rabi > 0)) throw SpinError("cross coupling: f_rabi must be positive");
}

MatrixXc cross_coupling_hamiltonian(const CrossCouplingParams& p, double t) {
  p.validate();
  const int d = p.q.d(), nt = p.q.two_I;
  const VectorXd c = ladder_coefficients(p.q);
  const double w = kTwoPi * p.f_q;
  cplx zeta = 0;
  for (int n = 0; n < nt; ++n) zeta += std::polar(1.0, n * w * t);
  MatrixXc h = MatrixXc::Zero(d, d);
  for (int j = 0; j < nt; ++j) {
    h(j, j + 1) = -0.5 * p.f_rabi * c(j) * std::polar(1.0, -j * w * t) * zeta;
    h(j + 1, j) = std::conj(h(j, j + 1));
  }
  return h;
}

std::vector<MatrixXc> cross_coupling_fourier(const CrossCouplingParams& p) {
  p.validate();
  const int d = p.q.d(), nt = p.q.two_I;
  const VectorXd c = ladder_coefficients(p.q);
  std::vector<MatrixXc> hn(2 * nt - 1, MatrixXc::Zero(d, d));
  // upper (j, j+1) carries e^{i(n' - j) w t}, n' = 0..nt-1; lower is its conjugate
  for (int j = 0; j < nt; ++j)
    for (int np = 0; np < nt; ++np) {
      const int n = np - j;
      hn[n + nt - 1](j, j + 1) += -0.5 * p.f_rabi * c(j);
      hn[-n + nt - 1](j + 1, j) += -0.5 * p.f_rabi * c(j);
    }
  return hn;
}

AverageHamiltonian average_hamiltonian(const CrossCouplingParams& p) {
  const auto hn = cross_coupling_fourier(p);
  const int nmax = p.q.two_I - 1;
  auto H = [&](int n) -> const MatrixXc& { return hn[n + nmax]; };
  AverageHamiltonian out;
  out.order0 = H(0);
  MatrixXc s = MatrixXc::Zero(p.q.d(), p.q.d());
  for (int n = 1; n <= nmax; ++n) {
    s += (H(n) * H(-n) - H(-n) * H(n)) / double(n);
    s += (H(0) * H(n) - H(n) * H(0)) / double(n);
    s -= (H(0) * H(-n) - H(-n) * H(0)) / double(n);
  }
  out.order1 = s / p.f_q;
  return out;
}

MatrixXd printed_first_order_matrix() {
  MatrixXd m = MatrixXd::Zero(8, 8);
  const double diag[4] = {-343.0 / 20, 7.0 / 4, 133.0 / 20, 35.0 / 4};
  const double off[3] = {-std::sqrt(7.0 / 3), -6 / std::sqrt(5.0), -std::sqrt(15.0)};
  for (int k = 0; k < 4; ++k) m(k, k) = m(7 - k, 7 - k) = diag[k];
  for (int k = 0; k < 3; ++k) {
    m(k, k + 2) = m(k + 2, k) = off[k];
    m(7 - k, 5 - k) = m(5 - k, 7 - k) = off[k];
  }
  return m;
}

std::string to_string(SweepMethod m) { return m == SweepMethod::Exact ? "exact" : "magnus1"; }

SweepMethod parse_sweep_method(const std::string& s) {
  if (s == "exact") return SweepMethod::Exact;
  if (s == "magnus1") return SweepMethod::Magnus1;
  throw SpinError("unknown sweep method '" + s + "' (expected exact, magnus1)");
}

namespace {

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a), f2 = f(x2);
    } else {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a), f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

double peak_contrast(const CrossCouplingParams& p, SweepMethod method, const SweepOptions& opts) {
  p.validate();
  namespace ode = boost::numeric::odeint;
  using State = Eigen::VectorXd;
  const SpinQuantum& q = p.q;
  const int d = q.d();
  const VectorXd mz = spin_operators(q).iz.diagonal().real();
  const int n = static_cast<int>(std::lround(opts.rabi_periods * opts.samples_per_period));
  const double t_end = opts.rabi_periods / p.f_rabi;
  const double dt = t_end / n;
  auto iz_of = [&](const VectorXc& v) { return mz.dot(v.cwiseAbs2()) / q.I(); };
  VectorXc psi0 = VectorXc::Zero(d);
  psi0(d - 1) = 1;

  if (method == SweepMethod::Magnus1) {
    const auto ah = average_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(ah.order0 + ah.order1);
    const VectorXc c0 = es.eigenvectors().adjoint() * psi0;
    auto at = [&](double t) {
      const VectorXc ph = (-kI * kTwoPi * t * es.eigenvalues().cast<cplx>()).array().exp();
      return iz_of(es.eigenvectors() * ph.cwiseProduct(c0));
    };
    int best = 0;
    double vbest = -2;
    for (int i = 0; i <= n; ++i)
      if (const double v = at(i * dt); v > vbest) vbest = v, best = i;
    if (!opts.refine_peak) return vbest;
    return std::max(vbest, golden_max(at, std::max(0, best - 1) * dt, std::min(n, best + 1) * dt));
  }

  // Exact: Schrodinger equation on the real 2d representation.
  MatrixXc h(d, d);
  auto rhs = [&](const State& y, State& dy, double t) {
    h = cross_coupling_hamiltonian(p, t);
    VectorXc v(d);
    v.real() = y.head(d);
    v.imag() = y.tail(d);
    const VectorXc hv = h * v;
    dy.resize(2 * d);
    dy.head(d) = kTwoPi * hv.imag();
    dy.tail(d) = -kTwoPi * hv.real();
  };
  auto to_c = [d](const State& y) {
    VectorXc v(d);
    v.real() = y.head(d);
    v.imag() = y.tail(d);
    return v;
  };
  using Stepper = ode::runge_kutta_dopri5<State, double, State, double, ode::vector_space_algebra>;
  const double h0 = 0.01 / (std::abs(p.f_q) * q.two_I);
  State y = State::Zero(2 * d);
  y(d - 1) = 1;
  std::vector<State> grid;
  grid.reserve(n + 1);
  std::vector<double> times(n + 1);
  for (int i = 0; i <= n; ++i) times[i] = i * dt;
  try {
    ode::integrate_times(ode::make_dense_output(opts.tol, opts.tol, Stepper()), rhs, y, times.begin(),
                         times.end(), h0, [&](const State& s, double) { grid.push_back(s); });
  } catch (const std::exception& e) {
    throw NumericalError(std::string("peak_contrast: integration failed: ") + e.what());
  }
  if (static_cast<int>(grid.size()) != n + 1) throw NumericalError("peak_contrast: integration stopped early");
  int best = 0;
  double vbest = -2;
  for (int i = 0; i <= n; ++i)
    if (const double v = iz_of(to_c(grid[i])); v > vbest) vbest = v, best = i;
  if (!opts.refine_peak) return vbest;
  const int lo = std::max(0, best - 1), hi = std::min(n, best + 1);
  auto at = [&](double t) {
    State s = grid[lo];
    if (t > times[lo])
      ode::integrate_adaptive(ode::make_controlled(opts.tol, opts.tol, Stepper()), rhs, s, times[lo], t,
                              std::min(h0, t - times[lo]));
    return iz_of(to_c(s));
  };
  return std::max(vbest, golden_max(at, times[lo], times[hi]));
}

SweepResult contrast_sweep(const std::vector<double>& ratios, SweepMethod method, const SweepOptions& opts,
                           const SpinQuantum& q) {
  SweepResult r;
  r.method = method;
  r.ratios = ratios;
  r.contrast.assign(ratios.size(), std::nan(""));
  r.flagged.assign(ratios.size(), 0);
  for (double x : ratios)
    if (!(x > 0)) throw SpinError("contrast_sweep: ratios must be positive");
  parallel_for(ratios.size(), [&](std::size_t i) {
    try {
      r.contrast[i] = peak_contrast(CrossCouplingParams{ratios[i], 1.0, q}, method, opts);
    } catch (const NumericalError&) {
      r.flagged[i] = 1;
    }
  });
  return r;
}

void SweepResult::write_csv(std::ostream& os) const {
  os << "ratio_frabi_over_fq,contrast_max_iz_over_I,method,flagged\n" << std::setprecision(15);
  for (std::size_t i = 0; i < ratios.size(); ++i)
    os << ratios[i] << ',' << contrast[i] << ',' << to_string(method) << ',' << int(flagged[i]) << '\n';
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, double exclude_lo,
                          double exclude_hi) {
  if (x.size() != y.size()) throw SpinError("fit_power_law: size mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) continue;
    if (x[i] >= exclude_lo && x[i] <= exclude_hi) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++n;
  }
  if (n < 2) throw NumericalError("fit_power_law: fewer than two usable points");
  PowerLawFit f;
  f.points = n;
  f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.prefactor = std::exp((sy - f.exponent * sx) / n);
  return f;
}

}  // namespace spinqudit
