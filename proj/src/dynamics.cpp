// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/dynamics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

namespace spinqudit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void record(EvolutionResult& out, double t, const VectorXc& psi) {
  out.times.push_back(t);
  out.states.push_back(psi);
}

void finish(EvolutionResult& out, const SpinQuantum& q) {
  const int d = q.d();
  const auto n = static_cast<Eigen::Index>(out.states.size());
  out.populations.resize(d, n);
  out.iz_expect.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.populations.col(j) = out.states[j].cwiseAbs2();
    double iz = 0;
    for (int k = 0; k < d; ++k) iz += q.m(k) * out.populations(k, j);
    out.iz_expect(j) = iz;
  }
}

}  // namespace

PulseSchedule& PulseSchedule::pulse(double duration, std::vector<DriveTone> tones) {
  segments.emplace_back(PulseSegment{duration, std::move(tones)});
  return *this;
}
PulseSchedule& PulseSchedule::frame_update(VectorXd delta_phi) {
  segments.emplace_back(FrameUpdate{std::move(delta_phi)});
  return *this;
}
PulseSchedule& PulseSchedule::wait(double duration) {
  segments.emplace_back(WaitSegment{duration});
  return *this;
}
PulseSchedule& PulseSchedule::append(const PulseSchedule& other) {
  segments.insert(segments.end(), other.segments.begin(), other.segments.end());
  return *this;
}

double PulseSchedule::duration() const {
  double t = 0;
  for (const auto& s : segments)
    std::visit(overloaded{[&](const PulseSegment& p) { t += p.duration; },
                          [&](const WaitSegment& w) { t += w.duration; },
                          [](const FrameUpdate&) {}},
               s);
  return t;
}

void PulseSchedule::validate(const SpinQuantum& q) const {
  for (size_t i = 0; i < segments.size(); ++i) {
    const std::string where = "segment " + std::to_string(i) + ": ";
    std::visit(overloaded{[&](const PulseSegment& p) {
                            if (!(p.duration >= 0)) throw SpinError(where + "negative duration");
                            for (const auto& t : p.tones)
                              if (t.transition < 1 || t.transition > q.two_I)
                                throw SpinError(where + "transition index out of range");
                          },
                          [&](const WaitSegment& w) {
                            if (!(w.duration >= 0)) throw SpinError(where + "negative duration");
                          },
                          [&](const FrameUpdate& f) {
                            if (f.delta_phi.size() != q.two_I)
                              throw SpinError(where + "frame update needs 2I phases");
                          }},
               segments[i]);
  }
}

NoiseModel NoiseModel::uniform(const SpinQuantum& q, double t2, double alpha) {
  NoiseModel n;
  n.t2 = MatrixXd::Constant(q.d(), q.d(), t2);
  n.alpha = alpha;
  return n;
}

NoiseModel NoiseModel::from_channels(const SpinQuantum& q, double zeeman_rate, double quad_rate,
                                     double alpha) {
  const int d = q.d();
  NoiseModel n;
  n.alpha = alpha;
  n.t2 = MatrixXd::Constant(d, d, std::numeric_limits<double>::infinity());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double ma = q.m(a), mb = q.m(b);
      const double s = std::pow(zeeman_rate * std::abs(ma - mb), alpha) +
                       std::pow(quad_rate * std::abs(ma * ma - mb * mb), alpha);
      if (s > 0) n.t2(a, b) = std::pow(s, -1.0 / alpha);
    }
  return n;
}

void NoiseModel::validate(const SpinQuantum& q) const {
  if (t2.rows() != q.d() || t2.cols() != q.d()) throw SpinError("noise t2 table must be d x d");
  if (!(alpha > 0 && alpha <= 2)) throw SpinError("noise alpha must lie in (0, 2]");
  if (!(readout_flip >= 0 && readout_flip <= 1)) throw SpinError("readout_flip must lie in [0, 1]");
  for (int a = 0; a < q.d(); ++a)
    for (int b = 0; b < q.d(); ++b) {
      if (a != b && !(t2(a, b) > 0)) throw SpinError("T2 entries must be positive");
      if (t2(a, b) != t2(b, a)) throw SpinError("T2 table must be symmetric");
    }
}

MatrixXc covariant_rotation(const SpinQuantum& q, double theta, double phi) {
  const auto ops = spin_operators<double>(q);
  const MatrixXc gen = std::cos(phi) * ops.ix + std::sin(phi) * ops.iy;
  return expi_hermitian<double>(gen, theta);
}

std::vector<DriveTone> covariant_tones(const SpinQuantum& q, const FrameDefinition& frame,
                                       double f_rabi, double phi, double gamma_n) {
  frame.check(q);
  std::vector<DriveTone> tones;
  const double b1 = covariant_b1(f_rabi, gamma_n);
  for (int k = 1; k <= q.two_I; ++k) tones.push_back({frame.ref_freqs(k - 1), -phi, b1, k});
  return tones;
}

PulseSegment covariant_pulse(const SpinQuantum& q, const FrameDefinition& frame, double f_rabi,
                             double theta, double phi, double gamma_n) {
  if (!(f_rabi > 0)) throw SpinError("f_rabi must be positive");
  return {std::abs(theta) / (kTwoPi * f_rabi),
          covariant_tones(q, frame, f_rabi, theta >= 0 ? phi : phi + kPi, gamma_n)};
}

VectorXd snap_phases(const VectorXd& delta_phi) {
  VectorXd xi(delta_phi.size() + 1);
  xi(0) = 0;
  for (Eigen::Index k = 0; k < delta_phi.size(); ++k) xi(k + 1) = xi(k) - delta_phi(k);
  return xi;
}

std::pair<FrameDefinition, MatrixXc> virtual_snap(const FrameDefinition& frame,
                                                  const VectorXd& delta_phi) {
  if (delta_phi.size() != frame.ref_freqs.size())
    throw SpinError("virtual_snap: need one phase per transition");
  FrameDefinition next = frame;
  next.accumulated_phases += delta_phi;
  const VectorXd xi = snap_phases(delta_phi);
  MatrixXc s = MatrixXc::Zero(xi.size(), xi.size());
  for (Eigen::Index k = 0; k < xi.size(); ++k) s(k, k) = std::polar(1.0, xi(k));
  return {next, s};
}

VectorXd alternating_snap_update(const SpinQuantum& q) {
  VectorXd dp(q.two_I);
  for (int k = 0; k < q.two_I; ++k) dp(k) = (k % 2 == 0) ? -kPi / 2 : kPi / 2;
  return dp;
}

EvolutionResult evolve_grf(const VectorXc& psi0, const PulseSchedule& schedule,
                           const FrameDefinition& frame0, const SpinQuantum& q, double gamma_n,
                           int samples_per_segment) {
  if (psi0.size() != q.d()) throw SpinError("evolve_grf: state dimension mismatch");
  frame0.check(q);
  schedule.validate(q);
  const int ns = std::max(1, samples_per_segment);
  EvolutionResult out;
  FrameDefinition frame = frame0;
  VectorXc psi = psi0;
  double t = 0;
  record(out, t, psi);

  auto run = [&](double duration, const std::vector<DriveTone>& tones) {
    const MatrixXc h = grf_drive_hamiltonian(tones, frame, q, gamma_n);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
    const VectorXc c0 = es.eigenvectors().adjoint() * psi;
    VectorXc ph(q.d());
    for (int s = 1; s <= ns; ++s) {
      const double dt = duration * s / ns;
      for (int k = 0; k < q.d(); ++k) ph(k) = std::polar(1.0, -kTwoPi * es.eigenvalues()(k) * dt);
      const VectorXc v = es.eigenvectors() * ph.cwiseProduct(c0);
      if (s == ns) psi = v;
      record(out, t + dt, v);
    }
    t += duration;
  };

  for (const auto& seg : schedule.segments) {
    std::visit(overloaded{[&](const PulseSegment& p) { run(p.duration, p.tones); },
                          [&](const WaitSegment& w) { run(w.duration, {}); },
                          [&](const FrameUpdate& f) {
                            auto [next, s] = virtual_snap(frame, f.delta_phi);
                            frame = next;
                            psi = s * psi;
                            record(out, t, psi);
                          }},
               seg);
  }
  out.final_frame = frame;
  finish(out, q);
  return out;
}

EvolutionResult evolve_lab(const VectorXc& psi0, const PulseSchedule& schedule,
                           const FrameDefinition& frame0, const StaticParams& p,
                           const SpinQuantum& q, const LabOptions& opts) {
  namespace ode = boost::numeric::odeint;
  using State = Eigen::VectorXd;
  if (!(opts.tol > 0)) throw SpinError("evolve_lab: tol must be positive");
  if (psi0.size() != q.d()) throw SpinError("evolve_lab: state dimension mismatch");
  frame0.check(q);
  schedule.validate(q);
  const int d = q.d();
  const int ns = std::max(1, opts.samples_per_segment);
  const MatrixXc hs = static_hamiltonian(p, q);
  const MatrixXc ix = spin_operators<double>(q).ix;

  EvolutionResult out;
  FrameDefinition frame = frame0;
  VectorXc psi = psi0;
  double t = 0;
  record(out, t, psi);

  auto to_real = [d](const VectorXc& v) {
    State y(2 * d);
    y.head(d) = v.real();
    y.tail(d) = v.imag();
    return y;
  };
  auto to_cplx = [d](const State& y) {
    VectorXc v(d);
    v.real() = y.head(d);
    v.imag() = y.tail(d);
    return v;
  };

  auto run = [&](double duration, const std::vector<DriveTone>& tones) {
    if (duration <= 0) return;
    const VectorXd F = frame.level_clocks();
    const VectorXd xi = frame.level_phases();
    std::vector<DriveTone> phys = tones;
    double fmax = std::abs(F(d - 1) - F(0)) + 1.0;
    for (auto& tone : phys) {
      tone.phase -= frame.accumulated_phases(tone.transition - 1);
      fmax = std::max(fmax, std::abs(tone.f));
    }
    MatrixXc h(d, d);
    VectorXc u(d);
    auto rhs = [&](const State& y, State& dy, double tt) {
      double field = 0;
      for (const auto& tone : phys) field += tone.b1 * std::cos(kTwoPi * tone.f * tt + tone.phase);
      for (int k = 0; k < d; ++k) u(k) = std::polar(1.0, kTwoPi * F(k) * tt + xi(k));
      h.noalias() = hs - (p.gamma_n * field) * ix;
      // frame: U^dag H U - F with U = diag(conj(u))
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) h(a, b) *= u(a) * std::conj(u(b));
      h.diagonal() -= F.cast<cplx>();
      const VectorXc v = to_cplx(y);
      const VectorXc hv = h * v;
      dy.resize(2 * d);
      dy.head(d) = kTwoPi * hv.imag();
      dy.tail(d) = -kTwoPi * hv.real();
    };
    auto stepper = ode::make_dense_output(
        opts.tol, opts.tol, ode::runge_kutta_dopri5<State, double, State, double, ode::vector_space_algebra>());
    State y = to_real(psi);
    const double t_end = t + duration;
    stepper.initialize(y, t, std::min(duration, 0.01 / fmax));
    int s = 1;
    double next_sample = t + duration * s / ns;
    State ys(2 * d);
    try {
      while (s <= ns) {
        while (stepper.current_time() < next_sample) {
          stepper.do_step(rhs);
          if (stepper.current_time_step() < opts.min_step)
            throw NumericalError("evolve_lab: step size underflow at t = " +
                                 std::to_string(stepper.current_time()));
        }
        stepper.calc_state(next_sample, ys);
        const VectorXc v = to_cplx(ys);
        record(out, next_sample, v);
        if (s == ns) psi = v;
        ++s;
        next_sample = t + duration * s / ns;
      }
    } catch (const ode::step_adjustment_error& e) {
      throw NumericalError(std::string("evolve_lab: ") + e.what());
    }
    t = t_end;
  };

  for (const auto& seg : schedule.segments) {
    std::visit(overloaded{[&](const PulseSegment& ps) { run(ps.duration, ps.tones); },
                          [&](const WaitSegment& w) { run(w.duration, {}); },
                          [&](const FrameUpdate& f) {
                            auto [next, snap] = virtual_snap(frame, f.delta_phi);
                            frame = next;
                            psi = snap * psi;
                            record(out, t, psi);
                          }},
               seg);
  }
  out.final_frame = frame;
  finish(out, q);
  return out;
}

VectorXd subspace_rotation_amplitudes(const SpinQuantum& q, int sub_two_I, double total_b1_budget) {
  if (sub_two_I < 1 || sub_two_I > q.two_I || (q.two_I - sub_two_I) % 2 != 0)
    throw SpinError("subspace 2I_sub = " + std::to_string(sub_two_I) +
                    " must not exceed 2I and must share its parity");
  const VectorXd c = ladder_coefficients<double>(q);
  const double Is = 0.5 * sub_two_I;
  VectorXd b = VectorXd::Zero(q.two_I);
  for (int k = 1; k <= q.two_I; ++k) {
    const double mu = q.m(k - 1), ml = q.m(k);
    if (std::abs(mu) > Is + 1e-12 || std::abs(ml) > Is + 1e-12) continue;
    b(k - 1) = std::sqrt(Is * (Is + 1) - ml * mu) / c(k - 1);
  }
  return b * (total_b1_budget / b.sum());
}

VectorXd subspace_rabi_amplitudes(const SpinQuantum& q, int sub_two_I, double f_rabi, double gamma_n) {
  const VectorXd shape = subspace_rotation_amplitudes(q, sub_two_I, 1.0);
  // an entry -(gamma/4) c_k B_k must equal -(f_rabi/2) c_sub,k
  const VectorXd c = ladder_coefficients<double>(q);
  const double Is = 0.5 * sub_two_I;
  VectorXd b = VectorXd::Zero(q.two_I);
  for (int k = 1; k <= q.two_I; ++k) {
    if (shape(k - 1) == 0) continue;
    const double mu = q.m(k - 1), ml = q.m(k);
    b(k - 1) = 2.0 * f_rabi * std::sqrt(Is * (Is + 1) - ml * mu) / (gamma_n * c(k - 1));
  }
  return b;
}

PulseSegment subspace_pulse(const SpinQuantum& q, const FrameDefinition& frame, int sub_two_I,
                            double f_rabi, double theta, double phi, double gamma_n) {
  frame.check(q);
  const VectorXd b = subspace_rabi_amplitudes(q, sub_two_I, f_rabi, gamma_n);
  PulseSegment seg;
  seg.duration = std::abs(theta) / (kTwoPi * f_rabi);
  const double ph = theta >= 0 ? -phi : -(phi + kPi);
  for (int k = 1; k <= q.two_I; ++k)
    if (b(k - 1) > 0) seg.tones.push_back({frame.ref_freqs(k - 1), ph, b(k - 1), k});
  return seg;
}

double leakage(const VectorXc& psi, const SpinQuantum& q, int sub_two_I) {
  double inside = 0;
  for (int k = 0; k < q.d(); ++k)
    if (std::abs(q.m(k)) <= 0.5 * sub_two_I + 1e-12) inside += std::norm(psi(k));
  return 1.0 - inside / psi.squaredNorm();
}

PulseSchedule givens_cat_sequence(const SpinQuantum& q, int sub_two_I, double f_rabi,
                                  const FrameDefinition& frame, double gamma_n, double xi) {
  if (sub_two_I < 1 || sub_two_I > q.two_I || (q.two_I - sub_two_I) % 2 != 0)
    throw SpinError("givens_cat_sequence: invalid subspace 2I_sub = " + std::to_string(sub_two_I));
  frame.check(q);
  // transition k couples indices (k-1, k); the lowest sub-spin pair has its
  // lower level |-I_sub> at index (2I + 2I_sub)/2.
  const int k_first = (q.two_I + sub_two_I) / 2;
  const int n = sub_two_I;
  PulseSchedule sched;
  for (int j = 1; j <= n; ++j) {
    const int k = k_first - (j - 1);
    double phase = 0;
    if (n == 1) {
      phase = -xi - kPi / 2;
    } else if (j == 1) {
      phase = kPi / 2;  // |l> -> (|l> - |u>)/sqrt2
    } else if (j == n) {
      phase = kPi - xi - (n - 1) * kPi / 2;
    }
    const double dur = (j == 1 ? 0.25 : 0.5) / f_rabi;
    sched.pulse(dur, {{frame.ref_freqs(k - 1), phase, transition_b1(q, k, f_rabi, gamma_n), k}});
  }
  return sched;
}

PulseSchedule snap_cat_sequence(const SpinQuantum& q, double f_rabi, CatOrientation orient,
                                const FrameDefinition& frame, double gamma_n) {
  PulseSchedule sched;
  sched.segments.emplace_back(covariant_pulse(q, frame, f_rabi, kPi / 2, -kPi / 2, gamma_n));
  sched.frame_update(alternating_snap_update(q));
  if (orient == CatOrientation::Z)
    sched.segments.emplace_back(covariant_pulse(q, frame, f_rabi, kPi / 2, kPi / 2, gamma_n));
  return sched;
}

VectorXc z_cat(const SpinQuantum& q, double xi, int sub_two_I) {
  const int s = sub_two_I < 0 ? q.two_I : sub_two_I;
  VectorXc v = VectorXc::Zero(q.d());
  v(q.index_of(0.5 * s)) = 1.0 / std::sqrt(2.0);
  v(q.index_of(-0.5 * s)) = std::polar(1.0 / std::sqrt(2.0), xi);
  return v;
}

MatrixXc one_axis_twisting(const SpinQuantum& q) {
  const auto ops = spin_operators<double>(q);
  const MatrixXc iz2 = ops.iz * ops.iz;
  return covariant_rotation(q, kPi / 2, 0) * expi_hermitian<double>(iz2, -kPi / 2) *
         covariant_rotation(q, kPi / 2, -kPi / 2);
}

double diagonal_phase_distance(const MatrixXc& a, const MatrixXc& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SpinError("diagonal_phase_distance: shape mismatch");
  const Eigen::Index r = a.rows(), c = a.cols();
  constexpr double eps = 1e-9;
  VectorXc left = VectorXc::Zero(r), right = VectorXc::Zero(c);
  // breadth-first phase propagation over the bipartite support graph
  for (Eigen::Index start = 0; start < r; ++start) {
    if (left(start) != cplx(0)) continue;
    left(start) = 1.0;
    std::queue<std::pair<bool, Eigen::Index>> todo;
    todo.push({true, start});
    while (!todo.empty()) {
      auto [is_row, i] = todo.front();
      todo.pop();
      if (is_row) {
        for (Eigen::Index j = 0; j < c; ++j)
          if (right(j) == cplx(0) && std::abs(b(i, j)) > eps && std::abs(a(i, j)) > eps) {
            const cplx z = a(i, j) / b(i, j);
            right(j) = (z / std::abs(z)) / left(i);
            todo.push({false, j});
          }
      } else {
        for (Eigen::Index k = 0; k < r; ++k)
          if (left(k) == cplx(0) && std::abs(b(k, i)) > eps && std::abs(a(k, i)) > eps) {
            const cplx z = a(k, i) / b(k, i);
            left(k) = (z / std::abs(z)) / right(i);
            todo.push({true, k});
          }
      }
    }
  }
  for (Eigen::Index j = 0; j < c; ++j)
    if (right(j) == cplx(0)) right(j) = 1.0;
  return (a - left.asDiagonal() * b * right.asDiagonal()).cwiseAbs().maxCoeff();
}

MatrixXc apply_dephasing(const MatrixXc& rho, double tau, const NoiseModel& noise) {
  if (!(tau >= 0)) throw SpinError("apply_dephasing: tau must be nonnegative");
  const Eigen::Index d = rho.rows();
  if (noise.t2.rows() != d || noise.t2.cols() != d)
    throw SpinError("apply_dephasing: noise table dimension mismatch");
  MatrixXc out = rho;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      if (a == b || tau == 0) continue;
      const double t2 = noise.t2(a, b);
      if (std::isinf(t2)) continue;
      out(a, b) *= std::exp(-std::pow(tau / t2, noise.alpha));
    }
  return out;
}

ParityResult simulate_parity_oscillation(const MatrixXc& rho, const SpinQuantum& q, int n_phi,
                                         int harmonic, double flag_threshold) {
  const int d = q.d();
  if (rho.rows() != d || rho.cols() != d) throw SpinError("parity: dimension mismatch");
  if (n_phi < 4 * d) throw SpinError("parity: n_phi must be at least 4(2I+1)");
  const int h = harmonic > 0 ? harmonic : q.two_I;
  const MatrixXc r0 = covariant_rotation(q, kPi / 2, 0);
  const VectorXd parity = parity_operator<double>(q).diagonal().real();
  ParityResult res;
  res.harmonic = h;
  res.phis.resize(n_phi);
  res.samples.resize(n_phi);
  VectorXc ph(d);
  for (int j = 0; j < n_phi; ++j) {
    const double phi = kTwoPi * j / n_phi;
    // R(phi) = e^{-i phi Iz} R(0) e^{i phi Iz}; parity is diagonal, so only
    // the right-hand factor matters
    for (int k = 0; k < d; ++k) ph(k) = std::polar(1.0, phi * q.m(k));
    const MatrixXc r = r0 * ph.asDiagonal();
    const MatrixXc out = r * rho * r.adjoint();
    res.phis(j) = phi;
    res.samples(j) = (parity.cwiseProduct(out.diagonal().real())).sum();
  }
  MatrixXd A(n_phi, 3);
  for (int j = 0; j < n_phi; ++j) {
    A(j, 0) = 1.0;
    A(j, 1) = std::cos(h * res.phis(j));
    A(j, 2) = std::sin(h * res.phis(j));
  }
  const VectorXd coef = A.colPivHouseholderQr().solve(res.samples);
  res.offset = coef(0);
  res.contrast = std::hypot(coef(1), coef(2));
  res.phase = std::atan2(coef(2), coef(1));
  res.residual = std::sqrt((A * coef - res.samples).squaredNorm() / n_phi);
  res.flagged = res.residual > flag_threshold;
  return res;
}

ParityResult simulate_parity_oscillation(const VectorXc& psi, const SpinQuantum& q, int n_phi,
                                         int harmonic, double flag_threshold) {
  return simulate_parity_oscillation(MatrixXc(psi * psi.adjoint()), q, n_phi, harmonic,
                                     flag_threshold);
}

int dominant_harmonic(const VectorXd& x) {
  const Eigen::Index n = x.size();
  int best = 0;
  double best_mag = -1;
  for (Eigen::Index h = 1; h <= n / 2; ++h) {
    cplx acc = 0;
    for (Eigen::Index j = 0; j < n; ++j) acc += x(j) * std::polar(1.0, -kTwoPi * h * j / n);
    if (std::abs(acc) > best_mag) {
      best_mag = std::abs(acc);
      best = static_cast<int>(h);
    }
  }
  return best;
}

VectorXd ramsey_envelope(const SpinQuantum& q, const NoiseModel& noise, const VectorXd& taus) {
  noise.validate(q);
  const VectorXc scs = covariant_rotation(q, kPi / 2, -kPi / 2) * basis_state<double>(q, -q.I());
  const MatrixXc rho0 = scs * scs.adjoint();
  const MatrixXc ip = spin_operators<double>(q).ip;
  VectorXd env(taus.size());
  for (Eigen::Index i = 0; i < taus.size(); ++i) {
    const MatrixXc rho = apply_dephasing(rho0, taus(i), noise);
    env(i) = std::abs((ip * rho).trace()) / q.I();
  }
  return env;
}

StretchedFit fit_stretched_exponential(const VectorXd& taus, const VectorXd& y) {
  if (taus.size() != y.size() || taus.size() < 3) throw SpinError("stretched fit needs >= 3 points");
  StretchedFit fit;
  fit.amplitude = (taus(0) == 0) ? y(0) : 1.0;
  std::vector<double> xs, ys;
  for (Eigen::Index i = 0; i < taus.size(); ++i) {
    if (taus(i) <= 0) continue;
    const double r = y(i) / fit.amplitude;
    if (!(r > 0 && r < 1)) continue;
    xs.push_back(std::log(taus(i)));
    ys.push_back(std::log(-std::log(r)));
  }
  if (xs.size() < 2) throw NumericalError("stretched fit: not enough decaying points");
  const Eigen::Map<VectorXd> X(xs.data(), xs.size()), Y(ys.data(), ys.size());
  const double mx = X.mean(), my = Y.mean();
  const double slope = ((X.array() - mx) * (Y.array() - my)).sum() / (X.array() - mx).square().sum();
  fit.alpha = slope;
  // log(-log r) = alpha log tau - alpha log T2
  fit.t2 = std::exp(mx - my / slope);
  return fit;
}

VectorXd apply_readout_flip(const VectorXd& p, double p_flip) {
  const Eigen::Index d = p.size();
  if (d < 2 || p_flip == 0) return p;
  const double total = p.sum();
  return (1.0 - p_flip) * p + p_flip * (VectorXd::Constant(d, total) - p) / double(d - 1);
}

}  // namespace spinqudit
