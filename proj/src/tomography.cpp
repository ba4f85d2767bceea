// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spinqudit/dynamics.hpp"
#include "spinqudit/parallel.hpp"
#include "spinqudit/spincore.hpp"

namespace spinqudit {

void ExperimentDesign::validate() const {
  if (axes.empty()) throw SpinError("experiment design has no axes");
  if (shots_per_axis <= 0) throw SpinError("shots_per_axis must be positive");
  for (const auto& a : axes)
    if (!std::isfinite(a.theta) || !std::isfinite(a.phi)) throw SpinError("non-finite axis angle");
}

MatrixXc axis_eigenbasis(const SpinQuantum& q, double theta, double phi) {
  // exp(-i phi Iz) exp(-i theta Iy) |m>, columns in descending m
  const int d = q.d();
  const MatrixXd dm = wigner_d_matrix<double>(q, theta);
  MatrixXc v(d, d);
  for (int r = 0; r < d; ++r) v.row(r) = dm.row(r).cast<cplx>() * std::polar(1.0, -q.m(r) * phi);
  return v;
}

std::vector<MatrixXc> axis_effects(const SpinQuantum& q, double theta, double phi) {
  const MatrixXc v = axis_eigenbasis(q, theta, phi);
  std::vector<MatrixXc> out;
  out.reserve(v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) out.push_back(v.col(j) * v.col(j).adjoint());
  return out;
}

ExperimentDesign paper_design(const SpinQuantum& q) {
  (void)q;
  ExperimentDesign des;
  for (double th : {kPi / 4, kPi / 3, 9 * kPi / 20})
    for (int n = 0; n < 15; ++n) des.axes.push_back({th, kTwoPi * n / 15});
  des.shots_per_axis = 15;
  return des;
}

ExperimentDesign uniform_random_design(int n_axes, std::uint64_t seed, int shots_per_axis) {
  if (n_axes <= 0) throw SpinError("uniform_random_design: n_axes must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ph(0.0, kTwoPi);
  ExperimentDesign des;
  des.shots_per_axis = shots_per_axis;
  des.axes.reserve(n_axes);
  for (int i = 0; i < n_axes; ++i) des.axes.push_back({std::acos(u(rng)), ph(rng)});
  return des;
}

ExperimentDesign rotate_design(const ExperimentDesign& design, double alpha, double beta, double gamma) {
  const Eigen::Matrix3d r = (Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()) *
                             Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()) *
                             Eigen::AngleAxisd(gamma, Eigen::Vector3d::UnitZ()))
                                .toRotationMatrix();
  ExperimentDesign out = design;
  for (auto& a : out.axes) {
    const Eigen::Vector3d n(std::sin(a.theta) * std::cos(a.phi), std::sin(a.theta) * std::sin(a.phi),
                            std::cos(a.theta));
    const Eigen::Vector3d m = r * n;
    a.theta = std::acos(std::clamp(m.z(), -1.0, 1.0));
    a.phi = std::atan2(m.y(), m.x());
  }
  return out;
}

MatrixXc frame_superoperator(const ExperimentDesign& design, const SpinQuantum& q) {
  design.validate();
  const int d = q.d();
  MatrixXc f = MatrixXc::Zero(d * d, d * d);
  for (const auto& a : design.axes)
    for (const auto& e : axis_effects(q, a.theta, a.phi)) {
      const Eigen::Map<const VectorXc> v(e.data(), d * d);
      f.noalias() += v * v.adjoint();
    }
  return f / double(design.n_axes() * d);
}

Efficiency tomographic_efficiency(const MatrixXc& frame, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(frame, Eigen::EigenvaluesOnly);
  const VectorXd& ev = es.eigenvalues();
  const double cut = rank_tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Efficiency out;
  out.rank = static_cast<int>((ev.array() > cut).count());
  if (out.rank < frame.rows()) return out;
  out.f_te = std::sqrt(ev.cwiseInverse().sum());
  return out;
}

double two_design_efficiency(const SpinQuantum& q) {
  const double d = q.d();
  // F = (X + Tr(X) 1)/(d(d+1)): eigenvalue 1/d on the identity, 1/(d(d+1)) elsewhere
  return std::sqrt(d + d * (d + 1) * (d * d - 1));
}

MatrixXd outcome_probabilities(const MatrixXc& rho, const ExperimentDesign& design, const SpinQuantum& q) {
  if (rho.rows() != q.d() || rho.cols() != q.d()) throw SpinError("density matrix dimension mismatch");
  MatrixXd p(design.n_axes(), q.d());
  for (int a = 0; a < design.n_axes(); ++a) {
    const MatrixXc v = axis_eigenbasis(q, design.axes[a].theta, design.axes[a].phi);
    p.row(a) = (v.adjoint() * rho * v).diagonal().real().transpose();
  }
  return p;
}

ShotRecord simulate_shots(const MatrixXc& rho, const ExperimentDesign& design, const SpinQuantum& q,
                          std::uint64_t seed) {
  design.validate();
  const MatrixXd p = outcome_probabilities(rho, design, q);
  std::mt19937_64 rng(seed);
  ShotRecord rec;
  rec.seed = seed;
  rec.counts = Eigen::MatrixXi::Zero(design.n_axes(), q.d());
  for (int a = 0; a < design.n_axes(); ++a) {
    VectorXd pa = p.row(a).transpose().cwiseMax(0.0);
    const double s = pa.sum();
    if (std::abs(s - 1) > 1e-6 || p.row(a).minCoeff() < -1e-6)
      throw NumericalError("simulate_shots: probability defect on axis " + std::to_string(a));
    pa /= s;
    std::discrete_distribution<int> dist(pa.data(), pa.data() + pa.size());
    for (int s2 = 0; s2 < design.shots_per_axis; ++s2) ++rec.counts(a, dist(rng));
  }
  return rec;
}

namespace {

void check_record(const ShotRecord& rec, const ExperimentDesign& design, const SpinQuantum& q) {
  if (rec.counts.rows() != design.n_axes() || rec.counts.cols() != q.d())
    throw SpinError("shot record shape " + std::to_string(rec.counts.rows()) + "x" +
                    std::to_string(rec.counts.cols()) + " does not match design (" +
                    std::to_string(design.n_axes()) + " axes, d = " + std::to_string(q.d()) + ")");
  if (rec.counts.minCoeff() < 0) throw SpinError("shot record has negative counts");
}

// Effects with nonzero counts, as columns of V, with their counts.
struct ObservedEffects {
  MatrixXc v;
  VectorXd n;
  double total = 0;
};

ObservedEffects observed_effects(const ShotRecord& rec, const ExperimentDesign& design, const SpinQuantum& q) {
  check_record(rec, design, q);
  const int d = q.d();
  ObservedEffects o;
  const int m = static_cast<int>((rec.counts.array() > 0).count());
  o.v.resize(d, m);
  o.n.resize(m);
  int j = 0;
  for (int a = 0; a < design.n_axes(); ++a) {
    if ((rec.counts.row(a).array() == 0).all()) continue;
    const MatrixXc basis = axis_eigenbasis(q, design.axes[a].theta, design.axes[a].phi);
    for (int k = 0; k < d; ++k)
      if (rec.counts(a, k) > 0) {
        o.v.col(j) = basis.col(k);
        o.n(j++) = rec.counts(a, k);
      }
  }
  o.total = o.n.sum();
  return o;
}

VectorXd effect_probs(const ObservedEffects& o, const MatrixXc& rho) {
  const MatrixXc rv = rho * o.v;
  return o.v.cwiseProduct(rv.conjugate()).colwise().sum().real().transpose();
}

double loglik_of(const ObservedEffects& o, const VectorXd& p, double floor) {
  return (o.n.array() * p.array().max(floor).log()).sum();
}

}  // namespace

double log_likelihood(const ShotRecord& record, const MatrixXc& rho, const ExperimentDesign& design,
                      const SpinQuantum& q, double prob_floor) {
  const ObservedEffects o = observed_effects(record, design, q);
  return loglik_of(o, effect_probs(o, rho), prob_floor);
}

MleResult mle_reconstruct(const ShotRecord& record, const ExperimentDesign& design, const SpinQuantum& q,
                          const MleOptions& opts) {
  const ObservedEffects o = observed_effects(record, design, q);
  if (o.total <= 0) throw SpinError("mle_reconstruct: empty shot record");
  const int d = q.d();
  const MatrixXc id = MatrixXc::Identity(d, d);

  MleResult res;
  res.rho = id / double(d);
  VectorXd p = effect_probs(o, res.rho);
  res.loglik = loglik_of(o, p, opts.prob_floor);

  // Diluted fixed point rho <- N[(1 + eps R) rho (1 + eps R)]. A small enough
  // eps always increases the likelihood; eps grows while steps succeed.
  double eps = 1.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    const VectorXd w = o.n.array() / (o.total * p.array().max(opts.prob_floor));
    const MatrixXc r = o.v * w.asDiagonal() * o.v.adjoint();
    bool accepted = false;
    double gain = 0;
    while (eps > 1e-14) {
      const MatrixXc g = id + eps * r;
      MatrixXc next = g * res.rho * g.adjoint();
      next /= next.trace().real();
      next = 0.5 * (next + next.adjoint()).eval();
      const VectorXd pn = effect_probs(o, next);
      const double ll = loglik_of(o, pn, opts.prob_floor);
      if (ll >= res.loglik) {
        gain = ll - res.loglik;
        res.rho = std::move(next);
        res.loglik = ll;
        p = pn;
        accepted = true;
        eps = std::min(eps * 2, 1e6);
        break;
      }
      eps /= 4;
    }
    res.iterations = it + 1;
    if (opts.keep_trace) res.trace.push_back(res.loglik);
    if (!accepted || gain < opts.tol * o.total) {
      res.converged = true;
      break;
    }
  }
  return res;
}

double loglik_ratio(const ShotRecord& record, const MatrixXc& rho, const ExperimentDesign& design,
                    const SpinQuantum& q, double prob_floor) {
  check_record(record, design, q);
  double sat = 0;
  for (int a = 0; a < design.n_axes(); ++a) {
    const double na = record.counts.row(a).sum();
    for (int k = 0; k < q.d(); ++k)
      if (record.counts(a, k) > 0) sat += record.counts(a, k) * std::log(record.counts(a, k) / na);
  }
  const double lam = -2 * (log_likelihood(record, rho, design, q, prob_floor) - sat);
  return std::max(lam, 0.0);
}

ValidationReport parametric_bootstrap(const ShotRecord& observed, const MatrixXc& rho_mle,
                                      const ExperimentDesign& design, const SpinQuantum& q,
                                      const BootstrapOptions& opts) {
  if (opts.n_samples < 100) throw SpinError("parametric_bootstrap: need at least 100 samples");
  ValidationReport rep;
  rep.lambda_observed = loglik_ratio(observed, rho_mle, design, q, opts.mle.prob_floor);
  rep.dof_nominal = dof_nominal(design.n_axes(), q.d());

  std::vector<double> lam(opts.n_samples, 0.0);
  std::vector<char> ok(opts.n_samples, 0);
  parallel_for(opts.n_samples, [&](std::size_t i) {
    std::seed_seq ss{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                     static_cast<std::uint32_t>(i)};
    std::uint32_t words[2];
    ss.generate(words, words + 2);
    const std::uint64_t s = (std::uint64_t(words[0]) << 32) | words[1];
    const ShotRecord rec = simulate_shots(rho_mle, design, q, s);
    const MleResult fit = mle_reconstruct(rec, design, q, opts.mle);
    if (!fit.converged) return;
    lam[i] = loglik_ratio(rec, fit.rho, design, q, opts.mle.prob_floor);
    ok[i] = 1;
  });
  int above = 0;
  for (int i = 0; i < opts.n_samples; ++i) {
    if (!ok[i]) {
      ++rep.excluded;
      continue;
    }
    rep.null_samples.push_back(lam[i]);
    if (lam[i] >= rep.lambda_observed) ++above;
  }
  if (rep.null_samples.empty()) throw NumericalError("parametric_bootstrap: every inner MLE failed");
  rep.p_value = double(above) / rep.null_samples.size();
  return rep;
}

double reduced_parity_fidelity(double p_plus, double p_minus, double parity_contrast, double delta_xi) {
  return 0.5 * (p_plus + p_minus) + 0.5 * parity_contrast * std::cos(delta_xi);
}

double cat_phase_from_parity(const SpinQuantum& q, double fitted_phase) {
  const int n = 8 * q.d();
  const double p0 = simulate_parity_oscillation(z_cat(q, 0.0), q, n).phase;
  const double p1 = simulate_parity_oscillation(z_cat(q, kPi / 2), q, n).phase;
  const double slope = std::remainder(p1 - p0, kTwoPi) > 0 ? 1.0 : -1.0;
  return std::remainder(slope * (fitted_phase - p0), kTwoPi);
}

}  // namespace spinqudit
