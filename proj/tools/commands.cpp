// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "spinqudit/catcode.hpp"
#include "spinqudit/floquet.hpp"
#include "spinqudit/svg.hpp"
#include "spinqudit/tomography.hpp"
#include "spinqudit/wigner.hpp"

namespace spinqudit::cli {

namespace fs = std::filesystem;

Output::Output(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ConfigError("output_dir", "cannot create '" + dir_ + "': " + ec.message());
}

void Output::write(const std::string& name, const std::string& contents) {
  const fs::path p = fs::path(dir_) / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("output_dir", "cannot write '" + p.string() + "'");
  f << contents;
  files_.push_back(name);
}

void Output::write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

namespace {

std::string level_label(const SpinQuantum& q, int k) {
  const int twice = q.two_I - 2 * k;
  const std::string sign = twice > 0 ? "+" : (twice < 0 ? "-" : "");
  if (q.two_I % 2) return sign + std::to_string(std::abs(twice)) + "/2";
  return sign + std::to_string(std::abs(twice) / 2);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string population_csv(const EvolutionResult& r, const SpinQuantum& q) {
  std::ostringstream os;
  os << "time_s";
  for (int k = 0; k < q.d(); ++k) os << ",p_m" << level_label(q, k);
  os << ",iz_expect\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << fmt(r.times[i]);
    for (int k = 0; k < q.d(); ++k) os << ',' << fmt(r.populations(k, Eigen::Index(i)));
    os << ',' << fmt(r.iz_expect(Eigen::Index(i))) << '\n';
  }
  return os.str();
}

svg::PlotSpec labels(std::string title, std::string x, std::string y) {
  svg::PlotSpec s;
  s.title = std::move(title);
  s.xlabel = std::move(x);
  s.ylabel = std::move(y);
  return s;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

FrameDefinition lab_frame(const RunConfig& cfg, const SpinQuantum& q) {
  return FrameDefinition::from_static(static_hamiltonian(cfg.static_params(), q), q);
}

void require_subspace(const SpinQuantum& q, int sub, const std::string& key) {
  if (sub < 1 || sub > q.two_I || (q.two_I - sub) % 2)
    throw ConfigError(key, "subspace 2I' must satisfy 1 <= 2I' <= 2I with 2I - 2I' even");
}

// Rabi frequency of a -I cos(2 pi f t) trace from its first half period.
double fit_rabi_frequency(const EvolutionResult& r, double i_sub, double f_guess) {
  double acc = 0;
  int n = 0;
  for (std::size_t k = 1; k < r.times.size(); ++k) {
    const double t = r.times[k];
    if (t * f_guess > 0.45) break;
    const double c = std::clamp(-r.iz_expect(Eigen::Index(k)) / i_sub, -1.0, 1.0);
    acc += std::acos(c) / (kTwoPi * t);
    ++n;
  }
  if (n == 0) throw NumericalError("rabi sweep: no samples inside the first half period");
  return acc / n;
}

}  // namespace

json cmd_rabi(const RunConfig& cfg, Output& out) {
  const SpinQuantum q = cfg.spin();
  const StaticParams p = cfg.static_params();
  const FrameDefinition fr = lab_frame(cfg, q);
  const double kappa = cfg.get<double>("calibration.kappa_Hz_per_mV");
  const std::string mode = cfg.get<std::string>("rabi.mode");
  const int sub = mode == "covariant" ? q.two_I : cfg.get<int>("rabi.subspace_two_I");
  if (mode != "covariant" && mode != "subspace")
    throw ConfigError("rabi.mode", "expected covariant or subspace, got '" + mode + "'");
  require_subspace(q, sub, "rabi.subspace_two_I");
  const double duration = cfg.get<double>("rabi.duration_s");
  const int samples = cfg.get<int>("rabi.samples");
  if (!(duration > 0)) throw ConfigError("rabi.duration_s", "must be positive");
  if (samples < 2) throw ConfigError("rabi.samples", "must be at least 2");

  // rotation about -y, starting from the bottom of the (sub-)spin
  auto trace = [&](double amplitude_mv) {
    const double f = kappa * amplitude_mv;
    PulseSchedule s;
    const double theta = kTwoPi * f * duration;
    if (mode == "covariant") s.segments.emplace_back(covariant_pulse(q, fr, f, theta, -kPi / 2, p.gamma_n));
    else s.segments.emplace_back(subspace_pulse(q, fr, sub, f, theta, -kPi / 2, p.gamma_n));
    return evolve_grf(basis_state(q, -0.5 * sub), s, fr, q, p.gamma_n, samples);
  };

  const double amp = cfg.get<double>("rabi.amplitude_mV");
  const EvolutionResult r = trace(amp);
  out.write("rabi.csv", population_csv(r, q));

  svg::Series iz{"<Iz>", {}, {}, kPalette[0]};
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    iz.x.push_back(r.times[i] * 1e3);
    iz.y.push_back(r.iz_expect(Eigen::Index(i)));
  }
  std::vector<svg::Series> curves{iz};
  for (int k = 0; k < q.d(); ++k) {
    svg::Series s{"m=" + level_label(q, k), iz.x, {}, kPalette[(k + 1) % 10]};
    for (std::size_t i = 0; i < r.times.size(); ++i) s.y.push_back(r.populations(k, Eigen::Index(i)));
    curves.push_back(std::move(s));
  }
  out.write("rabi.svg", svg::line_plot({curves[0]}, labels("covariant Rabi", "time (ms)", "<Iz>")));
  curves.erase(curves.begin());
  out.write("rabi_populations.svg", svg::line_plot(curves, labels("level populations", "time (ms)", "population")));

  const double f_fit = fit_rabi_frequency(r, 0.5 * sub, kappa * amp);
  json summary = {{"mode", mode},
                  {"subspace_two_I", sub},
                  {"f_rabi_Hz", f_fit},
                  {"period_s", 1 / f_fit},
                  {"pi_time_s", 0.5 / f_fit}};

  const auto sweep = cfg.get<std::vector<double>>("rabi.sweep_mV");
  if (!sweep.empty()) {
    std::ostringstream os;
    os << "amplitude_mV,f_rabi_Hz\n";
    Eigen::MatrixXd a(sweep.size(), 2);
    Eigen::VectorXd y(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      if (!(sweep[i] > 0)) throw ConfigError("rabi.sweep_mV", "amplitudes must be positive");
      const double f = fit_rabi_frequency(trace(sweep[i]), 0.5 * sub, kappa * sweep[i]);
      os << fmt(sweep[i]) << ',' << fmt(f) << '\n';
      a(i, 0) = sweep[i];
      a(i, 1) = 1;
      y(i) = f;
    }
    out.write("rabi_sweep.csv", os.str());
    if (sweep.size() >= 2) {
      const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
      summary["kappa_fit_Hz_per_mV"] = c(0);
      summary["intercept_Hz"] = c(1);
    }
  }
  out.write_json("rabi.json", summary);
  return summary;
}

json cmd_cat(const RunConfig& cfg, Output& out) {
  const SpinQuantum q = cfg.spin();
  const StaticParams p = cfg.static_params();
  const FrameDefinition fr = lab_frame(cfg, q);
  const std::string method = cfg.get<std::string>("cat.method"), orient = cfg.get<std::string>("cat.orient");
  const int sub = cfg.get<int>("cat.subspace_two_I");
  const double f = cfg.get<double>("cat.f_rabi_Hz");
  require_subspace(q, sub, "cat.subspace_two_I");
  if (orient != "x" && orient != "z") throw ConfigError("cat.orient", "expected x or z");
  if (!(f > 0)) throw ConfigError("cat.f_rabi_Hz", "must be positive");

  PulseSchedule s;
  VectorXc start, target;
  if (method == "givens") {
    if (orient != "z") throw ConfigError("cat.orient", "givens prepares z-oriented cats only");
    s = givens_cat_sequence(q, sub, f, fr, p.gamma_n);
    start = basis_state(q, -0.5 * sub);
    target = z_cat(q, kPi, sub);
  } else if (method == "snap") {
    if (sub != q.two_I) throw ConfigError("cat.subspace_two_I", "snap prepares full-spin cats only");
    s = snap_cat_sequence(q, f, orient == "x" ? CatOrientation::X : CatOrientation::Z, fr, p.gamma_n);
    start = basis_state(q, -q.I());
    if (orient == "z") {
      target = z_cat(q, -kPi / 2);
    } else {
      target = (spin_coherent_state(q, kPi / 2, 0.0) + kI * spin_coherent_state(q, kPi / 2, kPi)) / std::sqrt(2.0);
    }
  } else {
    throw ConfigError("cat.method", "expected givens or snap, got '" + method + "'");
  }

  const EvolutionResult r = evolve_grf(start, s, fr, q, p.gamma_n);
  const VectorXc psi = r.states.back();
  out.write("cat_steps.csv", population_csv(r, q));

  const int n_phi = cfg.get<int>("cat.n_phi");
  if (n_phi < 2 * (sub + 1)) throw ConfigError("cat.n_phi", "needs at least 2 (2I' + 1) samples");
  // x-cats are read out after undoing the orientation; here the parity of the
  // state itself is reported
  const MatrixXc rho = projector(psi);
  const ParityResult par = simulate_parity_oscillation(rho, q, n_phi, orient == "z" ? sub : 0);
  std::ostringstream pc;
  pc << "phi_rad,parity\n";
  for (int i = 0; i < par.phis.size(); ++i) pc << fmt(par.phis(i)) << ',' << fmt(par.samples(i)) << '\n';
  out.write("cat_parity.csv", pc.str());

  const WignerGrid g = wigner_grid(rho, q, 91, 181, Projection::Hammer);
  out.write("cat_wigner.svg", wigner_svg(g, method + " " + orient + "-cat"));

  json summary = {{"method", method},
                  {"orient", orient},
                  {"subspace_two_I", sub},
                  {"fidelity_to_target", state_fidelity(psi, target)},
                  {"parity_contrast", par.contrast},
                  {"parity_phase_rad", par.phase},
                  {"parity_harmonic", par.harmonic},
                  {"parity_flagged", par.flagged}};

  const auto waits = cfg.get<std::vector<double>>("cat.wait_s");
  if (!waits.empty()) {
    if (!cfg.has_noise()) throw ConfigError("cat.wait_s", "a wait sweep needs noise.preset other than none");
    const NoiseModel noise = cfg.noise();
    std::ostringstream dc;
    dc << "tau_s,parity_contrast\n";
    for (double tau : waits) {
      if (tau < 0) throw ConfigError("cat.wait_s", "wait times must be non-negative");
      const double c = simulate_parity_oscillation(apply_dephasing(rho, tau, noise), q, n_phi, par.harmonic).contrast;
      dc << fmt(tau) << ',' << fmt(c) << '\n';
    }
    out.write("cat_decay.csv", dc.str());
  }

  json state = summary;
  state["state"] = vector_to_json(psi);
  state["target"] = vector_to_json(target);
  out.write_json("cat_state.json", state);
  return summary;
}

MatrixXc preset_state(const std::string& name, const RunConfig& cfg, const std::string& block) {
  const SpinQuantum q = cfg.spin();
  const std::string b = block + ".";
  if (name == "eigenstate") {
    const double m = cfg.get<double>(b + "m");
    if (std::abs(m) > q.I() || std::abs(std::remainder(q.I() - m, 1.0)) > 1e-12)
      throw ConfigError(b + "m", "not a valid m for this spin");
    return projector(basis_state(q, m));
  }
  if (name == "scs")
    return projector(VectorXc(spin_coherent_state(q, cfg.get<double>(b + "theta_rad"), cfg.get<double>(b + "phi_rad"))));
  if (name == "cat") {
    const std::string axis = cfg.get<std::string>(b + "axis");
    const double xi = cfg.get<double>(b + "xi_rad");
    if (axis == "z") return projector(z_cat(q, xi));
    if (axis == "x")
      return projector(VectorXc((spin_coherent_state(q, kPi / 2, 0.0) +
                                 std::polar(1.0, xi) * spin_coherent_state(q, kPi / 2, kPi)) /
                                std::sqrt(2.0)));
    throw ConfigError(b + "axis", "expected x or z");
  }
  if (name == "cat_z") return projector(z_cat(q, kPi / 2));
  if (name == "cat_x")
    return projector(VectorXc((spin_coherent_state(q, kPi / 2, 0.0) + kI * spin_coherent_state(q, kPi / 2, kPi)) /
                              std::sqrt(2.0)));
  if (name == "scs_x") return projector(VectorXc(spin_coherent_state(q, kPi / 2, 0.0)));
  if (name == "mixed") return MatrixXc::Identity(q.d(), q.d()) / double(q.d());
  if (name == "file") {
    const std::string path = cfg.get<std::string>(b + (block == "wigner" ? "file" : "rho_file"));
    std::ifstream in(path);
    if (!in) throw ConfigError(b + "file", "cannot open '" + path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(b + "file", e.what());
    }
    MatrixXc rho;
    try {
      const json& m = j.contains("rho") ? j.at("rho") : j;
      if (m.contains("re") && m.at("re").size() && m.at("re")[0].is_array()) rho = matrix_from_json(m);
      else rho = projector(vector_from_json(m.contains("state") ? m.at("state") : m));
    } catch (const std::exception& e) {
      throw ConfigError(b + "file", std::string("no density matrix or state: ") + e.what());
    }
    if (rho.rows() != q.d()) throw ConfigError(b + "file", "dimension does not match spin.two_I");
    try {
      validate_density_matrix(rho);
    } catch (const SpinError& e) {
      throw ConfigError(b + "file", e.what());
    }
    return rho;
  }
  throw ConfigError(block + ".state", "unknown preset '" + name + "' (eigenstate, scs, cat, cat_z, cat_x, scs_x, mixed, file)");
}

json cmd_tomography(const RunConfig& cfg, Output& out) {
  const SpinQuantum q = cfg.spin();
  const std::string mode = cfg.get<std::string>("tomography.mode");
  if (mode != "simulate" && mode != "reconstruct" && mode != "validate")
    throw ConfigError("tomography.mode", "expected simulate, reconstruct or validate");
  ExperimentDesign design = paper_design(q);
  design.shots_per_axis = cfg.get<int>("tomography.shots_per_axis");
  if (design.shots_per_axis < 1) throw ConfigError("tomography.shots_per_axis", "must be positive");
  const MatrixXc truth = preset_state(cfg.get<std::string>("tomography.state"), cfg, "tomography");

  const Efficiency eff = tomographic_efficiency(frame_superoperator(design, q));
  json summary = {{"mode", mode},
                  {"n_axes", design.n_axes()},
                  {"f_te", eff.f_te},
                  {"frame_rank", eff.rank},
                  {"f_te_two_design", two_design_efficiency(q)}};
  json jd = design;
  out.write_json("design.json", jd);

  ShotRecord rec;
  const std::string counts = cfg.get<std::string>("tomography.counts_file");
  if (mode == "simulate" || counts.empty()) {
    rec = simulate_shots(truth, design, q, cfg.seed());
    std::ostringstream os;
    write_counts_csv(os, rec);
    out.write("counts.csv", os.str());
  } else {
    std::ifstream in(counts);
    if (!in) throw ConfigError("tomography.counts_file", "cannot open '" + counts + "'");
    try {
      rec = read_counts_csv(in, design.n_axes(), q.d());
    } catch (const SpinError& e) {
      throw ConfigError("tomography.counts_file", e.what());
    }
    if (rec.total() != design.n_axes() * design.shots_per_axis)
      summary["warning"] = "record total differs from n_axes * shots_per_axis";
  }
  summary["shots"] = rec.total();
  if (mode == "simulate") {
    out.write_json("tomography.json", summary);
    return summary;
  }

  const MleResult m = mle_reconstruct(rec, design, q);
  if (!m.converged) throw NumericalError("MLE did not converge within the iteration limit");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(truth);
  summary["fidelity_to_target"] = fidelity(m.rho, VectorXc(es.eigenvectors().col(q.d() - 1)));
  summary["target_purity"] = (truth * truth).trace().real();
  summary["mle_iterations"] = m.iterations;
  summary["loglik"] = m.loglik;
  json jm = m;
  out.write_json("rho_mle.json", jm);

  if (mode == "validate") {
    BootstrapOptions bo;
    bo.n_samples = cfg.get<int>("tomography.bootstrap_samples");
    bo.seed = cfg.seed();
    if (bo.n_samples < 100) throw ConfigError("tomography.bootstrap_samples", "need at least 100");
    const ValidationReport v = parametric_bootstrap(rec, m.rho, design, q, bo);
    json jv = v;
    out.write_json("validation.json", jv);
    std::ostringstream os;
    os << "sample_index,lambda\n";
    for (std::size_t i = 0; i < v.null_samples.size(); ++i) os << i << ',' << fmt(v.null_samples[i]) << '\n';
    out.write("lambda_null.csv", os.str());
    summary["lambda_observed"] = v.lambda_observed;
    summary["p_value"] = v.p_value;
    summary["bootstrap_excluded"] = v.excluded;
  }
  out.write_json("tomography.json", summary);
  return summary;
}

json cmd_wigner(const RunConfig& cfg, Output& out) {
  const SpinQuantum q = cfg.spin();
  const MatrixXc rho = preset_state(cfg.get<std::string>("wigner.state"), cfg, "wigner");
  const std::string proj = cfg.get<std::string>("wigner.projection");
  const int nt = cfg.get<int>("wigner.n_theta"), np = cfg.get<int>("wigner.n_phi");
  if (nt < 2 || np < 2) throw ConfigError("wigner.n_theta", "grid needs at least 2 x 2 points");
  std::vector<Projection> views;
  if (proj == "both") views = {Projection::Hammer, Projection::Polar};
  else {
    if (proj != "hammer" && proj != "polar")
      throw ConfigError("wigner.projection", "expected hammer, polar or both, got '" + proj + "'");
    views = {parse_projection(proj)};
  }
  WignerGrid g = wigner_grid(rho, q, nt, np, views.front());
  std::ostringstream os;
  g.write_csv(os);
  out.write("wigner.csv", os.str());
  for (Projection v : views) {
    g.projection = v;
    out.write("wigner_" + to_string(v) + ".svg", wigner_svg(g, cfg.get<std::string>("wigner.state")));
  }
  const int n = 256;
  VectorXd cut(n);
  for (int j = 0; j < n; ++j) cut(j) = wigner_value(rho, q, kPi / 2, -kPi + kTwoPi * j / n);
  json summary = {{"state", cfg.get<std::string>("wigner.state")},
                  {"min", g.min()},
                  {"max", g.max()},
                  {"equator_dominant_harmonic", dominant_harmonic(cut)}};
  out.write_json("wigner.json", summary);
  return summary;
}

json cmd_catcode(const RunConfig& cfg, Output& out) {
  const auto spins = cfg.get<std::vector<int>>("catcode.two_I_list");
  const int max_power = cfg.get<int>("catcode.max_power");
  if (max_power < 0) throw ConfigError("catcode.max_power", "must be non-negative");
  json reports = json::array();
  for (int two_i : spins) {
    if (two_i < 1 || two_i > 20) throw ConfigError("catcode.two_I_list", "entries must lie in 1..20");
    const SpinQuantum q(two_i);
    json r = {{"two_I", two_i}};
    if (two_i % 2 == 0) {
      r["supported"] = false;
      r["reason"] = "integer spin";
      reports.push_back(r);
      continue;
    }
    const CodePair c = codewords(q);
    const KlReport kl = kl_check(c, iz_power_errors(q, max_power));
    const MatrixXc x = logical_gate(q, LogicalKind::X), z = logical_gate(q, LogicalKind::Z);
    const cplx z0 = c.zero_L.dot(z * c.zero_L), z1 = c.one_L.dot(z * c.one_L);
    const auto ops = spin_operators<double>(q);
    const BiasResult bz = bias_preservation_check(x, ops.iz);
    r["supported"] = true;
    r["kl"] = kl;
    r["x_swap_overlap"] = std::abs(c.one_L.dot(x * c.zero_L));
    r["z_relative_phase_rad"] = std::arg(z1 / z0);
    r["x_bias_iz"] = {{"c_re", bz.c.real()}, {"c_im", bz.c.imag()}, {"residual", bz.residual}};
    r["codeword_zero"] = vector_to_json(c.zero_L);
    r["codeword_one"] = vector_to_json(c.one_L);
    reports.push_back(r);
  }
  const json summary = {{"max_power", max_power}, {"codes", reports}};
  out.write_json("catcode.json", summary);
  json brief = json::array();
  for (const auto& r : reports)
    brief.push_back({{"two_I", r["two_I"]}, {"kl_pass", r.contains("kl") ? r["kl"]["pass"] : json(false)}});
  return brief;
}

json cmd_floquet(const RunConfig& cfg, Output& out) {
  const SpinQuantum q = cfg.spin();
  auto ratios = cfg.get<std::vector<double>>("floquet.ratios");
  if (ratios.empty())
    for (int i = 0; i <= 12; ++i) ratios.push_back(std::pow(10.0, -3.0 + i / 6.0));
  for (double r : ratios)
    if (!(r > 0)) throw ConfigError("floquet.ratios", "ratios must be positive");
  SweepOptions so;
  so.rabi_periods = cfg.get<double>("floquet.rabi_periods");
  so.samples_per_period = cfg.get<int>("floquet.samples_per_period");
  if (!(so.rabi_periods > 0) || so.samples_per_period < 4)
    throw ConfigError("floquet", "rabi_periods must be positive and samples_per_period >= 4");

  std::vector<SweepMethod> methods;
  for (const auto& m : cfg.get<std::vector<std::string>>("floquet.methods")) {
    try {
      methods.push_back(parse_sweep_method(m));
    } catch (const SpinError& e) {
      throw ConfigError("floquet.methods", e.what());
    }
  }
  if (methods.empty()) throw ConfigError("floquet.methods", "at least one method");

  std::ostringstream os;
  os << "ratio_frabi_over_fq,contrast_max_iz_over_I,method,flagged\n";
  std::vector<svg::Series> curves;
  json fits = json::object();
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const SweepResult r = contrast_sweep(ratios, methods[mi], so, q);
    std::ostringstream part;
    r.write_csv(part);
    const std::string body = part.str();
    os << body.substr(body.find('\n') + 1);
    svg::Series s{to_string(methods[mi]), {}, {}, kPalette[mi % 10], true};
    std::vector<double> x, y;
    for (std::size_t i = 0; i < r.ratios.size(); ++i) {
      const double loss = 1 - r.contrast[i];
      if (loss > 0 && !r.flagged[i]) {
        s.x.push_back(r.ratios[i]);
        s.y.push_back(loss);
        x.push_back(r.ratios[i]);
        y.push_back(loss);
      }
    }
    curves.push_back(s);
    const PowerLawFit f = fit_power_law(x, y);
    fits[to_string(methods[mi])] = {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"points", f.points}};
  }
  out.write("floquet.csv", os.str());
  svg::PlotSpec spec = labels("cross-coupling contrast loss", "f_Rabi / f_q", "1 - max<Iz>/I");
  spec.logx = spec.logy = true;
  spec.vlines = {1e-2};
  out.write("floquet.svg", svg::line_plot(curves, spec));
  const json summary = {{"operating_point_ratio", 1e-2}, {"fits", fits}};
  out.write_json("floquet.json", summary);
  return summary;
}

}  // namespace spinqudit::cli
