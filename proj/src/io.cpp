// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace spinqudit {

json matrix_to_json(const MatrixXc& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> a(m.cols()), b(m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) a[c] = m(r, c).real(), b[c] = m(r, c).imag();
    re.push_back(a);
    im.push_back(b);
  }
  return {{"re", re}, {"im", im}};
}

MatrixXc matrix_from_json(const json& j) {
  const auto re = j.at("re").get<std::vector<std::vector<double>>>();
  const auto im = j.at("im").get<std::vector<std::vector<double>>>();
  if (re.size() != im.size()) throw SpinError("matrix: re/im row count differs");
  const Eigen::Index rows = re.size(), cols = rows ? re[0].size() : 0;
  MatrixXc m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (Eigen::Index(re[r].size()) != cols || Eigen::Index(im[r].size()) != cols)
      throw SpinError("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {re[r][c], im[r][c]};
  }
  return m;
}

json vector_to_json(const VectorXc& v) {
  std::vector<double> re(v.size()), im(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) re[k] = v(k).real(), im[k] = v(k).imag();
  return {{"re", re}, {"im", im}};
}

VectorXc vector_from_json(const json& j) {
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (re.size() != im.size()) throw SpinError("vector: re/im length differs");
  VectorXc v(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) v(k) = {re[k], im[k]};
  return v;
}

void to_json(json& j, const Axis& a) { j = {{"theta_rad", a.theta}, {"phi_rad", a.phi}}; }
void from_json(const json& j, Axis& a) {
  a.theta = j.at("theta_rad").get<double>();
  a.phi = j.at("phi_rad").get<double>();
}

void to_json(json& j, const ExperimentDesign& d) {
  j = {{"axes", d.axes}, {"shots_per_axis", d.shots_per_axis}};
}
void from_json(const json& j, ExperimentDesign& d) {
  d.axes = j.at("axes").get<std::vector<Axis>>();
  d.shots_per_axis = j.at("shots_per_axis").get<int>();
  d.validate();
}

void to_json(json& j, const ShotRecord& r) {
  json rows = json::array();
  for (Eigen::Index a = 0; a < r.counts.rows(); ++a) {
    std::vector<int> row(r.counts.cols());
    for (Eigen::Index k = 0; k < r.counts.cols(); ++k) row[k] = r.counts(a, k);
    rows.push_back(row);
  }
  j = {{"seed", r.seed}, {"counts", rows}};
}
void from_json(const json& j, ShotRecord& r) {
  const auto rows = j.at("counts").get<std::vector<std::vector<int>>>();
  r.seed = j.value("seed", std::uint64_t{0});
  const Eigen::Index n = rows.size(), d = n ? rows[0].size() : 0;
  r.counts.resize(n, d);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (Eigen::Index(rows[a].size()) != d) throw SpinError("shot record: ragged counts");
    for (Eigen::Index k = 0; k < d; ++k) r.counts(a, k) = rows[a][k];
  }
}

void to_json(json& j, const MleResult& r) {
  j = {{"rho", matrix_to_json(r.rho)},
       {"loglik", r.loglik},
       {"iterations", r.iterations},
       {"converged", r.converged}};
}

void to_json(json& j, const ValidationReport& r) {
  j = {{"lambda_observed", r.lambda_observed},
       {"null_samples", r.null_samples},
       {"p_value", r.p_value},
       {"dof_nominal", r.dof_nominal},
       {"excluded", r.excluded}};
}

void to_json(json& j, const KlReport& r) {
  j = {{"c_matrix", matrix_to_json(r.c)},
       {"max_offdiag_violation", r.max_offdiag_violation},
       {"max_diag_mismatch", r.max_diag_mismatch},
       {"pass", r.pass}};
}

void to_json(json& j, const DriveTone& t) {
  j = {{"f_hz", t.f}, {"phase_rad", t.phase}, {"b1_t", t.b1}, {"transition", t.transition}};
}
void from_json(const json& j, DriveTone& t) {
  t.f = j.at("f_hz").get<double>();
  t.phase = j.value("phase_rad", 0.0);
  t.b1 = j.at("b1_t").get<double>();
  t.transition = j.at("transition").get<int>();
}

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

void to_json(json& j, const PulseSchedule& s) {
  j = json::array();
  for (const auto& seg : s.segments)
    std::visit(overloaded{[&](const PulseSegment& p) {
                            j.push_back({{"type", "pulse"}, {"duration_s", p.duration}, {"tones", p.tones}});
                          },
                          [&](const FrameUpdate& f) {
                            j.push_back({{"type", "frame_update"},
                                         {"delta_phi_rad", std::vector<double>(f.delta_phi.data(),
                                                                               f.delta_phi.data() +
                                                                                   f.delta_phi.size())}});
                          },
                          [&](const WaitSegment& w) {
                            j.push_back({{"type", "wait"}, {"duration_s", w.duration}});
                          }},
               seg);
}

void from_json(const json& j, PulseSchedule& s) {
  if (!j.is_array()) throw SpinError("schedule: expected an array of segments");
  s.segments.clear();
  for (const auto& e : j) {
    const std::string type = e.at("type").get<std::string>();
    if (type == "pulse") {
      s.pulse(e.at("duration_s").get<double>(), e.at("tones").get<std::vector<DriveTone>>());
    } else if (type == "frame_update") {
      const auto v = e.at("delta_phi_rad").get<std::vector<double>>();
      s.frame_update(Eigen::Map<const VectorXd>(v.data(), v.size()));
    } else if (type == "wait") {
      s.wait(e.at("duration_s").get<double>());
    } else {
      throw SpinError("schedule: unknown segment type '" + type + "'");
    }
  }
}

void write_counts_csv(std::ostream& os, const ShotRecord& r) {
  os << "axis_index,outcome,count\n";
  for (Eigen::Index a = 0; a < r.counts.rows(); ++a)
    for (Eigen::Index k = 0; k < r.counts.cols(); ++k) os << a << ',' << k << ',' << r.counts(a, k) << '\n';
}

ShotRecord read_counts_csv(std::istream& is, int n_axes, int d) {
  ShotRecord r;
  r.counts = Eigen::MatrixXi::Zero(n_axes, d);
  std::string line;
  std::getline(is, line);  // header
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int a, k, c;
    char c1, c2;
    if (!(ls >> a >> c1 >> k >> c2 >> c) || c1 != ',' || c2 != ',')
      throw SpinError("counts csv: malformed line " + std::to_string(lineno));
    if (a < 0 || a >= n_axes || k < 0 || k >= d)
      throw SpinError("counts csv: index out of range on line " + std::to_string(lineno));
    r.counts(a, k) = c;
  }
  return r;
}

}  // namespace spinqudit
