// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <limits>

#ifndef SPINQUDIT_VERSION
#define SPINQUDIT_VERSION "0.0.0"
#endif

namespace spinqudit::cli {

json default_config() {
  return json::parse(R"({
    "spin": {"two_I": 7},
    "static": {"b0_T": 1.384, "gamma_n_Hz_per_T": 5.55e6, "f_q_Hz": 28000.0},
    "calibration": {"kappa_Hz_per_mV": 7.148},
    "noise": {
      "preset": "none",
      "t2_s": 0.015,
      "alpha": 1.0,
      "zeeman_rate_Hz": 9.524,
      "quad_rate_Hz": 2.5,
      "readout_flip": 0.0
    },
    "seed": 1,
    "output_dir": "out",
    "rabi": {
      "mode": "covariant",
      "subspace_two_I": 7,
      "amplitude_mV": 22.86,
      "duration_s": 0.0125,
      "samples": 400,
      "sweep_mV": []
    },
    "cat": {
      "method": "givens",
      "orient": "z",
      "subspace_two_I": 7,
      "f_rabi_Hz": 163.4,
      "n_phi": 128,
      "wait_s": []
    },
    "tomography": {
      "mode": "simulate",
      "state": "cat_z",
      "m": 0.5,
      "theta_rad": 1.5707963267948966,
      "phi_rad": 0.0,
      "axis": "z",
      "xi_rad": 1.5707963267948966,
      "shots_per_axis": 15,
      "counts_file": "",
      "rho_file": "",
      "bootstrap_samples": 1000
    },
    "wigner": {
      "state": "eigenstate",
      "m": 0.5,
      "theta_rad": 1.5707963267948966,
      "phi_rad": 0.0,
      "axis": "z",
      "xi_rad": 3.141592653589793,
      "file": "",
      "projection": "hammer",
      "n_theta": 181,
      "n_phi": 361
    },
    "catcode": {"two_I_list": [7, 5, 3, 1], "max_power": 3},
    "floquet": {
      "ratios": [],
      "methods": ["exact", "magnus1"],
      "rabi_periods": 8.0,
      "samples_per_period": 400
    }
  })");
}

namespace {

const char* kind(const json& j) {
  if (j.is_boolean()) return "boolean";
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  if (j.is_object()) return "object";
  return "null";
}

// Overlay `src` onto `dst`, which holds the schema defaults.
void overlay(json& dst, const json& src, const std::string& prefix) {
  if (!src.is_object()) throw ConfigError(prefix, "expected an object");
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!dst.contains(it.key())) throw ConfigError(path, "unknown key");
    json& slot = dst[it.key()];
    if (slot.is_object()) {
      overlay(slot, it.value(), path);
      continue;
    }
    const bool ok = (slot.is_number() && it->is_number()) || std::string(kind(slot)) == kind(*it);
    if (!ok) throw ConfigError(path, std::string("expected ") + kind(slot) + ", got " + kind(*it));
    if (slot.is_number_integer() && it->is_number_float()) throw ConfigError(path, "expected an integer");
    if (slot.is_number_unsigned() && !it->is_number_unsigned())
      throw ConfigError(path, "expected a non-negative integer");
    slot = *it;
  }
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("", "config file '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.merge(j);
  return c;
}

void RunConfig::merge(const json& j) { overlay(doc_, j, ""); }

void RunConfig::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must read key=value");
  const std::string key = assignment.substr(0, eq), raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1))
    parts.push_back(rest.substr(0, pos));
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  merge(patch);
}

const json& RunConfig::at(const std::string& dotted) const {
  const json* cur = &doc_;
  std::string rest = dotted;
  while (true) {
    const auto pos = rest.find('.');
    const std::string k = rest.substr(0, pos);
    if (!cur->is_object() || !cur->contains(k)) throw ConfigError(dotted, "missing key");
    cur = &(*cur)[k];
    if (pos == std::string::npos) return *cur;
    rest = rest.substr(pos + 1);
  }
}

SpinQuantum RunConfig::spin() const {
  const int two_i = get<int>("spin.two_I");
  if (two_i < 1 || two_i > 20) throw ConfigError("spin.two_I", "must lie in 1..20");
  return SpinQuantum(two_i);
}

StaticParams RunConfig::static_params() const {
  const auto p = StaticParams::with_fq(get<double>("static.b0_T"), get<double>("static.gamma_n_Hz_per_T"),
                                       get<double>("static.f_q_Hz"));
  try {
    p.validate();
  } catch (const SpinError& e) {
    throw ConfigError("static", e.what());
  }
  return p;
}

NoiseModel RunConfig::noise() const {
  const SpinQuantum q = spin();
  const std::string preset = get<std::string>("noise.preset");
  const double alpha = get<double>("noise.alpha");
  NoiseModel n;
  if (preset == "none") {
    n = NoiseModel::uniform(q, std::numeric_limits<double>::infinity());
  } else if (preset == "uniform") {
    n = NoiseModel::uniform(q, get<double>("noise.t2_s"), alpha);
  } else if (preset == "channels") {
    n = NoiseModel::from_channels(q, get<double>("noise.zeeman_rate_Hz"), get<double>("noise.quad_rate_Hz"), alpha);
  } else if (preset == "deviceA") {
    // magnetic-like rate fixed by the 15 ms z-cat T2*, quadrupole rate illustrative
    n = NoiseModel::from_channels(q, 1.0 / (q.two_I * 0.015), 2.5, 1.0);
  } else {
    throw ConfigError("noise.preset", "unknown preset '" + preset + "' (none, uniform, channels, deviceA)");
  }
  n.readout_flip = get<double>("noise.readout_flip");
  try {
    n.validate(q);
  } catch (const SpinError& e) {
    throw ConfigError("noise", e.what());
  }
  return n;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string RunConfig::hash() const {
  json physics = doc_;
  physics.erase("output_dir");  // where results go does not change them
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(physics.dump())));
  return buf;
}

json RunManifest::to_json() const {
  return {{"command", command},       {"config_hash", config_hash}, {"version", version.empty() ? SPINQUDIT_VERSION : version},
          {"seed", seed},             {"files", files},             {"wall_time_s", wall_time_s}};
}

}  // namespace spinqudit::cli
