// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: one JSON document laid over built-in defaults. Keys
// carry their unit as a suffix (_s, _Hz, _T, _rad, _mV).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinqudit/dynamics.hpp"
#include "spinqudit/io.hpp"

namespace spinqudit::cli {

// Schema violation; `path` is the dotted key that failed.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

json default_config();

class RunConfig {
 public:
  RunConfig() : doc_(default_config()) {}
  static RunConfig from_file(const std::string& path);
  static RunConfig from_json(const json& overlay);

  // key.sub=value; value parsed as JSON when possible, else taken as a string
  void set(const std::string& assignment);
  void merge(const json& overlay);

  const json& doc() const { return doc_; }
  const json& at(const std::string& dotted) const;
  template <typename T>
  T get(const std::string& dotted) const {
    try {
      return at(dotted).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(dotted, e.what());
    }
  }

  SpinQuantum spin() const;
  StaticParams static_params() const;
  NoiseModel noise() const;  // t2 = +inf everywhere for preset "none"
  bool has_noise() const { return get<std::string>("noise.preset") != "none"; }
  std::uint64_t seed() const { return get<std::uint64_t>("seed"); }
  std::string output_dir() const { return get<std::string>("output_dir"); }

  // FNV-1a over the canonical (sorted-key) dump, output_dir excluded
  std::string hash() const;

 private:
  json doc_;
};

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::string version;
  std::uint64_t seed = 0;
  std::vector<std::string> files;
  double wall_time_s = 0;

  json to_json() const;
};

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace spinqudit::cli
