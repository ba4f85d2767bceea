// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace spinqudit::cli {

// Collects files written under one output directory.
class Output {
 public:
  explicit Output(std::string dir);
  void write(const std::string& name, const std::string& contents);
  void write_json(const std::string& name, const json& j);
  const std::string& dir() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::string dir_;
  std::vector<std::string> files_;
};

// Each command writes its files through `out`; a small summary is returned
// for the terminal.
json cmd_rabi(const RunConfig& cfg, Output& out);
json cmd_cat(const RunConfig& cfg, Output& out);
json cmd_tomography(const RunConfig& cfg, Output& out);
json cmd_wigner(const RunConfig& cfg, Output& out);
json cmd_catcode(const RunConfig& cfg, Output& out);
json cmd_floquet(const RunConfig& cfg, Output& out);

// Named state presets shared by wigner and tomography.
MatrixXc preset_state(const std::string& name, const RunConfig& cfg, const std::string& block);

// Full command line: parses, runs, writes manifest.json. Returns the exit
// code (0 ok, 2 config error, 3 numerical failure).
int run_cli(int argc, const char* const* argv);

}  // namespace spinqudit::cli
