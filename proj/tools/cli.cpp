// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace spinqudit::cli {

namespace {

using Command = json (*)(const RunConfig&, Output&);

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Spin qudit simulator: control, cat states, Wigner maps, tomography, cat code, cross-coupling."};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_file, out_dir;
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  int threads = 0;
  bool quiet = false;
  app.add_option("-c,--config", config_file, "JSON config laid over the defaults");
  app.add_option("-s,--set", overrides, "dotted override, e.g. static.b0_T=1.2")->take_all();
  app.add_option("-o,--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads (sets SPINQUDIT_THREADS)");
  app.add_flag("-q,--quiet", quiet, "no summary on stdout");

  struct Sub {
    const char* name;
    const char* help;
    Command run;
    std::vector<Flag> flags;
  };
  const std::vector<Sub> subs = {
      {"rabi", "covariant or subspace Rabi oscillation", cmd_rabi,
       {{"--mode", "rabi.mode", "covariant | subspace"}, {"--subspace", "rabi.subspace_two_I", "2I' of the sub-spin"}}},
      {"cat", "cat-state preparation and parity readout", cmd_cat,
       {{"--method", "cat.method", "givens | snap"},
        {"--orient", "cat.orient", "x | z"},
        {"--subspace", "cat.subspace_two_I", "2I' of the sub-spin"}}},
      {"tomography", "shot simulation, MLE and bootstrap validation", cmd_tomography,
       {{"--mode", "tomography.mode", "simulate | reconstruct | validate"},
        {"--state", "tomography.state", "eigenstate | scs | cat | cat_z | cat_x | scs_x | mixed | file"},
        {"--counts", "tomography.counts_file", "counts CSV (axis_index,outcome,count)"}}},
      {"wigner", "spin Wigner map of a preset state", cmd_wigner,
       {{"--state", "wigner.state", "eigenstate | scs | cat | cat_z | cat_x | scs_x | mixed | file"},
        {"--projection", "wigner.projection", "hammer | polar | both"}}},
      {"catcode", "Knill-Laflamme and logical-gate checks of the spin-cat code", cmd_catcode, {}},
      {"floquet", "cross-coupling contrast sweep", cmd_floquet, {}},
  };

  std::vector<std::pair<std::string, std::string>> flag_values;
  std::vector<std::vector<std::string>> storage(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* sc = app.add_subcommand(subs[i].name, subs[i].help);
    storage[i].resize(subs[i].flags.size());
    for (std::size_t k = 0; k < subs[i].flags.size(); ++k)
      sc->add_option(subs[i].flags[k].name, storage[i][k], subs[i].flags[k].help);
  }
  app.add_subcommand("config", "print the merged configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunConfig cfg = config_file.empty() ? RunConfig{} : RunConfig::from_file(config_file);
    for (const auto& o : overrides) cfg.set(o);
    if (!out_dir.empty()) cfg.set("output_dir=" + json(out_dir).dump());
    if (seed >= 0) cfg.set("seed=" + std::to_string(seed));
    if (threads > 0) setenv("SPINQUDIT_THREADS", std::to_string(threads).c_str(), 1);

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->get_name() == "config") {
      std::cout << cfg.doc().dump(2) << '\n';
      return 0;
    }
    std::size_t idx = 0;
    while (subs[idx].name != chosen->get_name()) ++idx;
    for (std::size_t k = 0; k < subs[idx].flags.size(); ++k)
      if (chosen->count(subs[idx].flags[k].name)) {
        const std::string& v = storage[idx][k];
        const json parsed = json::parse(v, nullptr, false);
        cfg.set(std::string(subs[idx].flags[k].key) + "=" + (parsed.is_discarded() ? json(v).dump() : v));
      }

    Output out(cfg.output_dir());
    const json summary = subs[idx].run(cfg, out);
    RunManifest man;
    man.command = subs[idx].name;
    man.config_hash = cfg.hash();
    man.seed = cfg.seed();
    man.files = out.files();
    man.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json jm = man.to_json();
    jm["config"] = cfg.doc();
    out.write_json("manifest.json", jm);
    if (!quiet) std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const SpinError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace spinqudit::cli
