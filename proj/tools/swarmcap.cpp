#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "swarmcap/experiment.hpp"
#include "swarmcap/oracle.hpp"

namespace {

struct CommonFlags {
  std::string config_file;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* app, CommonFlags& flags) {
  app->add_option("--config", flags.config_file, "flat key = value config file");
  auto override_opt = [app, &flags](const std::string& flag, const std::string& key,
                                    const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
  };
  override_opt("--uavs", "uavs", "number of UAVs");
  override_opt("--ura-nx", "ura_nx", "antennas on x");
  override_opt("--ura-ny", "ura_ny", "antennas on y");
  override_opt("--ura-spacing", "ura_spacing", "antenna spacing [m]");
  override_opt("--volume-x", "volume_x", "volume x extent [m]");
  override_opt("--volume-y", "volume_y", "volume y extent [m]");
  override_opt("--volume-z", "volume_z", "volume z extent [m]");
  override_opt("--lattice-step", "lattice_step", "lattice step [m]");
  override_opt("--comm-radius", "comm_radius", "communication radius [m]");
  override_opt("--wavelength", "wavelength", "carrier wavelength [m]");
  override_opt("--beta0", "beta0", "initial learning parameter");
  override_opt("--beta-step", "beta_step", "per-iteration beta increment");
  override_opt("--temperature-rule", "temperature_rule", "inverse-beta | fixed");
  override_opt("--temperature-scale", "temperature_scale", "T = 1/(scale*beta)");
  override_opt("--fixed-temperature", "fixed_temperature", "fixed T (0 = best reply)");
  override_opt("--iterations", "iterations", "iterations per run");
  override_opt("--snr-db", "snr_db", "comma-separated SNR list [dB]");
  override_opt("--strategies", "strategies", "comma-separated strategy list");
  override_opt("--snapshot-interval", "snapshot_interval", "iterations between snapshots");
  override_opt("--stop-threshold", "stop_threshold", "stay-probability stop threshold");
  override_opt("--dynamic-graph", "dynamic_graph", "recompute the graph after moves");
  override_opt("--out", "out", "output directory (default $SWARMCAP_OUT or ./out)");
}

swarmcap::ExperimentConfig load(const CommonFlags& flags, const std::string& seed_list,
                                long seed_count) {
  auto overrides = flags.overrides;
  if (!seed_list.empty()) overrides["seeds"] = seed_list;
  if (seed_count > 0) {
    std::string s;
    for (long i = 1; i <= seed_count; ++i) {
      if (!s.empty()) s += ",";
      s += std::to_string(i);
    }
    overrides["seeds"] = s;
  }
  return swarmcap::parse_config(flags.config_file, overrides);
}

int cmd_run(const swarmcap::ExperimentConfig& cfg) {
  const auto result = swarmcap::run_experiment(cfg);
  swarmcap::write_outputs(cfg, result, cfg.out_dir);
  for (size_t si = 0; si < cfg.strategies.size(); ++si) {
    for (size_t ki = 0; ki < cfg.seeds.size(); ++ki) {
      const auto& rec = result.records[si][ki];
      if (rec.iterations_executed == 0) continue;
      std::cout << swarmcap::run_basename(rec) << ": " << rec.iterations_executed
                << " iterations, stop=" << rec.stop_reason
                << ", final phi=" << rec.phi.back()
                << ", final rank=" << rec.rank.back() << "\n";
    }
  }
  if (!result.ok()) {
    std::cerr << result.failures.size() << " run(s) failed; see failures.json\n";
    return 1;
  }
  std::cout << "outputs written to " << cfg.out_dir << "\n";
  return 0;
}

int cmd_oracle(const swarmcap::ExperimentConfig& cfg, const std::string& beta_list,
               int audit_trials) {
  swarmcap::OracleInstance inst;
  swarmcap::CorrelationCache cache(inst.volume, inst.array, inst.wavelength);

  std::vector<double> betas = {2.0, 4.0, 6.0, 8.0};
  if (!beta_list.empty()) {
    betas.clear();
    std::stringstream ss(beta_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) betas.push_back(std::stod(tok));
  }

  const auto stability = swarmcap::verify_stochastic_stability(inst, betas, cache);
  std::cout << "stochastic stability (M=" << inst.uavs << ", "
            << inst.volume.nx << "x" << inst.volume.ny << "x" << inst.volume.nz
            << " lattice):\n";
  for (size_t i = 0; i < betas.size(); ++i) {
    std::cout << "  beta=" << betas[i]
              << "  mass on potential maximizers=" << stability.maximizer_mass[i] << "\n";
  }
  std::cout << "  monotone over the beta grid: " << (stability.monotone ? "yes" : "no")
            << "\n";

  auto space = swarmcap::enumerate_states(inst);
  const auto rows = swarmcap::resistance_regression(space, cache, std::exp(-2.0),
                                                    {4.0, 6.0, 8.0}, 0.6);
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.rel_err);
  std::cout << "resistance regression over " << rows.size()
            << " transitions: worst relative error=" << worst << "\n";

  const double audit = swarmcap::exact_potential_audit(cfg, audit_trials, 12345);
  std::cout << "exact potential audit (" << audit_trials
            << " trials): max scaled |dR - dphi|=" << audit << "\n";

  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / "oracle_report.json";
  std::ofstream f(path);
  f << swarmcap::oracle_report_json(inst, stability, rows).dump(2) << "\n";
  std::cout << "report written to " << path.string() << "\n";
  return 0;
}

int cmd_figures(const swarmcap::ExperimentConfig& cfg, const std::string& figs) {
  std::vector<int> wanted;
  if (figs == "all" || figs.empty()) {
    wanted = {3, 4, 5, 6, 7};
  } else {
    std::stringstream ss(figs);
    std::string tok;
    while (std::getline(ss, tok, ',')) wanted.push_back(std::stoi(tok));
  }
  // fig4 compares strategies; make sure the baselines are present
  swarmcap::ExperimentConfig run_cfg = cfg;
  if (std::find(wanted.begin(), wanted.end(), 4) != wanted.end()) {
    for (auto kind : {swarmcap::StrategyKind::learning,
                      swarmcap::StrategyKind::random_moving,
                      swarmcap::StrategyKind::static_deployment}) {
      if (std::find(run_cfg.strategies.begin(), run_cfg.strategies.end(), kind) ==
          run_cfg.strategies.end()) {
        run_cfg.strategies.push_back(kind);
      }
    }
  }
  const auto result = swarmcap::run_experiment(run_cfg);
  if (!result.ok()) {
    for (const auto& f : result.failures) std::cerr << "run failed: " << f << "\n";
    return 1;
  }
  for (int fig : wanted) {
    for (const auto& path :
         swarmcap::emit_figure_data(run_cfg, result, fig, run_cfg.out_dir)) {
      std::cout << "wrote " << path.string() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized UAV swarm deployment simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string seed_list;
  long seed_count = 0;
  std::string beta_list;
  std::string figs;
  int audit_trials = 200;

  auto* run_cmd = app.add_subcommand("run", "run the configured experiment");
  add_common(run_cmd, flags);
  run_cmd->add_option("--seed", seed_list, "comma-separated seed list");
  run_cmd->add_option("--seeds", seed_count, "use seeds 1..N");

  auto* oracle_cmd = app.add_subcommand("oracle", "equilibrium oracle suites");
  add_common(oracle_cmd, flags);
  oracle_cmd->add_option("--betas", beta_list, "beta grid (default 2,4,6,8)");
  oracle_cmd->add_option("--audit-trials", audit_trials,
                         "exact-potential audit trials (default 200)");

  auto* fig_cmd = app.add_subcommand("figures", "emit figure data files");
  add_common(fig_cmd, flags);
  fig_cmd->add_option("--seed", seed_list, "comma-separated seed list");
  fig_cmd->add_option("--seeds", seed_count, "use seeds 1..N");
  fig_cmd->add_option("--figs", figs, "figure ids, e.g. 3,4,7 (default all)");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = load(flags, seed_list, seed_count);
    if (run_cmd->parsed()) return cmd_run(cfg);
    if (oracle_cmd->parsed()) return cmd_oracle(cfg, beta_list, audit_trials);
    if (fig_cmd->parsed()) return cmd_figures(cfg, figs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
