#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swarmcap/geometry.hpp"
#include "swarmcap/schedule.hpp"

namespace swarmcap {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full experiment configuration. Defaults reproduce the reference setup:
// 10 UAVs, 8x8 URA at 5 cm spacing, 100x100x120 m volume on a 5 m
// lattice, 50 m communication radius, 1 cm wavelength, beta 0.01 + 0.001t,
// 500 iterations.
struct ExperimentConfig {
  int uavs = 10;
  int ura_nx = 8;
  int ura_ny = 8;
  double ura_spacing = 0.05;
  double volume_x = 100.0;
  double volume_y = 100.0;
  double volume_z = 120.0;
  double lattice_step = 5.0;
  double comm_radius = 50.0;
  double wavelength = 0.01;
  LearningSchedule schedule;
  long iterations = 500;
  std::vector<double> snr_db = {0.0, 10.0, 20.0};
  std::vector<StrategyKind> strategies = {StrategyKind::learning};
  std::vector<std::uint64_t> seeds = {1};
  std::string out_dir;  // resolved against SWARMCAP_OUT, else "./out"
  long snapshot_interval = 0;  // 0 = only initial/final snapshots
  double stop_threshold = 1e-3;
  bool dynamic_graph = false;
  int connect_retries = 1000;

  FlightVolume volume() const {
    return FlightVolume::from_meters(volume_x, volume_y, volume_z, lattice_step);
  }
  AntennaArray array() const;
  std::vector<double> snr_linear() const;

  void validate() const;

  // Canonical "key = value" echo, one line per key, sorted. Hash of this
  // text identifies the configuration in every output file.
  std::string echo() const;
  std::uint64_t hash() const;
};

// Flat key = value file ('#' comments). Later sources win: defaults, then
// file, then overrides.
ExperimentConfig parse_config(const std::string& file_path,
                              const std::map<std::string, std::string>& overrides = {});
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::map<std::string, std::string>& overrides = {});

void apply_config_key(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

std::string default_out_dir();

}  // namespace swarmcap
