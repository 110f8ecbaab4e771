#pragma once

#include <filesystem>

#include "swarmcap/engine.hpp"

namespace swarmcap {

struct ExperimentResult {
  // records[strategy index][seed index], in config order
  std::vector<std::vector<RunRecord>> records;
  std::vector<std::string> failures;  // "strategy/seed: what()"

  bool ok() const { return failures.empty(); }
  const RunRecord& record(size_t strategy_idx, size_t seed_idx) const {
    return records[strategy_idx][seed_idx];
  }
};

// One run per (seed, strategy) on a small worker pool; workers share only
// the immutable config.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                unsigned workers = 0);

// File emission (single collector). Per-run CSV time series + JSON
// summary, per-strategy aggregate CSV (mean and std over seeds at each
// iteration), and a failure manifest when runs failed.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                   const std::filesystem::path& out_dir);

std::string run_csv(const ExperimentConfig& cfg, const RunRecord& rec);
nlohmann::json run_summary_json(const ExperimentConfig& cfg, const RunRecord& rec);
std::string aggregate_csv(const ExperimentConfig& cfg,
                          const std::vector<RunRecord>& seed_records);

std::string run_basename(const RunRecord& rec);  // "run_<strategy>_seed<seed>"

// Figure-specific flat files (3: stay probability, 4: reward comparison,
// 5: initial/final positions, 6: rank, 7: capacity with moving-average
// trend). Returns the files written.
std::vector<std::filesystem::path> emit_figure_data(
    const ExperimentConfig& cfg, const ExperimentResult& result, int figure,
    const std::filesystem::path& out_dir);

// Centered moving average; window is clipped at the series edges.
std::vector<double> moving_average(const std::vector<double>& series, int window);

}  // namespace swarmcap
