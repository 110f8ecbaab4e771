#include "swarmcap/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace swarmcap {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  cfg.validate();
  const size_t n_strategies = cfg.strategies.size();
  const size_t n_seeds = cfg.seeds.size();

  struct Job {
    size_t strategy_idx;
    size_t seed_idx;
  };
  std::vector<Job> jobs;
  for (size_t si = 0; si < n_strategies; ++si) {
    for (size_t ki = 0; ki < n_seeds; ++ki) jobs.push_back({si, ki});
  }

  ExperimentResult result;
  result.records.assign(n_strategies, std::vector<RunRecord>(n_seeds));

  if (workers == 0) {
    workers = std::max(1u, std::min(static_cast<unsigned>(jobs.size()),
                                    std::thread::hardware_concurrency()));
  }

  std::atomic<size_t> next_job{0};
  std::mutex failure_mutex;
  auto worker = [&]() {
    while (true) {
      const size_t i = next_job.fetch_add(1);
      if (i >= jobs.size()) return;
      const Job job = jobs[i];
      try {
        result.records[job.strategy_idx][job.seed_idx] =
            run_strategy(cfg, cfg.strategies[job.strategy_idx], cfg.seeds[job.seed_idx]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        result.failures.push_back(strategy_name(cfg.strategies[job.strategy_idx]) +
                                  "/seed" + std::to_string(cfg.seeds[job.seed_idx]) +
                                  ": " + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::sort(result.failures.begin(), result.failures.end());
  return result;
}

std::string run_basename(const RunRecord& rec) {
  return "run_" + strategy_name(rec.strategy) + "_seed" + std::to_string(rec.seed);
}

std::string run_csv(const ExperimentConfig& cfg, const RunRecord& rec) {
  std::ostringstream os;
  os << "# config_hash=" << hash_hex(rec.config_hash) << "\n";
  os << "# seed=" << rec.seed << "\n";
  os << "# strategy=" << strategy_name(rec.strategy) << "\n";
  os << "iter,phi,mean_reward,rank";
  for (double db : cfg.snr_db) os << ",capacity@" << num(db) << "dB";
  os << "\n";
  for (long t = 0; t < rec.iterations_executed; ++t) {
    os << (t + 1) << "," << num(rec.phi[t]) << "," << num(rec.mean_reward[t]) << ","
       << rec.rank[t];
    for (double c : rec.capacity_bits[t]) os << "," << num(c);
    os << "\n";
  }
  return os.str();
}

nlohmann::json run_summary_json(const ExperimentConfig& cfg, const RunRecord& rec) {
  nlohmann::json j;
  j["config"] = cfg.echo();
  j["config_hash"] = hash_hex(rec.config_hash);
  j["seed"] = rec.seed;
  j["strategy"] = strategy_name(rec.strategy);
  j["stop_reason"] = rec.stop_reason;
  j["iterations_executed"] = rec.iterations_executed;
  j["initial_state"] = state_to_json(rec.initial_state);
  j["final_state"] = state_to_json(rec.final_state);
  if (rec.iterations_executed > 0) {
    j["final_phi"] = rec.phi.back();
    j["final_mean_reward"] = rec.mean_reward.back();
    j["final_rank"] = rec.rank.back();
    j["final_capacity_bits"] = rec.capacity_bits.back();
  }
  if (!rec.snapshots.empty()) {
    auto snaps = nlohmann::json::array();
    for (const auto& [iter, positions] : rec.snapshots) {
      auto pos = nlohmann::json::array();
      for (const auto& p : positions) pos.push_back({p.x, p.y, p.z});
      snaps.push_back({{"iter", iter}, {"positions", pos}});
    }
    j["snapshots"] = snaps;
  }
  return j;
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd ms;
  if (xs.empty()) return ms;
  for (double x : xs) ms.mean += x;
  ms.mean /= xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - ms.mean) * (x - ms.mean);
  ms.std_dev = std::sqrt(var / xs.size());
  return ms;
}

}  // namespace

std::string aggregate_csv(const ExperimentConfig& cfg,
                          const std::vector<RunRecord>& seed_records) {
  long common = seed_records.empty() ? 0 : seed_records[0].iterations_executed;
  for (const auto& r : seed_records) common = std::min(common, r.iterations_executed);

  std::ostringstream os;
  os << "# config_hash=" << hash_hex(cfg.hash()) << "\n";
  os << "# strategy=" << (seed_records.empty() ? "" : strategy_name(seed_records[0].strategy))
     << "\n";
  os << "# seeds=";
  for (size_t i = 0; i < seed_records.size(); ++i) {
    os << (i ? "," : "") << seed_records[i].seed;
  }
  os << "\n";
  os << "iter,phi_mean,phi_std,reward_mean,reward_std,rank_mean,rank_std";
  for (double db : cfg.snr_db) {
    os << ",capacity@" << num(db) << "dB_mean,capacity@" << num(db) << "dB_std";
  }
  os << "\n";
  std::vector<double> col(seed_records.size());
  for (long t = 0; t < common; ++t) {
    os << (t + 1);
    for (size_t s = 0; s < seed_records.size(); ++s) col[s] = seed_records[s].phi[t];
    MeanStd ms = mean_std(col);
    os << "," << num(ms.mean) << "," << num(ms.std_dev);
    for (size_t s = 0; s < seed_records.size(); ++s) col[s] = seed_records[s].mean_reward[t];
    ms = mean_std(col);
    os << "," << num(ms.mean) << "," << num(ms.std_dev);
    for (size_t s = 0; s < seed_records.size(); ++s) col[s] = seed_records[s].rank[t];
    ms = mean_std(col);
    os << "," << num(ms.mean) << "," << num(ms.std_dev);
    for (size_t c = 0; c < cfg.snr_db.size(); ++c) {
      for (size_t s = 0; s < seed_records.size(); ++s) {
        col[s] = seed_records[s].capacity_bits[t][c];
      }
      ms = mean_std(col);
      os << "," << num(ms.mean) << "," << num(ms.std_dev);
    }
    os << "\n";
  }
  return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << body;
}

}  // namespace

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (size_t si = 0; si < cfg.strategies.size(); ++si) {
    for (size_t ki = 0; ki < cfg.seeds.size(); ++ki) {
      const RunRecord& rec = result.records[si][ki];
      if (rec.iterations_executed == 0) continue;  // failed run
      write_file(out_dir / (run_basename(rec) + ".csv"), run_csv(cfg, rec));
      write_file(out_dir / (run_basename(rec) + ".json"),
                 run_summary_json(cfg, rec).dump(2) + "\n");
    }
    // aggregate over the seeds that completed
    std::vector<RunRecord> done;
    for (const auto& r : result.records[si]) {
      if (r.iterations_executed > 0) done.push_back(r);
    }
    if (!done.empty()) {
      write_file(out_dir / ("aggregate_" + strategy_name(cfg.strategies[si]) + ".csv"),
                 aggregate_csv(cfg, done));
    }
  }
  if (!result.failures.empty()) {
    nlohmann::json j;
    j["config_hash"] = hash_hex(cfg.hash());
    j["failures"] = result.failures;
    write_file(out_dir / "failures.json", j.dump(2) + "\n");
  }
}

std::vector<double> moving_average(const std::vector<double>& series, int window) {
  const int n = static_cast<int>(series.size());
  const int half = window / 2;
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (int k = lo; k <= hi; ++k) sum += series[k];
    out[i] = sum / (hi - lo + 1);
  }
  return out;
}

namespace {

const std::vector<RunRecord>* records_for(const ExperimentConfig& cfg,
                                          const ExperimentResult& result,
                                          StrategyKind kind) {
  for (size_t si = 0; si < cfg.strategies.size(); ++si) {
    if (cfg.strategies[si] == kind) return &result.records[si];
  }
  return nullptr;
}

long common_iterations(const std::vector<RunRecord>& recs) {
  long common = recs.empty() ? 0 : recs[0].iterations_executed;
  for (const auto& r : recs) common = std::min(common, r.iterations_executed);
  return common;
}

}  // namespace

std::vector<std::filesystem::path> emit_figure_data(
    const ExperimentConfig& cfg, const ExperimentResult& result, int figure,
    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string hash = hash_hex(cfg.hash());
  std::vector<std::filesystem::path> written;

  const auto* learning = records_for(cfg, result, StrategyKind::learning);

  switch (figure) {
    case 3: {
      if (!learning || learning->empty()) {
        throw ConfigError("fig3 needs learning runs");
      }
      std::ostringstream os;
      os << "# config_hash=" << hash << "\n";
      os << "iter";
      for (const auto& r : *learning) os << ",stay_prob_seed" << r.seed;
      os << ",stay_prob_mean\n";
      const long common = common_iterations(*learning);
      for (long t = 0; t < common; ++t) {
        os << (t + 1);
        double sum = 0.0;
        for (const auto& r : *learning) {
          os << "," << num(r.stay_probability[t]);
          sum += r.stay_probability[t];
        }
        os << "," << num(sum / learning->size()) << "\n";
      }
      const auto path = out_dir / "fig3_stay_probability.csv";
      write_file(path, os.str());
      written.push_back(path);
      break;
    }
    case 4: {
      std::ostringstream os;
      os << "# config_hash=" << hash << "\n";
      os << "iter";
      long common = cfg.iterations;
      for (size_t si = 0; si < cfg.strategies.size(); ++si) {
        os << "," << strategy_name(cfg.strategies[si]) << "_reward_mean";
        common = std::min(common, common_iterations(result.records[si]));
      }
      os << "\n";
      for (long t = 0; t < common; ++t) {
        os << (t + 1);
        for (size_t si = 0; si < cfg.strategies.size(); ++si) {
          double sum = 0.0;
          for (const auto& r : result.records[si]) sum += r.mean_reward[t];
          os << "," << num(sum / result.records[si].size());
        }
        os << "\n";
      }
      const auto path = out_dir / "fig4_reward.csv";
      write_file(path, os.str());
      written.push_back(path);
      break;
    }
    case 5: {
      if (!learning || learning->empty()) {
        throw ConfigError("fig5 needs learning runs");
      }
      const RunRecord& rec = (*learning)[0];
      const FlightVolume volume = cfg.volume();
      auto table = [&](const SwarmState& st) {
        std::ostringstream os;
        os << "# config_hash=" << hash << "\n";
        os << "# seed=" << rec.seed << "\n";
        os << "uav,x_m,y_m,z_m\n";
        for (int m = 0; m < st.size(); ++m) {
          const Vec3 p = volume.meters(st.positions[m]);
          os << m << "," << num(p.x()) << "," << num(p.y()) << "," << num(p.z()) << "\n";
        }
        return os.str();
      };
      const auto init_path = out_dir / "fig5_positions_initial.csv";
      const auto final_path = out_dir / "fig5_positions_final.csv";
      write_file(init_path, table(rec.initial_state));
      write_file(final_path, table(rec.final_state));
      written.push_back(init_path);
      written.push_back(final_path);
      break;
    }
    case 6: {
      if (!learning || learning->empty()) {
        throw ConfigError("fig6 needs learning runs");
      }
      std::ostringstream os;
      os << "# config_hash=" << hash << "\n";
      os << "iter";
      for (const auto& r : *learning) os << ",rank_seed" << r.seed;
      os << ",rank_mean\n";
      const long common = common_iterations(*learning);
      for (long t = 0; t < common; ++t) {
        os << (t + 1);
        double sum = 0.0;
        for (const auto& r : *learning) {
          os << "," << r.rank[t];
          sum += r.rank[t];
        }
        os << "," << num(sum / learning->size()) << "\n";
      }
      const auto path = out_dir / "fig6_rank.csv";
      write_file(path, os.str());
      written.push_back(path);
      break;
    }
    case 7: {
      if (!learning || learning->empty()) {
        throw ConfigError("fig7 needs learning runs");
      }
      const int window = 25;
      std::ostringstream os;
      os << "# config_hash=" << hash << "\n";
      os << "# trend=centered moving average, window=" << window << "\n";
      os << "iter";
      for (double db : cfg.snr_db) {
        os << ",capacity@" << num(db) << "dB_mean"
           << ",capacity@" << num(db) << "dB_ma" << window;
      }
      os << "\n";
      const long common = common_iterations(*learning);
      std::vector<std::vector<double>> means(cfg.snr_db.size(),
                                             std::vector<double>(common));
      for (size_t c = 0; c < cfg.snr_db.size(); ++c) {
        for (long t = 0; t < common; ++t) {
          double sum = 0.0;
          for (const auto& r : *learning) sum += r.capacity_bits[t][c];
          means[c][t] = sum / learning->size();
        }
      }
      std::vector<std::vector<double>> trend;
      trend.reserve(means.size());
      for (const auto& m : means) trend.push_back(moving_average(m, window));
      for (long t = 0; t < common; ++t) {
        os << (t + 1);
        for (size_t c = 0; c < cfg.snr_db.size(); ++c) {
          os << "," << num(means[c][t]) << "," << num(trend[c][t]);
        }
        os << "\n";
      }
      const auto path = out_dir / "fig7_capacity.csv";
      write_file(path, os.str());
      written.push_back(path);
      break;
    }
    default:
      throw ConfigError("unknown figure id " + std::to_string(figure) +
                        " (expected 3..7)");
  }
  return written;
}

}  // namespace swarmcap
