#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmp/baselines.hpp"
#include "qmp/config.hpp"
#include "qmp/engine.hpp"

namespace qmp::harness {

// One drawn wireless scenario: geometry realization, channels, and the
// normalized features the engine sees.
struct Scenario {
    channel::NetworkGeometry geometry;
    channel::ChannelSet channels;
    channel::LinkBudget budget;
    meta::RawScenario raw;
    meta::ScenarioFeatures features;
};

// Deterministic seed mixing for independent per-(seed, episode) streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Measurement-driven featurization of a channel realization.
void featurize(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
               const channel::NetworkGeometry& geometry, const meta::FeatureBounds& bounds,
               meta::RawScenario& raw_out, meta::ScenarioFeatures& features_out);

// Fully determined by (seed, episode_index): UE positions uniform in the
// service area, Rician channels, features from the drawn realization.
Scenario generate_scenario(const ExperimentConfig& config, int episode_index,
                           std::uint64_t seed);

struct RecordRow {
    std::string method;
    std::uint64_t seed = 0;
    int episode = 0;
    double se_bpshz = 0.0;
    double objective = 0.0;
    double energy = 0.0;
    double latency_ms = 0.0;
    std::string paths;  // "p-p-...;..." per layer, empty for baselines
};

struct MethodSummary {
    std::string method;
    double mean_se_bpshz = 0.0;
    double std_se_bpshz = 0.0;
    double mean_objective = 0.0;
    double mean_latency_ms = 0.0;
    int convergence_episode = 0;  // 1-based, over the seed-averaged SE series
};

struct BenchmarkResult {
    std::vector<RecordRow> records;
    std::vector<MethodSummary> summaries;
    std::vector<meta::PathRegistry> final_registries;  // one per seed
};

// Runs Q-MetaPath plus the enabled baselines over seeds x episodes. Scores
// and phases are produced on the (possibly CSI-corrupted) estimated
// channels; reported metrics are evaluated on the true channels.
BenchmarkResult run_benchmark(const ExperimentConfig& config,
                              const meta::PathRegistry* warm_start = nullptr);

struct SweepPoint {
    double value = 0.0;
    BenchmarkResult result;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepPoint> points;
};

// axis is "csi_error" or "n_elements"; seeds are shared across values.
SweepResult run_sweep(const ExperimentConfig& config, const std::string& axis,
                      const std::vector<double>& values);

// records.csv (header: method,seed,episode,se_bpshz,objective,energy,
// latency_ms,paths) and summary.json under output_dir. Deterministic bytes
// for identical inputs. Returns the file paths written.
std::vector<std::string> emit_results(const BenchmarkResult& result, const std::string& out_dir);
std::vector<std::string> emit_sweep(const SweepResult& sweep, const std::string& out_dir);

std::string render_records_csv(const std::vector<RecordRow>& records);
std::string render_summary_json(const BenchmarkResult& result);

// Mean-over-seeds SE series for one method, episode-ordered.
std::vector<double> mean_se_series(const std::vector<RecordRow>& records,
                                   const std::string& method, int seeds, int episodes);

}  // namespace qmp::harness
