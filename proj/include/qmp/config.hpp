#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmp/channel.hpp"
#include "qmp/features.hpp"
#include "qmp/qmeta_config.hpp"

namespace qmp::harness {

double dbm_to_watts(double dbm);
double dbi_to_linear(double dbi);

// Full experiment description. Default-constructed values reproduce the
// headline system configuration: N=100, Q=64, K=4, 28 GHz, lambda/2
// spacing, 10 dBm uplinks, -90 dBm noise, L=6/P=8/k=3, 150 episodes,
// 10 seeds.
struct ExperimentConfig {
    channel::NetworkGeometry geometry;  // N/Q/K/frequency/spacing/positions
    double tx_power_dbm = 10.0;
    double noise_power_dbm = -90.0;
    double kappa_ue = 10.0;
    double kappa_ap = 10.0;
    // Link-budget gains folded into the path gains; the RIS double fade is
    // hopeless without directional antennas at mmWave.
    double tx_gain_dbi = 25.0;
    double rx_gain_dbi = 25.0;
    double element_gain_dbi = 10.0;

    // UEs are drawn uniformly in [0, width] x [0, height]; RIS and AP sit
    // at fixed corners of that area (geometry fields).
    double area_width_m = 100.0;
    double area_height_m = 100.0;

    meta::QMetaConfig qmeta;
    meta::FeatureBounds bounds;

    int episodes = 150;
    int seeds = 10;
    std::vector<std::string> baseline_methods;  // subset of {random, gradient, ao}
    std::string sweep_axis = "none";            // none | csi_error | n_elements
    std::vector<double> sweep_values;
    std::string output_dir = "results";
    std::optional<int> quantize_bits;
    double csi_error_variance = 0.0;
    bool measure_latency = true;
    int threads = 1;

    int gradient_steps = 60;
    double gradient_lr = 0.25;
    int ao_sweeps = 1;

    static ExperimentConfig defaults();

    channel::LinkBudget budget() const;
    void validate() const;
};

// JSON config loading; absent fields keep their defaults, unknown fields
// are rejected so typos fail loudly.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace qmp::harness
