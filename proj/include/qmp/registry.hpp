#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmp/qmeta_config.hpp"

namespace qmp::meta {

// Per-(layer, path) learning state: performance scores J, usage counters C,
// and the fixed angles of each path's R_Y block. Scores stay strictly
// positive: they start at J0 > 0 and are smoothed toward floored positive
// observations.
struct PathRegistry {
    int layers = 0;
    int paths = 0;
    double eta = 0.9;
    double gamma = 0.1;
    std::vector<std::vector<double>> scores;           // J, layers x paths
    std::vector<std::vector<std::int64_t>> usage;      // C, layers x paths
    // path_params[l][p] holds path_qubits angles for that path's unitary.
    std::vector<std::vector<std::vector<double>>> path_params;

    // Fresh registry: J = J0 everywhere, zero usage, angles drawn once from
    // cfg.path_param_seed.
    static PathRegistry init(const QMetaConfig& cfg);
};

// Per-layer selection weights; each row is positive and sums to 1.
struct PathAmplitudes {
    std::vector<std::vector<double>> a;  // layers x paths
};

// Elementwise EMA: J <- eta*J + (1-eta)*observed.
PathRegistry update_scores(const PathRegistry& registry,
                           const std::vector<std::vector<double>>& observed);

// A_{l,p} = sqrt(J_{l,p}) e^{-gamma C_{l,p}} / sum_q sqrt(J_{l,q}) e^{-gamma C_{l,q}},
// evaluated in log space so large usage counts cannot underflow a whole layer.
PathAmplitudes path_amplitudes(const PathRegistry& registry);

// Indices of the k largest amplitudes per layer, ties broken by lowest index.
std::vector<std::vector<int>> select_top_k(const PathAmplitudes& amps, int k_top);

// Checkpoint (JSON: L, P, gamma, eta, J, C, path_params) for warm starts.
std::string registry_to_json(const PathRegistry& registry);
PathRegistry registry_from_json(const std::string& text);
void save_registry(const PathRegistry& registry, const std::string& path);
PathRegistry load_registry(const std::string& path);

}  // namespace qmp::meta
