#pragma once

#include <cstdint>
#include <vector>

#include "qmp/channel.hpp"
#include "qmp/features.hpp"
#include "qmp/gates.hpp"
#include "qmp/phases.hpp"
#include "qmp/qmeta_config.hpp"
#include "qmp/registry.hpp"
#include "qmp/statevector.hpp"

namespace qmp::meta {

// Gate positions of one inference circuit. Superposed path branches share
// the same positions (a weighted sum re-parameterizes a slot, it does not
// add one), so these counts are independent of top_k: at paper scale one
// pass is 36 feature R_Y, 18 path R_Y, 18 CNOT, 24 measurements.
struct CircuitCensus {
    std::uint64_t feature_ry = 0;
    std::uint64_t path_ry = 0;
    std::uint64_t cnot = 0;
    std::uint64_t measurements = 0;
};

// A scenario state plus the feature angles its re-uploading gates reuse.
struct EncodedScenario {
    std::vector<double> feature_values;
    std::vector<double> feature_angles;  // 2*arcsin(sqrt(x)) per feature
    core::StateVector state;
};

EncodedScenario encode_scenario_state(const ScenarioFeatures& features, const QMetaConfig& cfg);

// Evidence that scoring and inference stay isolated: which state objects
// each pass touched at its roots, and how many expectation kernels ran
// while the inference state evolved (must be zero).
struct EpisodeDiagnostics {
    std::vector<std::uint64_t> scoring_state_ids;
    std::vector<std::uint64_t> inference_state_ids;
    std::uint64_t expectations_during_evolve = 0;
    std::vector<double> evolve_pre_norms;  // pre-normalization norm per layer
};

struct EpisodeRecord {
    double spectral_efficiency = 0.0;
    double objective = 0.0;
    double energy = 0.0;
    double latency_ms = 0.0;
    std::vector<std::vector<int>> selected_paths;  // per layer
    CircuitCensus census;
};

struct EpisodeOutcome {
    PhaseVector phases;
    EpisodeRecord record;
    PathRegistry registry;
    EpisodeDiagnostics diagnostics;
};

// Scoring pass (separate circuit per (l, p), fresh copies of the scenario
// state, classical scalar results): applies path (l,p)'s unitary to
// |psi> (x) |p>, decodes trial phases, and evaluates the channel objective.
// Never touches any inference state. state_ids, when given, collects the
// ids of every state the pass created.
std::vector<std::vector<double>> scoring_pass(const EncodedScenario& scenario,
                                              const PathRegistry& registry,
                                              const QMetaConfig& cfg,
                                              const channel::ChannelSet& chs,
                                              const channel::LinkBudget& budget,
                                              std::vector<std::uint64_t>* state_ids = nullptr);

// |Psi_active>: per layer the path register holds sum_{p in S_l} A_{l,p}|p>
// renormalized, tensored behind the feature register, then entangled by the
// fixed feature<->path CNOT pattern.
core::StateVector build_active_superposition(const core::StateVector& scenario_state,
                                             const std::vector<std::vector<int>>& selected,
                                             const PathAmplitudes& amps, const QMetaConfig& cfg,
                                             CircuitCensus* census = nullptr);

// Coherent evolution: layer by layer, a weighted sum over the selected
// paths' circuits (that layer's feature re-uploading R_Y gates plus the
// path R_Y block). No expectation value is evaluated in here.
core::StateVector evolve(const core::StateVector& active, const EncodedScenario& scenario,
                         const std::vector<std::vector<int>>& selected,
                         const PathAmplitudes& amps, const PathRegistry& registry,
                         const QMetaConfig& cfg, CircuitCensus* census = nullptr,
                         std::vector<double>* pre_norms = nullptr);

// Terminal decode: per-qubit <Z_m> -> raw phase pi*(1 - z_m) in [0, 2pi],
// linearly interpolated over element index to n_elements phases, wrapped
// into [0, 2pi). The 2pi boundary wraps to 0.
PhaseVector extract_phases(const core::StateVector& evolved, int n_elements,
                           const QMetaConfig& cfg, CircuitCensus* census = nullptr);

// One full episode: scoring pass, score update, amplitude/selection,
// superposition, evolution, decode, optional quantization; bumps usage
// counters of the selected paths.
EpisodeOutcome run_episode(const ScenarioFeatures& features, const PathRegistry& registry,
                           const QMetaConfig& cfg, const channel::ChannelSet& chs,
                           const channel::LinkBudget& budget);

}  // namespace qmp::meta
