#include "qmp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "qmp/errors.hpp"
#include "qmp/observable.hpp"

namespace qmp::meta {

namespace {

using core::Circuit;
using core::GateOp;
using core::StateVector;

// Entangler wiring, fixed across the build: the j-th path qubit of layer l
// controls feature qubit (l*path_qubits + j) mod F.
int entangle_target(int layer, int path_qubit, int path_qubits, int feature_qubits) {
    return (layer * path_qubits + path_qubit) % feature_qubits;
}

// Feature re-uploading block of one layer: the encoding angles replayed on
// the feature wires.
void append_feature_reupload(Circuit& circuit, const EncodedScenario& scenario) {
    for (std::size_t f = 0; f < scenario.feature_angles.size(); ++f) {
        circuit.push_back(GateOp::ry(static_cast<int>(f), scenario.feature_angles[f]));
    }
}

}  // namespace

EncodedScenario encode_scenario_state(const ScenarioFeatures& features, const QMetaConfig& cfg) {
    EncodedScenario enc{features.flatten(), {}, encode_scenario(features, cfg)};
    enc.feature_angles.reserve(enc.feature_values.size());
    for (double x : enc.feature_values) {
        enc.feature_angles.push_back(2.0 * std::asin(std::sqrt(x)));
    }
    return enc;
}

std::vector<std::vector<double>> scoring_pass(const EncodedScenario& scenario,
                                              const PathRegistry& registry,
                                              const QMetaConfig& cfg,
                                              const channel::ChannelSet& chs,
                                              const channel::LinkBudget& budget,
                                              std::vector<std::uint64_t>* state_ids) {
    cfg.validate();
    const int pq = cfg.path_qubits();
    const int f = cfg.feature_qubits;
    if (state_ids != nullptr) state_ids->push_back(scenario.state.id());

    std::vector<std::vector<double>> observed(registry.layers,
                                              std::vector<double>(registry.paths, 0.0));
    for (int l = 0; l < registry.layers; ++l) {
        for (int p = 0; p < registry.paths; ++p) {
            // Fresh copy of the scenario state with this path's register.
            StateVector probe =
                pq > 0 ? core::tensor(scenario.state, StateVector::basis(pq, p),
                                      cfg.qubit_capacity)
                       : StateVector(scenario.state);
            if (state_ids != nullptr) state_ids->push_back(probe.id());

            Circuit circuit;
            append_feature_reupload(circuit, scenario);
            for (int j = 0; j < pq; ++j) {
                circuit.push_back(GateOp::ry(f + j, registry.path_params[l][p][j]));
            }
            for (int j = 0; j < pq; ++j) {
                circuit.push_back(GateOp::cnot(f + j, entangle_target(l, j, pq, f)));
            }
            probe = core::apply_circuit(probe, circuit);

            const PhaseVector trial = extract_phases(probe, chs.n_elements, cfg);
            const double score = channel::objective(chs, trial, budget, cfg.alpha1, cfg.alpha2);
            if (!std::isfinite(score)) {
                throw NumericError("scoring_pass: non-finite objective for path (" +
                                   std::to_string(l) + ", " + std::to_string(p) + ")");
            }
            observed[l][p] = score;
        }
    }
    return observed;
}

core::StateVector build_active_superposition(const core::StateVector& scenario_state,
                                             const std::vector<std::vector<int>>& selected,
                                             const PathAmplitudes& amps, const QMetaConfig& cfg,
                                             CircuitCensus* census) {
    const int pq = cfg.path_qubits();
    const int f = cfg.feature_qubits;
    if (static_cast<int>(selected.size()) != cfg.layers) {
        throw ShapeError("build_active_superposition: selected size != layers");
    }

    StateVector state(scenario_state);
    for (int l = 0; l < cfg.layers; ++l) {
        if (pq == 0) continue;  // P = 1: the path register is trivial
        std::vector<core::cplx> reg(std::size_t{1} << pq, core::cplx{0.0, 0.0});
        double norm2 = 0.0;
        for (int p : selected[l]) {
            const double a = amps.a[l][p];
            reg[static_cast<std::size_t>(p)] = a;
            norm2 += a * a;
        }
        if (norm2 <= 0.0) {
            throw DegenerateStateError("build_active_superposition: all selected amplitudes of "
                                       "layer " + std::to_string(l) + " are zero");
        }
        state = core::tensor(state, core::normalize(StateVector(pq, std::move(reg))),
                             cfg.qubit_capacity);
    }

    // Feature<->path entanglement, one CNOT per path qubit per layer.
    for (int l = 0; l < cfg.layers; ++l) {
        for (int j = 0; j < pq; ++j) {
            state = core::apply_cnot(state, f + l * pq + j, entangle_target(l, j, pq, f));
            if (census != nullptr) ++census->cnot;
        }
    }
    return core::normalize(state);
}

core::StateVector evolve(const core::StateVector& active, const EncodedScenario& scenario,
                         const std::vector<std::vector<int>>& selected,
                         const PathAmplitudes& amps, const PathRegistry& registry,
                         const QMetaConfig& cfg, CircuitCensus* census,
                         std::vector<double>* pre_norms) {
    const int pq = cfg.path_qubits();
    const int f = cfg.feature_qubits;

    StateVector state(active);
    for (int l = 0; l < cfg.layers; ++l) {
        std::vector<core::WeightedCircuit> terms;
        terms.reserve(selected[l].size());
        for (int p : selected[l]) {
            Circuit circuit;
            append_feature_reupload(circuit, scenario);
            for (int j = 0; j < pq; ++j) {
                circuit.push_back(GateOp::ry(f + l * pq + j, registry.path_params[l][p][j]));
            }
            terms.push_back({amps.a[l][p], std::move(circuit)});
        }
        double pre_norm = 0.0;
        state = core::apply_weighted_sum(state, terms, &pre_norm);
        if (pre_norms != nullptr) pre_norms->push_back(pre_norm);
        if (census != nullptr) {
            // Branches share gate positions; one slot per wire per layer.
            census->feature_ry += static_cast<std::uint64_t>(f);
            census->path_ry += static_cast<std::uint64_t>(pq);
        }
    }
    return state;
}

PhaseVector extract_phases(const core::StateVector& evolved, int n_elements,
                           const QMetaConfig& cfg, CircuitCensus* census) {
    (void)cfg;
    if (n_elements < 1) throw ParameterError("extract_phases: n_elements must be >= 1");

    const std::vector<double> z = core::all_z_expectations(evolved);
    if (census != nullptr) census->measurements += z.size();

    std::vector<double> raw(z.size());
    for (std::size_t m = 0; m < z.size(); ++m) {
        raw[m] = std::numbers::pi * (1.0 - z[m]);  // in [0, 2pi]
    }

    PhaseVector out;
    out.phases.resize(n_elements);
    const int m_points = static_cast<int>(raw.size());
    if (m_points == 1) {
        for (double& phi : out.phases) phi = wrap_phase(raw[0]);
        return out;
    }
    for (int i = 0; i < n_elements; ++i) {
        const double pos = n_elements == 1
                               ? 0.0
                               : static_cast<double>(i) * (m_points - 1) / (n_elements - 1);
        const int j = std::min(static_cast<int>(pos), m_points - 2);
        const double frac = pos - j;
        out.phases[i] = wrap_phase(raw[j] + frac * (raw[j + 1] - raw[j]));
    }
    return out;
}

EpisodeOutcome run_episode(const ScenarioFeatures& features, const PathRegistry& registry,
                           const QMetaConfig& cfg, const channel::ChannelSet& chs,
                           const channel::LinkBudget& budget) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    EpisodeOutcome out;

    // Pass 1: scoring on its own encoded state; results are classical scalars.
    const EncodedScenario scoring_scenario = encode_scenario_state(features, cfg);
    std::vector<std::vector<double>> observed =
        scoring_pass(scoring_scenario, registry, cfg, chs, budget,
                     &out.diagnostics.scoring_state_ids);
    for (auto& row : observed) {
        for (double& o : row) o = std::max(o, cfg.score_floor);
    }
    PathRegistry updated = update_scores(registry, observed);

    const PathAmplitudes amps = path_amplitudes(updated);
    const std::vector<std::vector<int>> selected = select_top_k(amps, cfg.top_k);

    // Pass 2: inference on a fresh encode; uncollapsed until the decode.
    const EncodedScenario inference_scenario = encode_scenario_state(features, cfg);
    out.diagnostics.inference_state_ids.push_back(inference_scenario.state.id());

    CircuitCensus census;
    StateVector active = build_active_superposition(inference_scenario.state, selected, amps,
                                                    cfg, &census);
    out.diagnostics.inference_state_ids.push_back(active.id());

    const std::uint64_t expectations_before = core::op_counters().expectation;
    StateVector evolved = evolve(active, inference_scenario, selected, amps, updated, cfg,
                                 &census, &out.diagnostics.evolve_pre_norms);
    out.diagnostics.expectations_during_evolve =
        core::op_counters().expectation - expectations_before;
    out.diagnostics.inference_state_ids.push_back(evolved.id());

    out.phases = extract_phases(evolved, chs.n_elements, cfg, &census);
    if (cfg.quantize_bits) {
        out.phases = quantize_phases(out.phases, *cfg.quantize_bits);
    }

    for (int l = 0; l < cfg.layers; ++l) {
        for (int p : selected[l]) ++updated.usage[l][p];
    }
    out.registry = std::move(updated);

    const auto t1 = std::chrono::steady_clock::now();
    out.record.latency_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.record.selected_paths = selected;
    out.record.census = census;
    out.record.spectral_efficiency = channel::spectral_efficiency(chs, out.phases, budget);
    out.record.energy = channel::energy_cost(out.phases);
    out.record.objective =
        cfg.alpha1 * out.record.spectral_efficiency - cfg.alpha2 * out.record.energy;
    return out;
}

}  // namespace qmp::meta
