#pragma once

#include <cstdint>
#include <optional>

namespace qmp::meta {

// Engine hyperparameters. Struct defaults are the desk-scale test shape
// (12 qubits total); paper_scale() is the full 24-qubit architecture.
struct QMetaConfig {
    int layers = 3;           // L
    int paths_per_layer = 4;  // P
    int top_k = 2;            // paths superposed per layer
    double eta = 0.9;         // EMA smoothing factor, in (0,1)
    double gamma = 0.1;       // overuse penalty, >= 0
    double alpha1 = 1.0;      // spectral-efficiency weight
    double alpha2 = 0.1;      // energy-cost weight
    double initial_score = 0.1;  // J0 > 0
    // Observed objectives are clamped to at least this before the score
    // update so sqrt(J) stays real under adversarial channels.
    double score_floor = 1e-3;
    int feature_qubits = 6;
    int qubit_capacity = 24;
    std::uint64_t path_param_seed = 7;  // seeds the fixed path unitary angles
    std::optional<int> quantize_bits;

    // ceil(log2 P) qubits per layer's path register.
    int path_qubits() const;
    int total_qubits() const { return feature_qubits + layers * path_qubits(); }

    static QMetaConfig paper_scale();  // L=6, P=8, k=3

    void validate() const;  // throws ValidationError naming the field
};

}  // namespace qmp::meta
