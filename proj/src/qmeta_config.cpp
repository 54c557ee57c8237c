#include "qmp/qmeta_config.hpp"

#include <string>

#include "qmp/errors.hpp"

namespace qmp::meta {

int QMetaConfig::path_qubits() const {
    int q = 0;
    while ((1 << q) < paths_per_layer) ++q;
    return q;
}

QMetaConfig QMetaConfig::paper_scale() {
    QMetaConfig cfg;
    cfg.layers = 6;
    cfg.paths_per_layer = 8;
    cfg.top_k = 3;
    return cfg;
}

void QMetaConfig::validate() const {
    if (layers < 1) throw ValidationError("qmeta.layers must be >= 1");
    if (paths_per_layer < 1) throw ValidationError("qmeta.paths_per_layer must be >= 1");
    if (top_k < 1 || top_k > paths_per_layer) {
        throw ValidationError("qmeta.top_k must be in [1, paths_per_layer]");
    }
    if (eta <= 0.0 || eta >= 1.0) throw ValidationError("qmeta.eta must be in (0, 1)");
    if (gamma < 0.0) throw ValidationError("qmeta.gamma must be >= 0");
    if (alpha1 < 0.0) throw ValidationError("qmeta.alpha1 must be >= 0");
    if (alpha2 < 0.0) throw ValidationError("qmeta.alpha2 must be >= 0");
    if (initial_score <= 0.0) throw ValidationError("qmeta.initial_score must be > 0");
    if (score_floor <= 0.0) throw ValidationError("qmeta.score_floor must be > 0");
    if (feature_qubits < 1) throw ValidationError("qmeta.feature_qubits must be >= 1");
    if (quantize_bits && *quantize_bits < 1) {
        throw ValidationError("qmeta.quantize_bits must be >= 1 when set");
    }
    if (total_qubits() > qubit_capacity) {
        throw ValidationError("qmeta: feature_qubits + layers*path_qubits = " +
                              std::to_string(total_qubits()) + " exceeds qubit_capacity " +
                              std::to_string(qubit_capacity));
    }
}

}  // namespace qmp::meta
