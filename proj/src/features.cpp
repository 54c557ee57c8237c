#include "qmp/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmp/errors.hpp"
#include "qmp/gates.hpp"

namespace qmp::meta {

std::vector<double> ScenarioFeatures::flatten() const {
    std::vector<double> out(location);
    out.push_back(interference);
    out.push_back(pathloss);
    out.push_back(rate);
    return out;
}

double normalize_feature(double value, const FeatureRange& range) {
    if (range.max == range.min) {
        throw ParameterError("normalize_feature: degenerate bounds (max == min == " +
                             std::to_string(range.min) + ")");
    }
    const double x = (value - range.min) / (range.max - range.min);
    return std::clamp(x, 0.0, 1.0);
}

ScenarioFeatures normalize_features(const RawScenario& raw, const FeatureBounds& bounds) {
    ScenarioFeatures f;
    f.location = {normalize_feature(raw.centroid_x, bounds.centroid_x),
                  normalize_feature(raw.centroid_y, bounds.centroid_y),
                  normalize_feature(raw.spread, bounds.spread)};
    f.interference = normalize_feature(raw.interference_ratio, bounds.interference);
    f.pathloss = normalize_feature(raw.mean_pathloss_db, bounds.pathloss_db);
    f.rate = normalize_feature(raw.rate_bpshz, bounds.rate);
    return f;
}

core::StateVector encode_feature(double x) {
    if (x < 0.0 || x > 1.0) {
        throw ParameterError("encode_feature: value " + std::to_string(x) + " outside [0, 1]");
    }
    const double theta = 2.0 * std::asin(std::sqrt(x));
    return core::apply_ry(core::StateVector(1), 0, theta);
}

core::StateVector encode_scenario(const ScenarioFeatures& features, const QMetaConfig& cfg) {
    const std::vector<double> values = features.flatten();
    if (static_cast<int>(values.size()) != cfg.feature_qubits) {
        throw ShapeError("encode_scenario: " + std::to_string(values.size()) +
                         " features != feature_qubits " + std::to_string(cfg.feature_qubits));
    }
    core::StateVector state = encode_feature(values[0]);
    for (std::size_t i = 1; i < values.size(); ++i) {
        state = core::tensor(state, encode_feature(values[i]), cfg.qubit_capacity);
    }
    return core::normalize(state);
}

}  // namespace qmp::meta
