#pragma once

#include <vector>

#include "qmp/qmeta_config.hpp"
#include "qmp/statevector.hpp"

namespace qmp::meta {

// Normalized scenario descriptor: every entry lies in [0, 1].
// flatten() yields [location..., interference, pathloss, rate] and must
// match the configured feature_qubits (3 location features by default).
struct ScenarioFeatures {
    std::vector<double> location;
    double interference = 0.0;
    double pathloss = 0.0;
    double rate = 0.0;

    std::vector<double> flatten() const;
};

// Raw (physical-unit) measurements the harness derives features from.
struct RawScenario {
    double centroid_x = 0.0;       // meters
    double centroid_y = 0.0;       // meters
    double spread = 0.0;           // rms UE distance from centroid, meters
    double interference_ratio = 0.0;
    double mean_pathloss_db = 0.0;
    double rate_bpshz = 0.0;
};

struct FeatureRange {
    double min = 0.0;
    double max = 1.0;
};

struct FeatureBounds {
    FeatureRange centroid_x{0.0, 100.0};
    FeatureRange centroid_y{0.0, 100.0};
    FeatureRange spread{0.0, 75.0};
    FeatureRange interference{0.0, 1.0};
    FeatureRange pathloss_db{-200.0, -60.0};
    FeatureRange rate{0.0, 12.0};
};

// Affine map of value from [min, max] onto [0, 1], then clamp.
// Degenerate bounds (max == min) throw.
double normalize_feature(double value, const FeatureRange& range);

ScenarioFeatures normalize_features(const RawScenario& raw, const FeatureBounds& bounds);

// sqrt(1-x)|0> + sqrt(x)|1> via R_Y(2*arcsin(sqrt(x))).
core::StateVector encode_feature(double x);

// Tensor product of the per-feature qubits, normalized.
core::StateVector encode_scenario(const ScenarioFeatures& features, const QMetaConfig& cfg);

}  // namespace qmp::meta
