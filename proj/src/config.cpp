#include "qmp/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qmp/errors.hpp"

namespace qmp::harness {

using json = nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (known.find(key) == known.end()) {
            throw ValidationError("config: unknown field \"" + key + "\" in " + where);
        }
    }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

void read_range(const json& obj, const char* key, meta::FeatureRange& out) {
    if (obj.contains(key)) {
        const auto& arr = obj.at(key);
        if (!arr.is_array() || arr.size() != 2) {
            throw ValidationError(std::string("config: bounds.") + key +
                                  " must be a [min, max] pair");
        }
        out.min = arr[0].get<double>();
        out.max = arr[1].get<double>();
    }
}

void read_point(const json& obj, const char* key, channel::Point2D& out) {
    if (obj.contains(key)) {
        const auto& arr = obj.at(key);
        if (!arr.is_array() || arr.size() != 2) {
            throw ValidationError(std::string("config: geometry.") + key +
                                  " must be an [x, y] pair");
        }
        out.x = arr[0].get<double>();
        out.y = arr[1].get<double>();
    }
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double dbi_to_linear(double dbi) { return std::pow(10.0, dbi / 10.0); }

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig config;
    config.geometry.ap_position = {100.0, 100.0};
    config.qmeta = meta::QMetaConfig::paper_scale();
    return config;
}

channel::LinkBudget ExperimentConfig::budget() const {
    channel::LinkBudget b;
    b.tx_power.assign(geometry.n_users, dbm_to_watts(tx_power_dbm));
    b.noise_power = dbm_to_watts(noise_power_dbm);
    return b;
}

void ExperimentConfig::validate() const {
    geometry.validate();
    qmeta.validate();
    if (qmeta.feature_qubits != 6) {
        throw ValidationError("qmeta.feature_qubits must be 6: the harness featurization "
                              "produces 3 location + 3 link features");
    }
    if (kappa_ue < 0.0) throw ValidationError("kappa_ue must be >= 0");
    if (kappa_ap < 0.0) throw ValidationError("kappa_ap must be >= 0");
    if (area_width_m <= 0.0) throw ValidationError("area_width_m must be > 0");
    if (area_height_m <= 0.0) throw ValidationError("area_height_m must be > 0");
    if (episodes < 1) throw ValidationError("episodes must be >= 1");
    if (seeds < 1) throw ValidationError("seeds must be >= 1");
    if (threads < 1) throw ValidationError("threads must be >= 1");
    if (gradient_steps < 1) throw ValidationError("gradient_steps must be >= 1");
    if (gradient_lr <= 0.0) throw ValidationError("gradient_lr must be > 0");
    if (ao_sweeps < 1) throw ValidationError("ao_sweeps must be >= 1");
    if (quantize_bits && *quantize_bits < 1) {
        throw ValidationError("quantize_bits must be >= 1 when set");
    }
    if (csi_error_variance < 0.0) throw ValidationError("csi_error_variance must be >= 0");
    for (const auto& m : baseline_methods) {
        if (m != "random" && m != "gradient" && m != "ao") {
            throw ValidationError("baseline_methods: unknown method \"" + m + "\"");
        }
    }
    if (sweep_axis != "none" && sweep_axis != "csi_error" && sweep_axis != "n_elements") {
        throw ValidationError("sweep_axis must be one of none, csi_error, n_elements");
    }
    if (sweep_axis != "none" && sweep_values.empty()) {
        throw ValidationError("sweep_values must be non-empty when sweep_axis is set");
    }
}

ExperimentConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");

    ExperimentConfig config = ExperimentConfig::defaults();

    reject_unknown_keys(doc,
                        {"geometry", "tx_power_dbm", "noise_power_dbm", "kappa_ue", "kappa_ap",
                         "tx_gain_dbi", "rx_gain_dbi", "element_gain_dbi", "area_width_m",
                         "area_height_m", "qmeta", "bounds", "episodes", "seeds", "baselines",
                         "sweep_axis", "sweep_values", "output_dir", "quantize_bits",
                         "csi_error_variance", "measure_latency", "threads", "gradient_steps",
                         "gradient_lr", "ao_sweeps"},
                        "top level");

    if (doc.contains("geometry")) {
        const auto& g = doc.at("geometry");
        reject_unknown_keys(g,
                            {"n_elements", "n_antennas", "n_users", "carrier_freq_hz",
                             "element_spacing_m", "decay_const_m", "ris_position", "ap_position"},
                            "geometry");
        read_field(g, "n_elements", config.geometry.n_elements);
        read_field(g, "n_antennas", config.geometry.n_antennas);
        read_field(g, "n_users", config.geometry.n_users);
        read_field(g, "carrier_freq_hz", config.geometry.carrier_freq);
        read_field(g, "element_spacing_m", config.geometry.element_spacing);
        read_field(g, "decay_const_m", config.geometry.decay_const);
        read_point(g, "ris_position", config.geometry.ris_position);
        read_point(g, "ap_position", config.geometry.ap_position);
    }
    if (doc.contains("qmeta")) {
        const auto& q = doc.at("qmeta");
        reject_unknown_keys(q,
                            {"layers", "paths_per_layer", "top_k", "eta", "gamma", "alpha1",
                             "alpha2", "initial_score", "score_floor", "feature_qubits",
                             "qubit_capacity", "path_param_seed"},
                            "qmeta");
        read_field(q, "layers", config.qmeta.layers);
        read_field(q, "paths_per_layer", config.qmeta.paths_per_layer);
        read_field(q, "top_k", config.qmeta.top_k);
        read_field(q, "eta", config.qmeta.eta);
        read_field(q, "gamma", config.qmeta.gamma);
        read_field(q, "alpha1", config.qmeta.alpha1);
        read_field(q, "alpha2", config.qmeta.alpha2);
        read_field(q, "initial_score", config.qmeta.initial_score);
        read_field(q, "score_floor", config.qmeta.score_floor);
        read_field(q, "feature_qubits", config.qmeta.feature_qubits);
        read_field(q, "qubit_capacity", config.qmeta.qubit_capacity);
        read_field(q, "path_param_seed", config.qmeta.path_param_seed);
    }
    if (doc.contains("bounds")) {
        const auto& b = doc.at("bounds");
        reject_unknown_keys(
            b, {"centroid_x", "centroid_y", "spread", "interference", "pathloss_db", "rate"},
            "bounds");
        read_range(b, "centroid_x", config.bounds.centroid_x);
        read_range(b, "centroid_y", config.bounds.centroid_y);
        read_range(b, "spread", config.bounds.spread);
        read_range(b, "interference", config.bounds.interference);
        read_range(b, "pathloss_db", config.bounds.pathloss_db);
        read_range(b, "rate", config.bounds.rate);
    }

    read_field(doc, "tx_power_dbm", config.tx_power_dbm);
    read_field(doc, "noise_power_dbm", config.noise_power_dbm);
    read_field(doc, "kappa_ue", config.kappa_ue);
    read_field(doc, "kappa_ap", config.kappa_ap);
    read_field(doc, "tx_gain_dbi", config.tx_gain_dbi);
    read_field(doc, "rx_gain_dbi", config.rx_gain_dbi);
    read_field(doc, "element_gain_dbi", config.element_gain_dbi);
    read_field(doc, "area_width_m", config.area_width_m);
    read_field(doc, "area_height_m", config.area_height_m);
    read_field(doc, "episodes", config.episodes);
    read_field(doc, "seeds", config.seeds);
    read_field(doc, "baselines", config.baseline_methods);
    read_field(doc, "sweep_axis", config.sweep_axis);
    read_field(doc, "sweep_values", config.sweep_values);
    read_field(doc, "output_dir", config.output_dir);
    read_field(doc, "csi_error_variance", config.csi_error_variance);
    read_field(doc, "measure_latency", config.measure_latency);
    read_field(doc, "threads", config.threads);
    read_field(doc, "gradient_steps", config.gradient_steps);
    read_field(doc, "gradient_lr", config.gradient_lr);
    read_field(doc, "ao_sweeps", config.ao_sweeps);
    if (doc.contains("quantize_bits") && !doc.at("quantize_bits").is_null()) {
        config.quantize_bits = doc.at("quantize_bits").get<int>();
    }
    if (config.quantize_bits) config.qmeta.quantize_bits = config.quantize_bits;

    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    json doc;
    doc["geometry"] = {{"n_elements", config.geometry.n_elements},
                       {"n_antennas", config.geometry.n_antennas},
                       {"n_users", config.geometry.n_users},
                       {"carrier_freq_hz", config.geometry.carrier_freq},
                       {"element_spacing_m", config.geometry.element_spacing},
                       {"decay_const_m", config.geometry.decay_const},
                       {"ris_position", {config.geometry.ris_position.x,
                                         config.geometry.ris_position.y}},
                       {"ap_position", {config.geometry.ap_position.x,
                                        config.geometry.ap_position.y}}};
    doc["tx_power_dbm"] = config.tx_power_dbm;
    doc["noise_power_dbm"] = config.noise_power_dbm;
    doc["kappa_ue"] = config.kappa_ue;
    doc["kappa_ap"] = config.kappa_ap;
    doc["tx_gain_dbi"] = config.tx_gain_dbi;
    doc["rx_gain_dbi"] = config.rx_gain_dbi;
    doc["element_gain_dbi"] = config.element_gain_dbi;
    doc["area_width_m"] = config.area_width_m;
    doc["area_height_m"] = config.area_height_m;
    doc["qmeta"] = {{"layers", config.qmeta.layers},
                    {"paths_per_layer", config.qmeta.paths_per_layer},
                    {"top_k", config.qmeta.top_k},
                    {"eta", config.qmeta.eta},
                    {"gamma", config.qmeta.gamma},
                    {"alpha1", config.qmeta.alpha1},
                    {"alpha2", config.qmeta.alpha2},
                    {"initial_score", config.qmeta.initial_score},
                    {"score_floor", config.qmeta.score_floor},
                    {"feature_qubits", config.qmeta.feature_qubits},
                    {"qubit_capacity", config.qmeta.qubit_capacity},
                    {"path_param_seed", config.qmeta.path_param_seed}};
    doc["bounds"] = {{"centroid_x", {config.bounds.centroid_x.min, config.bounds.centroid_x.max}},
                     {"centroid_y", {config.bounds.centroid_y.min, config.bounds.centroid_y.max}},
                     {"spread", {config.bounds.spread.min, config.bounds.spread.max}},
                     {"interference",
                      {config.bounds.interference.min, config.bounds.interference.max}},
                     {"pathloss_db",
                      {config.bounds.pathloss_db.min, config.bounds.pathloss_db.max}},
                     {"rate", {config.bounds.rate.min, config.bounds.rate.max}}};
    doc["episodes"] = config.episodes;
    doc["seeds"] = config.seeds;
    doc["baselines"] = config.baseline_methods;
    doc["sweep_axis"] = config.sweep_axis;
    doc["sweep_values"] = config.sweep_values;
    doc["output_dir"] = config.output_dir;
    if (config.quantize_bits) {
        doc["quantize_bits"] = *config.quantize_bits;
    } else {
        doc["quantize_bits"] = nullptr;
    }
    doc["csi_error_variance"] = config.csi_error_variance;
    doc["measure_latency"] = config.measure_latency;
    doc["threads"] = config.threads;
    doc["gradient_steps"] = config.gradient_steps;
    doc["gradient_lr"] = config.gradient_lr;
    doc["ao_sweeps"] = config.ao_sweeps;
    return doc.dump(2);
}

}  // namespace qmp::harness
