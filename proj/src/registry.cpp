#include "qmp/registry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qmp/errors.hpp"

namespace qmp::meta {

using json = nlohmann::json;

PathRegistry PathRegistry::init(const QMetaConfig& cfg) {
    cfg.validate();
    PathRegistry r;
    r.layers = cfg.layers;
    r.paths = cfg.paths_per_layer;
    r.eta = cfg.eta;
    r.gamma = cfg.gamma;
    r.scores.assign(cfg.layers, std::vector<double>(cfg.paths_per_layer, cfg.initial_score));
    r.usage.assign(cfg.layers, std::vector<std::int64_t>(cfg.paths_per_layer, 0));

    std::mt19937_64 rng(cfg.path_param_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    r.path_params.assign(cfg.layers, {});
    for (int l = 0; l < cfg.layers; ++l) {
        r.path_params[l].assign(cfg.paths_per_layer, {});
        for (int p = 0; p < cfg.paths_per_layer; ++p) {
            r.path_params[l][p].resize(cfg.path_qubits());
            for (double& a : r.path_params[l][p]) a = angle(rng);
        }
    }
    return r;
}

PathRegistry update_scores(const PathRegistry& registry,
                           const std::vector<std::vector<double>>& observed) {
    if (registry.eta <= 0.0 || registry.eta >= 1.0) {
        throw ParameterError("update_scores: eta must be in (0, 1)");
    }
    if (static_cast<int>(observed.size()) != registry.layers) {
        throw ShapeError("update_scores: observed rows != layers");
    }
    PathRegistry out = registry;
    for (int l = 0; l < registry.layers; ++l) {
        if (static_cast<int>(observed[l].size()) != registry.paths) {
            throw ShapeError("update_scores: observed cols != paths");
        }
        for (int p = 0; p < registry.paths; ++p) {
            out.scores[l][p] =
                registry.eta * registry.scores[l][p] + (1.0 - registry.eta) * observed[l][p];
        }
    }
    return out;
}

PathAmplitudes path_amplitudes(const PathRegistry& registry) {
    PathAmplitudes amps;
    amps.a.assign(registry.layers, std::vector<double>(registry.paths, 0.0));
    for (int l = 0; l < registry.layers; ++l) {
        std::vector<double> log_w(registry.paths);
        double max_log = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < registry.paths; ++p) {
            const double j = registry.scores[l][p];
            if (!(j > 0.0) || !std::isfinite(j)) {
                throw NumericError("path_amplitudes: score J[" + std::to_string(l) + "][" +
                                   std::to_string(p) + "] = " + std::to_string(j) +
                                   " is not a positive finite value");
            }
            log_w[p] = 0.5 * std::log(j) -
                       registry.gamma * static_cast<double>(registry.usage[l][p]);
            max_log = std::max(max_log, log_w[p]);
        }
        double total = 0.0;
        for (int p = 0; p < registry.paths; ++p) {
            amps.a[l][p] = std::exp(log_w[p] - max_log);
            total += amps.a[l][p];
        }
        for (int p = 0; p < registry.paths; ++p) {
            amps.a[l][p] /= total;
            if (!std::isfinite(amps.a[l][p])) {
                throw NumericError("path_amplitudes: non-finite amplitude at layer " +
                                   std::to_string(l));
            }
        }
    }
    return amps;
}

std::vector<std::vector<int>> select_top_k(const PathAmplitudes& amps, int k_top) {
    std::vector<std::vector<int>> selected;
    selected.reserve(amps.a.size());
    for (const auto& row : amps.a) {
        if (k_top < 1 || k_top > static_cast<int>(row.size())) {
            throw ParameterError("select_top_k: k_top out of [1, P]");
        }
        std::vector<int> idx(row.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&row](int a, int b) {
            if (row[a] != row[b]) return row[a] > row[b];
            return a < b;
        });
        idx.resize(k_top);
        std::sort(idx.begin(), idx.end());
        selected.push_back(std::move(idx));
    }
    return selected;
}

std::string registry_to_json(const PathRegistry& registry) {
    json doc;
    doc["layers"] = registry.layers;
    doc["paths"] = registry.paths;
    doc["eta"] = registry.eta;
    doc["gamma"] = registry.gamma;
    doc["scores"] = registry.scores;
    doc["usage"] = registry.usage;
    doc["path_params"] = registry.path_params;
    return doc.dump(2);
}

PathRegistry registry_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("registry_from_json: ") + e.what());
    }
    PathRegistry r;
    r.layers = doc.at("layers").get<int>();
    r.paths = doc.at("paths").get<int>();
    r.eta = doc.at("eta").get<double>();
    r.gamma = doc.at("gamma").get<double>();
    r.scores = doc.at("scores").get<std::vector<std::vector<double>>>();
    r.usage = doc.at("usage").get<std::vector<std::vector<std::int64_t>>>();
    r.path_params = doc.at("path_params").get<std::vector<std::vector<std::vector<double>>>>();
    if (static_cast<int>(r.scores.size()) != r.layers ||
        static_cast<int>(r.usage.size()) != r.layers ||
        static_cast<int>(r.path_params.size()) != r.layers) {
        throw ValidationError("registry_from_json: row counts disagree with layers");
    }
    return r;
}

void save_registry(const PathRegistry& registry, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("save_registry: cannot open " + path);
    out << registry_to_json(registry);
}

PathRegistry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_registry: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return registry_from_json(buf.str());
}

}  // namespace qmp::meta
