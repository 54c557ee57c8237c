#include "qmp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qmp/errors.hpp"

namespace qmp::harness {

using json = nlohmann::json;

namespace {

// Canonical method order for records and summaries.
const std::vector<std::string> kMethodOrder = {"qmetapath", "random", "gradient", "ao"};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string paths_to_string(const std::vector<std::vector<int>>& selected) {
    std::ostringstream out;
    for (std::size_t l = 0; l < selected.size(); ++l) {
        if (l > 0) out << ';';
        for (std::size_t i = 0; i < selected[l].size(); ++i) {
            if (i > 0) out << '-';
            out << selected[l][i];
        }
    }
    return out.str();
}

std::vector<std::string> ordered_methods(const ExperimentConfig& config) {
    std::vector<std::string> methods = {"qmetapath"};
    for (const auto& m : kMethodOrder) {
        if (std::find(config.baseline_methods.begin(), config.baseline_methods.end(), m) !=
            config.baseline_methods.end()) {
            methods.push_back(m);
        }
    }
    return methods;
}

// All per-seed work: one registry, sequential episodes, baselines on the
// same channels.
std::vector<RecordRow> run_seed(const ExperimentConfig& config, std::uint64_t seed,
                                const meta::PathRegistry* warm_start,
                                meta::PathRegistry& final_registry) {
    meta::QMetaConfig qcfg = config.qmeta;
    qcfg.quantize_bits = config.quantize_bits;

    meta::PathRegistry registry =
        warm_start != nullptr ? *warm_start : meta::PathRegistry::init(qcfg);

    std::vector<RecordRow> rows;
    for (int ep = 0; ep < config.episodes; ++ep) {
        Scenario scen = generate_scenario(config, ep, seed);

        // The optimizers see the estimated channels; metrics use the truth.
        channel::ChannelSet est = scen.channels;
        meta::ScenarioFeatures feats = scen.features;
        if (config.csi_error_variance > 0.0) {
            est = channel::inject_csi_error(scen.channels, config.csi_error_variance,
                                            mix_seed(seed, ep, 0xC51));
            meta::RawScenario raw;
            featurize(est, scen.budget, scen.geometry, config.bounds, raw, feats);
        }

        meta::EpisodeOutcome outcome = meta::run_episode(feats, registry, qcfg, est, scen.budget);
        registry = std::move(outcome.registry);

        RecordRow row;
        row.method = "qmetapath";
        row.seed = seed;
        row.episode = ep;
        row.se_bpshz = channel::spectral_efficiency(scen.channels, outcome.phases, scen.budget);
        row.energy = channel::energy_cost(outcome.phases);
        row.objective = qcfg.alpha1 * row.se_bpshz - qcfg.alpha2 * row.energy;
        row.latency_ms = config.measure_latency ? outcome.record.latency_ms : 0.0;
        row.paths = paths_to_string(outcome.record.selected_paths);
        rows.push_back(std::move(row));

        for (const auto& method : config.baseline_methods) {
            baselines::BaselineResult res;
            if (method == "random") {
                res = baselines::random_baseline(est, scen.budget, qcfg.alpha1, qcfg.alpha2,
                                                 mix_seed(seed, ep, 0xA1), config.quantize_bits);
            } else if (method == "gradient") {
                res = baselines::gradient_ascent(est, scen.budget, qcfg.alpha1, qcfg.alpha2,
                                                 config.gradient_steps, config.gradient_lr,
                                                 mix_seed(seed, ep, 0xB2), config.quantize_bits);
            } else if (method == "ao") {
                res = baselines::alternating_opt(est, scen.budget, qcfg.alpha1, qcfg.alpha2,
                                                 config.ao_sweeps, config.quantize_bits);
            } else {
                throw ValidationError("run_benchmark: unknown baseline \"" + method + "\"");
            }

            RecordRow brow;
            brow.method = method;
            brow.seed = seed;
            brow.episode = ep;
            brow.se_bpshz = channel::spectral_efficiency(scen.channels, res.phases, scen.budget);
            brow.energy = channel::energy_cost(res.phases);
            brow.objective = qcfg.alpha1 * brow.se_bpshz - qcfg.alpha2 * brow.energy;
            brow.latency_ms = config.measure_latency ? res.wall_time_s * 1e3 : 0.0;
            rows.push_back(std::move(brow));
        }
    }
    final_registry = std::move(registry);
    return rows;
}

int convergence_episode(const std::vector<double>& se_series) {
    if (se_series.empty()) return 0;
    const int episodes = static_cast<int>(se_series.size());
    const int window = std::min(10, episodes);
    auto trailing = [&](int last) {
        double acc = 0.0;
        for (int e = last - window + 1; e <= last; ++e) acc += se_series[e];
        return acc / window;
    };
    const double target = 0.95 * trailing(episodes - 1);
    for (int e = window - 1; e < episodes; ++e) {
        if (trailing(e) >= target) return e + 1;  // 1-based
    }
    return episodes;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(seed ^ 0x51ED270B0B1DCE1DULL) ^ splitmix64(a) ^ (b << 32));
}

void featurize(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
               const channel::NetworkGeometry& geometry, const meta::FeatureBounds& bounds,
               meta::RawScenario& raw_out, meta::ScenarioFeatures& features_out) {
    meta::RawScenario raw;

    double cx = 0.0;
    double cy = 0.0;
    for (const auto& p : geometry.ue_positions) {
        cx += p.x;
        cy += p.y;
    }
    const double k_users = static_cast<double>(geometry.ue_positions.size());
    cx /= k_users;
    cy /= k_users;
    double spread2 = 0.0;
    for (const auto& p : geometry.ue_positions) {
        const double dx = p.x - cx;
        const double dy = p.y - cy;
        spread2 += dx * dx + dy * dy;
    }
    raw.centroid_x = cx;
    raw.centroid_y = cy;
    raw.spread = std::sqrt(spread2 / k_users);

    // Reference evaluation at zero phases for the link-quality features.
    PhaseVector zeros;
    zeros.phases.assign(chs.n_elements, 0.0);
    std::vector<double> gains(chs.n_users);
    for (int k = 0; k < chs.n_users; ++k) {
        gains[k] = channel::effective_channel(chs, zeros, k).squaredNorm() * budget.tx_power[k];
    }
    double ratio_acc = 0.0;
    for (int k = 0; k < chs.n_users; ++k) {
        double interference = 0.0;
        for (int i = 0; i < chs.n_users; ++i) {
            if (i != k) interference += gains[i];
        }
        ratio_acc += interference / (interference + gains[k] + budget.noise_power);
    }
    raw.interference_ratio = ratio_acc / chs.n_users;

    double beta_mean = 0.0;
    for (double b : chs.params.beta_ue) beta_mean += b;
    beta_mean /= static_cast<double>(chs.params.beta_ue.size());
    raw.mean_pathloss_db = 10.0 * std::log10(beta_mean);

    raw.rate_bpshz = channel::spectral_efficiency(chs, zeros, budget);

    raw_out = raw;
    features_out = meta::normalize_features(raw, bounds);
}

Scenario generate_scenario(const ExperimentConfig& config, int episode_index,
                           std::uint64_t seed) {
    Scenario scen;
    scen.geometry = config.geometry;

    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(episode_index), 0x5C));
    std::uniform_real_distribution<double> ux(0.0, config.area_width_m);
    std::uniform_real_distribution<double> uy(0.0, config.area_height_m);
    scen.geometry.ue_positions.clear();
    for (int k = 0; k < config.geometry.n_users; ++k) {
        channel::Point2D p{ux(rng), uy(rng)};
        while (channel::distance(p, scen.geometry.ris_position) < 1.0) {
            p = {ux(rng), uy(rng)};  // keep UEs off the RIS itself
        }
        scen.geometry.ue_positions.push_back(p);
    }

    const double g_tx = dbi_to_linear(config.tx_gain_dbi);
    const double g_rx = dbi_to_linear(config.rx_gain_dbi);
    const double g_el = dbi_to_linear(config.element_gain_dbi);

    channel::ChannelParams params;
    params.kappa_ue = config.kappa_ue;
    params.kappa_ap = config.kappa_ap;
    params.beta_ue.resize(config.geometry.n_users);
    for (int k = 0; k < config.geometry.n_users; ++k) {
        const double d = channel::distance(scen.geometry.ue_positions[k],
                                           scen.geometry.ris_position);
        params.beta_ue[k] =
            channel::pathloss(d, config.geometry.carrier_freq) * g_tx * g_el;
    }
    const double d_ap = channel::distance(scen.geometry.ris_position, scen.geometry.ap_position);
    params.beta_ap = channel::pathloss(d_ap, config.geometry.carrier_freq) * g_rx * g_el;

    scen.channels = channel::generate_channels(
        scen.geometry, params, mix_seed(seed, static_cast<std::uint64_t>(episode_index), 0xC4));
    scen.budget = config.budget();
    featurize(scen.channels, scen.budget, scen.geometry, config.bounds, scen.raw, scen.features);
    return scen;
}

BenchmarkResult run_benchmark(const ExperimentConfig& config,
                              const meta::PathRegistry* warm_start) {
    config.validate();

    BenchmarkResult result;
    result.final_registries.resize(config.seeds);
    std::vector<std::vector<RecordRow>> per_seed(config.seeds);

    if (config.threads > 1) {
        std::vector<std::future<void>> futures;
        futures.reserve(config.seeds);
        for (int s = 0; s < config.seeds; ++s) {
            futures.push_back(std::async(std::launch::async, [&, s] {
                per_seed[s] = run_seed(config, static_cast<std::uint64_t>(s + 1), warm_start,
                                       result.final_registries[s]);
            }));
        }
        for (auto& f : futures) f.get();
    } else {
        for (int s = 0; s < config.seeds; ++s) {
            per_seed[s] = run_seed(config, static_cast<std::uint64_t>(s + 1), warm_start,
                                   result.final_registries[s]);
        }
    }
    for (auto& rows : per_seed) {
        result.records.insert(result.records.end(), rows.begin(), rows.end());
    }

    for (const auto& method : ordered_methods(config)) {
        MethodSummary summary;
        summary.method = method;
        double se_acc = 0.0;
        double se_sq = 0.0;
        double lat_acc = 0.0;
        double obj_acc = 0.0;
        int count = 0;
        for (const auto& row : result.records) {
            if (row.method != method) continue;
            se_acc += row.se_bpshz;
            se_sq += row.se_bpshz * row.se_bpshz;
            lat_acc += row.latency_ms;
            obj_acc += row.objective;
            ++count;
        }
        if (count > 0) {
            summary.mean_se_bpshz = se_acc / count;
            const double var = std::max(0.0, se_sq / count -
                                                 summary.mean_se_bpshz * summary.mean_se_bpshz);
            summary.std_se_bpshz = std::sqrt(var);
            summary.mean_latency_ms = lat_acc / count;
            summary.mean_objective = obj_acc / count;
        }
        summary.convergence_episode = convergence_episode(
            mean_se_series(result.records, method, config.seeds, config.episodes));
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

std::vector<double> mean_se_series(const std::vector<RecordRow>& records,
                                   const std::string& method, int seeds, int episodes) {
    std::vector<double> acc(episodes, 0.0);
    std::vector<int> counts(episodes, 0);
    for (const auto& row : records) {
        if (row.method != method) continue;
        if (row.episode < 0 || row.episode >= episodes) continue;
        acc[row.episode] += row.se_bpshz;
        ++counts[row.episode];
    }
    for (int e = 0; e < episodes; ++e) {
        acc[e] = counts[e] > 0 ? acc[e] / counts[e] : 0.0;
    }
    (void)seeds;
    return acc;
}

SweepResult run_sweep(const ExperimentConfig& config, const std::string& axis,
                      const std::vector<double>& values) {
    if (axis != "csi_error" && axis != "n_elements") {
        throw ValidationError("run_sweep: axis must be csi_error or n_elements");
    }
    if (values.empty()) throw ValidationError("run_sweep: values must be non-empty");

    SweepResult sweep;
    sweep.axis = axis;
    for (double v : values) {
        ExperimentConfig point = config;
        point.sweep_axis = "none";
        point.sweep_values.clear();
        if (axis == "csi_error") {
            if (v < 0.0) throw ValidationError("run_sweep: csi_error values must be >= 0");
            point.csi_error_variance = v;
        } else {
            if (v < 1.0) throw ValidationError("run_sweep: n_elements values must be >= 1");
            point.geometry.n_elements = static_cast<int>(v);
        }
        sweep.points.push_back({v, run_benchmark(point)});
    }
    return sweep;
}

std::string render_records_csv(const std::vector<RecordRow>& records) {
    std::ostringstream out;
    out << "method,seed,episode,se_bpshz,objective,energy,latency_ms,paths\n";
    for (const auto& row : records) {
        out << row.method << ',' << row.seed << ',' << row.episode << ','
            << format_double(row.se_bpshz) << ',' << format_double(row.objective) << ','
            << format_double(row.energy) << ',' << format_double(row.latency_ms) << ','
            << row.paths << '\n';
    }
    return out.str();
}

std::string render_summary_json(const BenchmarkResult& result) {
    json methods = json::array();
    for (const auto& s : result.summaries) {
        methods.push_back({{"method", s.method},
                           {"mean_se_bpshz", s.mean_se_bpshz},
                           {"std_se_bpshz", s.std_se_bpshz},
                           {"mean_objective", s.mean_objective},
                           {"mean_latency_ms", s.mean_latency_ms},
                           {"convergence_episode", s.convergence_episode}});
    }
    json doc;
    doc["methods"] = methods;
    doc["records"] = result.records.size();
    return doc.dump(2);
}

std::vector<std::string> emit_results(const BenchmarkResult& result, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("emit_results: cannot create " + out_dir + ": " + ec.message());

    const std::string csv_path = out_dir + "/records.csv";
    const std::string json_path = out_dir + "/summary.json";
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw IoError("emit_results: cannot open " + csv_path);
        out << render_records_csv(result.records);
    }
    {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw IoError("emit_results: cannot open " + json_path);
        out << render_summary_json(result);
    }
    return {csv_path, json_path};
}

std::vector<std::string> emit_sweep(const SweepResult& sweep, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("emit_sweep: cannot create " + out_dir + ": " + ec.message());

    std::vector<std::string> written;
    json rows = json::array();
    for (const auto& point : sweep.points) {
        const std::string tag = sweep.axis + "_" + format_double(point.value);
        const std::string csv_path = out_dir + "/records_" + tag + ".csv";
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw IoError("emit_sweep: cannot open " + csv_path);
        out << render_records_csv(point.result.records);
        written.push_back(csv_path);

        for (const auto& s : point.result.summaries) {
            rows.push_back({{"axis", sweep.axis},
                            {"value", point.value},
                            {"method", s.method},
                            {"mean_se_bpshz", s.mean_se_bpshz},
                            {"std_se_bpshz", s.std_se_bpshz},
                            {"mean_latency_ms", s.mean_latency_ms},
                            {"convergence_episode", s.convergence_episode}});
        }
    }
    const std::string summary_path = out_dir + "/sweep_summary.json";
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw IoError("emit_sweep: cannot open " + summary_path);
    json doc;
    doc["rows"] = rows;
    out << doc.dump(2);
    written.push_back(summary_path);
    return written;
}

}  // namespace qmp::harness
