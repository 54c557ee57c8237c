#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmp/config.hpp"
#include "qmp/experiment.hpp"
#include "qmp/registry.hpp"

namespace {

// "axis=v1,v2,..." -> (axis, values)
void parse_sweep_spec(const std::string& spec, std::string& axis, std::vector<double>& values) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
        throw qmp::ValidationError("--sweep expects axis=v1,v2,...");
    }
    axis = spec.substr(0, eq);
    values.clear();
    std::stringstream ss(spec.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw qmp::ValidationError("--sweep: cannot parse value \"" + item + "\"");
        }
    }
    if (values.empty()) throw qmp::ValidationError("--sweep: no values given");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-MetaPath RIS phase optimization benchmark"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run the benchmark described by a config file");
    std::string config_path;
    run->add_option("--config", config_path, "JSON experiment config")->required();
    int seeds = -1;
    run->add_option("--seeds", seeds, "Override seed count");
    int episodes = -1;
    run->add_option("--episodes", episodes, "Override episode count");
    std::string baselines_csv;
    run->add_option("--baselines", baselines_csv,
                    "Comma-separated baselines: random,gradient,ao");
    std::string sweep_spec;
    run->add_option("--sweep", sweep_spec, "Sweep one axis: csi_error=0,0.05,0.1 or "
                                           "n_elements=32,64,128");
    std::string out_dir;
    run->add_option("--out", out_dir, "Output directory (default from config)");
    int quantize_bits = 0;
    run->add_option("--quantize-bits", quantize_bits, "b-bit phase quantization");
    bool paper_scale = false;
    run->add_flag("--paper-scale", paper_scale,
                  "Force the 24-qubit architecture (L=6, P=8, k=3)");
    bool no_latency = false;
    run->add_flag("--no-latency", no_latency, "Report zero latencies (reproducible output)");
    int threads = 0;
    run->add_option("--threads", threads, "Parallel seed workers");
    std::string load_registry_path;
    run->add_option("--load-registry", load_registry_path, "Warm-start registry checkpoint");
    std::string save_registry_path;
    run->add_option("--save-registry", save_registry_path,
                    "Write seed 1's final registry checkpoint here");

    // default-config
    auto* defconf = app.add_subcommand("default-config", "Print the default config as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (defconf->parsed()) {
            std::cout << qmp::harness::config_to_json(qmp::harness::ExperimentConfig::defaults())
                      << "\n";
            return 0;
        }

        qmp::harness::ExperimentConfig config = qmp::harness::load_config(config_path);
        if (seeds > 0) config.seeds = seeds;
        if (episodes > 0) config.episodes = episodes;
        if (!baselines_csv.empty()) {
            config.baseline_methods.clear();
            std::stringstream ss(baselines_csv);
            std::string item;
            while (std::getline(ss, item, ',')) config.baseline_methods.push_back(item);
        }
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (quantize_bits > 0) {
            config.quantize_bits = quantize_bits;
            config.qmeta.quantize_bits = quantize_bits;
        }
        if (paper_scale) {
            const auto paper = qmp::harness::ExperimentConfig::defaults();
            config.geometry.n_elements = paper.geometry.n_elements;
            config.geometry.n_antennas = paper.geometry.n_antennas;
            config.geometry.n_users = paper.geometry.n_users;
            config.qmeta.layers = paper.qmeta.layers;
            config.qmeta.paths_per_layer = paper.qmeta.paths_per_layer;
            config.qmeta.top_k = paper.qmeta.top_k;
        }
        if (no_latency) config.measure_latency = false;
        if (threads > 0) config.threads = threads;
        if (!sweep_spec.empty()) {
            parse_sweep_spec(sweep_spec, config.sweep_axis, config.sweep_values);
        }
        config.validate();

        qmp::meta::PathRegistry warm;
        const qmp::meta::PathRegistry* warm_ptr = nullptr;
        if (!load_registry_path.empty()) {
            warm = qmp::meta::load_registry(load_registry_path);
            warm_ptr = &warm;
        }

        if (config.sweep_axis != "none") {
            const auto sweep =
                qmp::harness::run_sweep(config, config.sweep_axis, config.sweep_values);
            for (const auto& path : qmp::harness::emit_sweep(sweep, config.output_dir)) {
                std::cout << "wrote " << path << "\n";
            }
        } else {
            const auto result = qmp::harness::run_benchmark(config, warm_ptr);
            for (const auto& path : qmp::harness::emit_results(result, config.output_dir)) {
                std::cout << "wrote " << path << "\n";
            }
            for (const auto& s : result.summaries) {
                std::printf("%-10s mean SE %.4f +/- %.4f bps/Hz, mean latency %.3f ms, "
                            "convergence episode %d\n",
                            s.method.c_str(), s.mean_se_bpshz, s.std_se_bpshz,
                            s.mean_latency_ms, s.convergence_episode);
            }
            if (!save_registry_path.empty() && !result.final_registries.empty()) {
                qmp::meta::save_registry(result.final_registries.front(), save_registry_path);
                std::cout << "wrote " << save_registry_path << "\n";
            }
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
