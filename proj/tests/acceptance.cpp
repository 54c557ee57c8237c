// Acceptance suite: each criterion prints exactly one [PASS]/[FAIL] line.
// Exit code is the number of failed criteria.
//
// Flags:
//   --small-census   assert the 12-qubit architecture census instead of the
//                    24-qubit one (for memory-constrained machines)
//   --only N         run a single criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qmp/baselines.hpp"
#include "qmp/channel.hpp"
#include "qmp/config.hpp"
#include "qmp/engine.hpp"
#include "qmp/experiment.hpp"
#include "qmp/gates.hpp"
#include "qmp/observable.hpp"
#include "qmp/registry.hpp"
#include "qmp/statevector.hpp"
#include "oracles.hpp"

using namespace qmp;
using core::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int number;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// Desk-scale benchmark shape shared by criteria 6, 8 and 9.
harness::ExperimentConfig desk_benchmark_config() {
    harness::ExperimentConfig config = harness::ExperimentConfig::defaults();
    config.geometry.n_elements = 32;
    config.geometry.n_antennas = 8;
    config.geometry.n_users = 2;
    config.qmeta.layers = 3;
    config.qmeta.paths_per_layer = 4;
    config.qmeta.top_k = 2;
    config.episodes = 40;
    config.seeds = 5;
    config.baseline_methods = {"random", "gradient"};
    config.measure_latency = false;
    return config;
}

double summary_se(const harness::BenchmarkResult& result, const std::string& method) {
    for (const auto& s : result.summaries) {
        if (s.method == method) return s.mean_se_bpshz;
    }
    return 0.0;
}

// --- criterion 1 -----------------------------------------------------------

Criterion criterion_gate_oracle() {
    Timer timer;
    double max_err = 0.0;
    double max_drift = 0.0;
    for (int seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(9000 + seed);
        const int n = 1 + static_cast<int>(rng() % 3);
        std::normal_distribution<double> n01(0.0, 1.0);
        std::vector<core::cplx> amps(std::size_t{1} << n);
        for (auto& a : amps) a = core::cplx(n01(rng), n01(rng));
        StateVector psi = core::normalize(StateVector(n, std::move(amps)));
        std::vector<core::cplx> ref = psi.amplitudes();

        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        const int depth = 1 + static_cast<int>(rng() % 7);
        for (int d = 0; d < depth; ++d) {
            if (n > 1 && (rng() & 1) != 0) {
                int c = static_cast<int>(rng() % n);
                int t = static_cast<int>(rng() % n);
                while (t == c) t = static_cast<int>(rng() % n);
                psi = core::apply_cnot(psi, c, t);
                ref = oracle::mat_vec(oracle::cnot_matrix(n, c, t), ref);
            } else {
                const int q = static_cast<int>(rng() % n);
                const double a = angle(rng);
                psi = core::apply_ry(psi, q, a);
                ref = oracle::mat_vec(oracle::ry_matrix(n, q, a), ref);
            }
        }
        for (std::size_t i = 0; i < ref.size(); ++i) {
            max_err = std::max(max_err, std::abs(psi.amplitudes()[i] - ref[i]));
        }
        max_drift = std::max(max_drift, std::abs(psi.norm() - 1.0));
    }
    const double secs = timer.seconds();
    const bool pass = max_err <= 1e-12 && max_drift < 1e-10 && secs < 10.0;
    return {1, "quantum-core oracle equivalence", pass,
            fmt("max amplitude error %.2e (<=1e-12), norm drift %.2e (<1e-10)", max_err,
                max_drift),
            secs};
}

// --- criterion 2 -----------------------------------------------------------

Criterion criterion_ema_contraction() {
    Timer timer;
    std::mt19937_64 rng(4711);
    std::uniform_real_distribution<double> eta_d(0.02, 0.98);
    std::uniform_real_distribution<double> val(-5.0, 5.0);

    meta::QMetaConfig cfg;
    cfg.layers = 1;
    cfg.paths_per_layer = 1;
    cfg.top_k = 1;
    cfg.feature_qubits = 3;

    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const double eta = eta_d(rng);
        const double j0 = val(rng);
        const double o = val(rng);
        cfg.eta = eta;
        meta::PathRegistry r = meta::PathRegistry::init(cfg);
        r.eta = eta;
        r.scores[0][0] = j0;
        for (int t = 1; t <= 50; ++t) {
            r = meta::update_scores(r, {{o}});
            const double bound = std::pow(eta, t) * std::abs(j0 - o);
            worst = std::max(worst, std::abs(std::abs(r.scores[0][0] - o) - bound));
        }
    }
    const double secs = timer.seconds();
    const bool pass = worst <= 1e-12 && secs < 1.0;
    return {2, "EMA contraction law", pass,
            fmt("max |residual - eta^t * |J0-o|| = %.2e (<=1e-12)", worst), secs};
}

// --- criterion 3 -----------------------------------------------------------

Criterion criterion_amplitude_law() {
    Timer timer;
    std::mt19937_64 rng(815);
    std::uniform_real_distribution<double> score(1e-3, 20.0);
    std::uniform_int_distribution<int> usage(0, 100);
    std::uniform_real_distribution<double> scale(0.01, 50.0);

    meta::QMetaConfig cfg;
    cfg.layers = 3;
    cfg.paths_per_layer = 6;
    cfg.top_k = 2;
    cfg.feature_qubits = 3;
    cfg.gamma = 0.2;

    double worst_sum = 0.0;
    bool monotone_ok = true;
    bool rescale_ok = true;
    for (int rep = 0; rep < 1000; ++rep) {
        meta::PathRegistry r = meta::PathRegistry::init(cfg);
        for (auto& row : r.scores) {
            for (double& j : row) j = score(rng);
        }
        for (auto& row : r.usage) {
            for (auto& c : row) c = usage(rng);
        }
        const meta::PathAmplitudes amps = meta::path_amplitudes(r);
        for (int l = 0; l < cfg.layers; ++l) {
            double total = 0.0;
            for (double a : amps.a[l]) total += a;
            worst_sum = std::max(worst_sum, std::abs(total - 1.0));
        }

        meta::PathRegistry used = r;
        const int l = static_cast<int>(rng() % cfg.layers);
        const int p = static_cast<int>(rng() % cfg.paths_per_layer);
        used.usage[l][p] += 1 + static_cast<int>(rng() % 10);
        if (!(meta::path_amplitudes(used).a[l][p] < amps.a[l][p])) monotone_ok = false;

        meta::PathRegistry scaled = r;
        const double c = scale(rng);
        for (double& j : scaled.scores[l]) j *= c;
        if (meta::select_top_k(meta::path_amplitudes(scaled), cfg.top_k) !=
            meta::select_top_k(amps, cfg.top_k)) {
            rescale_ok = false;
        }
    }
    const double secs = timer.seconds();
    const bool pass = worst_sum <= 1e-12 && monotone_ok && rescale_ok && secs < 5.0;
    return {3, "path amplitude law", pass,
            fmt("max |sum A - 1| = %.2e, usage-monotone %s, rescale-invariant %s", worst_sum,
                monotone_ok ? "yes" : "NO", rescale_ok ? "yes" : "NO"),
            secs};
}

// --- criterion 4 -----------------------------------------------------------

Criterion criterion_quantization_bound() {
    Timer timer;
    std::mt19937_64 rng(3141);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    PhaseVector raw;
    raw.phases.resize(10000);
    for (double& p : raw.phases) p = u(rng);

    double worst_margin = -1e9;
    bool pass = true;
    for (int b = 1; b <= 4; ++b) {
        const PhaseVector q = quantize_phases(raw, b);
        const double bound = kPi / (1 << b) + 1e-12;
        for (std::size_t i = 0; i < raw.phases.size(); ++i) {
            double err = std::abs(raw.phases[i] - q.phases[i]);
            err = std::min(err, 2.0 * kPi - err);
            worst_margin = std::max(worst_margin, err - kPi / (1 << b));
            if (err > bound) pass = false;
        }
    }
    const double secs = timer.seconds();
    pass = pass && secs < 1.0;
    return {4, "quantization error bound", pass,
            fmt("max (error - pi/2^b) = %.2e (<=1e-12)", worst_margin), secs};
}

// --- criterion 5 -----------------------------------------------------------

Criterion criterion_gate_census(bool small_census) {
    Timer timer;

    meta::QMetaConfig cfg;
    std::uint64_t want_feature;
    std::uint64_t want_path;
    std::uint64_t want_cnot;
    std::uint64_t want_meas;
    int n_elements;
    if (small_census) {
        cfg.layers = 3;
        cfg.paths_per_layer = 4;
        cfg.top_k = 2;
        want_feature = 18;
        want_path = 6;
        want_cnot = 6;
        want_meas = 12;
        n_elements = 32;
    } else {
        cfg = meta::QMetaConfig::paper_scale();
        want_feature = 36;
        want_path = 18;
        want_cnot = 18;
        want_meas = 24;
        n_elements = 100;
    }

    channel::NetworkGeometry g;
    g.n_elements = n_elements;
    g.n_antennas = small_census ? 8 : 64;
    g.n_users = small_census ? 2 : 4;
    g.ap_position = {70.0, 30.0};
    for (int i = 0; i < g.n_users; ++i) g.ue_positions.push_back({20.0 + 5.0 * i, 40.0});
    channel::ChannelParams params;
    params.beta_ue.assign(g.n_users, 1.0);
    const channel::ChannelSet chs = channel::generate_channels(g, params, 2024);
    channel::LinkBudget budget;
    budget.tx_power.assign(g.n_users, 0.2);
    budget.noise_power = 0.05;

    meta::ScenarioFeatures feats;
    feats.location = {0.3, 0.6, 0.4};
    feats.interference = 0.2;
    feats.pathloss = 0.7;
    feats.rate = 0.5;

    const meta::PathRegistry registry = meta::PathRegistry::init(cfg);
    const meta::EpisodeOutcome out = meta::run_episode(feats, registry, cfg, chs, budget);
    const meta::CircuitCensus& census = out.record.census;

    const double secs = timer.seconds();
    const bool pass = census.feature_ry == want_feature && census.path_ry == want_path &&
                      census.cnot == want_cnot && census.measurements == want_meas &&
                      secs < 300.0;
    return {5,
            small_census ? "gate census (12-qubit variant)" : "gate census at paper scale",
            pass,
            fmt("feature RY %llu/%llu, path RY %llu/%llu, CNOT %llu/%llu, measurements %llu/%llu",
                (unsigned long long)census.feature_ry, (unsigned long long)want_feature,
                (unsigned long long)census.path_ry, (unsigned long long)want_path,
                (unsigned long long)census.cnot, (unsigned long long)want_cnot,
                (unsigned long long)census.measurements, (unsigned long long)want_meas),
            secs};
}

// --- criterion 6 -----------------------------------------------------------

Criterion criterion_desk_table(double* qmp_se_out = nullptr) {
    Timer timer;
    const harness::ExperimentConfig config = desk_benchmark_config();
    const harness::BenchmarkResult result = harness::run_benchmark(config);

    const double qmp = summary_se(result, "qmetapath");
    const double rnd = summary_se(result, "random");
    const double grad = summary_se(result, "gradient");
    if (qmp_se_out != nullptr) *qmp_se_out = qmp;

    const double secs = timer.seconds();
    const bool pass = qmp > 1.2 * rnd && grad > rnd && secs < 600.0;
    return {6, "desk-scale baseline comparison", pass,
            fmt("mean SE: qmetapath %.3f, random %.3f (need > %.3f), gradient %.3f (> random)",
                qmp, rnd, 1.2 * rnd, grad),
            secs};
}

// --- criterion 7 -----------------------------------------------------------

Criterion criterion_two_pass_isolation() {
    Timer timer;
    meta::QMetaConfig cfg;
    cfg.layers = 3;
    cfg.paths_per_layer = 4;
    cfg.top_k = 2;

    harness::ExperimentConfig hc = desk_benchmark_config();
    hc.episodes = 100;
    hc.seeds = 1;

    meta::PathRegistry registry = meta::PathRegistry::init(cfg);
    std::uint64_t stray_expectations = 0;
    int shared_ids = 0;
    for (int ep = 0; ep < hc.episodes; ++ep) {
        const harness::Scenario scen = harness::generate_scenario(hc, ep, 1);
        const meta::EpisodeOutcome out =
            meta::run_episode(scen.features, registry, cfg, scen.channels, scen.budget);
        registry = out.registry;
        stray_expectations += out.diagnostics.expectations_during_evolve;
        std::set<std::uint64_t> scoring(out.diagnostics.scoring_state_ids.begin(),
                                        out.diagnostics.scoring_state_ids.end());
        for (std::uint64_t id : out.diagnostics.inference_state_ids) {
            if (scoring.count(id) != 0) ++shared_ids;
        }
    }
    const double secs = timer.seconds();
    const bool pass = stray_expectations == 0 && shared_ids == 0 && secs < 60.0;
    return {7, "two-pass isolation over 100 episodes", pass,
            fmt("expectation calls during evolve %llu (=0), shared state objects %d (=0)",
                (unsigned long long)stray_expectations, shared_ids),
            secs};
}

// --- criterion 8 -----------------------------------------------------------

Criterion criterion_csi_robustness() {
    Timer timer;
    harness::ExperimentConfig config = desk_benchmark_config();
    config.episodes = 20;
    config.seeds = 4;
    config.baseline_methods = {"gradient"};

    const harness::SweepResult sweep = harness::run_sweep(config, "csi_error", {0.0, 0.1});
    const double grad_clean = summary_se(sweep.points[0].result, "gradient");
    const double grad_noisy = summary_se(sweep.points[1].result, "gradient");
    const double qmp_clean = summary_se(sweep.points[0].result, "qmetapath");
    const double qmp_noisy = summary_se(sweep.points[1].result, "qmetapath");

    const double grad_rel = (grad_clean - grad_noisy) / grad_clean;
    const double qmp_rel = (qmp_clean - qmp_noisy) / qmp_clean;

    const double secs = timer.seconds();
    const bool pass = grad_noisy <= grad_clean && qmp_rel <= grad_rel && secs < 600.0;
    return {8, "CSI robustness direction", pass,
            fmt("gradient SE %.3f -> %.3f (rel. drop %.1f%%), qmetapath %.3f -> %.3f "
                "(rel. drop %.1f%%)",
                grad_clean, grad_noisy, 100.0 * grad_rel, qmp_clean, qmp_noisy,
                100.0 * qmp_rel),
            secs};
}

// --- criterion 9 -----------------------------------------------------------

Criterion criterion_determinism() {
    Timer timer;
    harness::ExperimentConfig config = desk_benchmark_config();
    config.episodes = 10;
    config.seeds = 2;

    const std::string dir_a = "acceptance_det_a";
    const std::string dir_b = "acceptance_det_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    harness::emit_results(harness::run_benchmark(config), dir_a);
    harness::emit_results(harness::run_benchmark(config), dir_b);

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const bool same_csv = slurp(dir_a + "/records.csv") == slurp(dir_b + "/records.csv");
    const bool same_json = slurp(dir_a + "/summary.json") == slurp(dir_b + "/summary.json");
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    const double secs = timer.seconds();
    const bool pass = same_csv && same_json && secs < 120.0;
    return {9, "end-to-end determinism", pass,
            fmt("records.csv byte-identical %s, summary.json byte-identical %s",
                same_csv ? "yes" : "NO", same_json ? "yes" : "NO"),
            secs};
}

// --- criterion 10 ----------------------------------------------------------

Criterion criterion_latency_scaling() {
    Timer timer;
    harness::ExperimentConfig config = desk_benchmark_config();
    config.episodes = 8;
    config.seeds = 1;
    config.baseline_methods = {};
    config.measure_latency = true;

    const std::vector<double> sizes = {32, 64, 128, 256};
    const harness::SweepResult sweep = harness::run_sweep(config, "n_elements", sizes);

    std::vector<double> log_n;
    std::vector<double> log_t;
    std::string detail = "per-episode ms:";
    for (const auto& point : sweep.points) {
        const double ms = [&] {
            for (const auto& s : point.result.summaries) {
                if (s.method == "qmetapath") return s.mean_latency_ms;
            }
            return 0.0;
        }();
        detail += fmt(" N=%d %.2f", static_cast<int>(point.value), ms);
        log_n.push_back(std::log(point.value));
        log_t.push_back(std::log(std::max(ms, 1e-6)));
    }

    // least-squares slope of log t on log N
    const std::size_t m = log_n.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += log_n[i];
        mean_y += log_t[i];
    }
    mean_x /= m;
    mean_y /= m;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num += (log_n[i] - mean_x) * (log_t[i] - mean_y);
        den += (log_n[i] - mean_x) * (log_n[i] - mean_x);
    }
    const double exponent = num / den;

    const double secs = timer.seconds();
    const bool pass = exponent < 1.5 && secs < 900.0;
    return {10, "latency scaling exponent", pass,
            detail + fmt("; fitted exponent %.3f (<1.5)", exponent), secs};
}

}  // namespace

int main(int argc, char** argv) {
    bool small_census = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--small-census") == 0) small_census = true;
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    std::vector<Criterion> results;
    auto want = [&](int n) { return only == 0 || only == n; };

    if (want(1)) results.push_back(criterion_gate_oracle());
    if (want(2)) results.push_back(criterion_ema_contraction());
    if (want(3)) results.push_back(criterion_amplitude_law());
    if (want(4)) results.push_back(criterion_quantization_bound());
    if (want(5)) results.push_back(criterion_gate_census(small_census));
    if (want(6)) results.push_back(criterion_desk_table());
    if (want(7)) results.push_back(criterion_two_pass_isolation());
    if (want(8)) results.push_back(criterion_csi_robustness());
    if (want(9)) results.push_back(criterion_determinism());
    if (want(10)) results.push_back(criterion_latency_scaling());

    int failures = 0;
    for (const auto& c : results) {
        std::printf("[%s] criterion %2d: %s — %s (%.2f s)\n", c.pass ? "PASS" : "FAIL", c.number,
                    c.name.c_str(), c.detail.c_str(), c.seconds);
        if (!c.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures;
}
