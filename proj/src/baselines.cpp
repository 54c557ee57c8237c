#include "qmp/baselines.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "qmp/errors.hpp"

namespace qmp::baselines {

namespace {

constexpr double kFdStep = 1e-4;  // radians

double eval(const channel::ChannelSet& chs, const channel::LinkBudget& budget, double alpha1,
            double alpha2, const PhaseVector& phases) {
    return channel::objective(chs, phases, budget, alpha1, alpha2);
}

PhaseVector maybe_quantize(PhaseVector phases, const std::optional<int>& bits) {
    if (bits) return quantize_phases(phases, *bits);
    return phases;
}

}  // namespace

PhaseVector draw_random_phases(int n_elements, std::uint64_t rng_seed) {
    if (n_elements < 1) throw ParameterError("draw_random_phases: n_elements must be >= 1");
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    PhaseVector out;
    out.phases.resize(n_elements);
    for (double& phi : out.phases) phi = wrap_phase(uniform(rng));
    return out;
}

BaselineResult random_baseline(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
                               double alpha1, double alpha2, std::uint64_t rng_seed,
                               std::optional<int> quantize_bits) {
    const auto t0 = std::chrono::steady_clock::now();
    BaselineResult result;
    result.phases = maybe_quantize(draw_random_phases(chs.n_elements, rng_seed), quantize_bits);
    result.objective = eval(chs, budget, alpha1, alpha2, result.phases);
    result.iterations = 0;
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

BaselineResult gradient_ascent(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
                               double alpha1, double alpha2, int steps, double learning_rate,
                               std::uint64_t rng_seed, std::optional<int> quantize_bits,
                               const PhaseVector* start, std::vector<double>* trace) {
    if (steps < 1) throw ParameterError("gradient_ascent: steps must be >= 1");
    if (learning_rate <= 0.0) throw ParameterError("gradient_ascent: learning rate must be > 0");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = chs.n_elements;

    PhaseVector phases = start != nullptr ? *start : draw_random_phases(n, rng_seed);
    double best = eval(chs, budget, alpha1, alpha2, phases);
    if (!std::isfinite(best)) throw NumericError("gradient_ascent: non-finite objective");
    if (trace != nullptr) trace->push_back(best);

    double lr = learning_rate;
    int accepted = 0;
    std::vector<double> grad(n);
    for (int step = 0; step < steps; ++step) {
        for (int m = 0; m < n; ++m) {
            PhaseVector probe = phases;
            probe.phases[m] = wrap_phase(phases.phases[m] + kFdStep);
            const double up = eval(chs, budget, alpha1, alpha2, probe);
            probe.phases[m] = wrap_phase(phases.phases[m] - kFdStep);
            const double down = eval(chs, budget, alpha1, alpha2, probe);
            grad[m] = (up - down) / (2.0 * kFdStep);
        }

        bool moved = false;
        while (lr > 1e-12) {
            PhaseVector trial = phases;
            for (int m = 0; m < n; ++m) {
                trial.phases[m] = wrap_phase(phases.phases[m] + lr * grad[m]);
            }
            const double value = eval(chs, budget, alpha1, alpha2, trial);
            if (!std::isfinite(value)) throw NumericError("gradient_ascent: non-finite objective");
            if (value >= best) {
                phases = std::move(trial);
                best = value;
                moved = true;
                ++accepted;
                if (trace != nullptr) trace->push_back(best);
                break;
            }
            lr /= 2.0;
        }
        if (!moved) break;  // backtracking exhausted: stationary
    }

    BaselineResult result;
    result.phases = maybe_quantize(std::move(phases), quantize_bits);
    result.objective = eval(chs, budget, alpha1, alpha2, result.phases);
    result.iterations = accepted;
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

BaselineResult alternating_opt(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
                               double alpha1, double alpha2, int sweeps,
                               std::optional<int> quantize_bits, int grid_points,
                               std::vector<double>* trace) {
    if (sweeps < 1) throw ParameterError("alternating_opt: sweeps must be >= 1");
    if (grid_points < 2) throw ParameterError("alternating_opt: grid must have >= 2 points");

    const auto t0 = std::chrono::steady_clock::now();
    const int n = chs.n_elements;
    const int levels = quantize_bits ? (1 << *quantize_bits) : grid_points;
    const double step = 2.0 * std::numbers::pi / levels;

    PhaseVector phases;
    phases.phases.assign(n, 0.0);
    if (quantize_bits) phases.bit_depth = *quantize_bits;
    double best = eval(chs, budget, alpha1, alpha2, phases);

    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (int m = 0; m < n; ++m) {
            double best_phase = phases.phases[m];
            double best_value = best;
            PhaseVector trial = phases;
            for (int g = 0; g < levels; ++g) {
                trial.phases[m] = g * step;
                const double value = eval(chs, budget, alpha1, alpha2, trial);
                if (value > best_value) {
                    best_value = value;
                    best_phase = trial.phases[m];
                }
            }
            phases.phases[m] = best_phase;
            best = best_value;
            if (trace != nullptr) trace->push_back(best);
        }
    }

    BaselineResult result;
    result.phases = std::move(phases);
    result.objective = best;
    result.iterations = sweeps;
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace qmp::baselines
