#pragma once

#include <cstdint>
#include <optional>

#include "qmp/channel.hpp"
#include "qmp/phases.hpp"

namespace qmp::baselines {

struct BaselineResult {
    PhaseVector phases;
    double objective = 0.0;
    int iterations = 0;
    double wall_time_s = 0.0;
};

// iid uniform draw on [0, 2pi).
PhaseVector draw_random_phases(int n_elements, std::uint64_t rng_seed);

// Draws once and evaluates; the Table II "Random" row analog.
BaselineResult random_baseline(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
                               double alpha1, double alpha2, std::uint64_t rng_seed,
                               std::optional<int> quantize_bits = std::nullopt);

// Central finite-difference ascent (step 1e-4 rad) on the weighted
// objective. Steps that would decrease the objective are backtracked by
// halving the rate, so the accepted trace is non-decreasing. start
// overrides the random initial point; trace, when given, collects the
// accepted objective values.
BaselineResult gradient_ascent(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
                               double alpha1, double alpha2, int steps, double learning_rate,
                               std::uint64_t rng_seed,
                               std::optional<int> quantize_bits = std::nullopt,
                               const PhaseVector* start = nullptr,
                               std::vector<double>* trace = nullptr);

// Coordinate sweeps: each element in turn takes the best phase on a grid
// (64 points, or the 2^b quantization grid when bits are set) with the
// others held fixed.
BaselineResult alternating_opt(const channel::ChannelSet& chs, const channel::LinkBudget& budget,
                               double alpha1, double alpha2, int sweeps,
                               std::optional<int> quantize_bits = std::nullopt,
                               int grid_points = 64, std::vector<double>* trace = nullptr);

}  // namespace qmp::baselines
