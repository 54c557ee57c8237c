#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace qmp {

// N RIS phases in radians, each kept in [0, 2pi). bit_depth records the
// quantization grid the phases live on, when any.
struct PhaseVector {
    std::vector<double> phases;
    std::optional<int> bit_depth;

    std::size_t size() const { return phases.size(); }
};

// Wraps an angle into [0, 2pi).
double wrap_phase(double phi);

// b-bit uniform quantization: phi -> (2pi/2^b) * floor(2^b*phi/2pi + 1/2),
// with the top rounding level wrapped back to 0. Worst-case error pi/2^b.
PhaseVector quantize_phases(const PhaseVector& phases, int bits);

}  // namespace qmp
