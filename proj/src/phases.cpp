#include "qmp/phases.hpp"

#include <cmath>
#include <numbers>

#include "qmp/errors.hpp"

namespace qmp {

double wrap_phase(double phi) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) w += two_pi;
    return w;
}

PhaseVector quantize_phases(const PhaseVector& phases, int bits) {
    if (bits < 1) {
        throw ParameterError("quantize_phases: bit depth must be >= 1");
    }
    const double two_pi = 2.0 * std::numbers::pi;
    const double levels = static_cast<double>(std::uint64_t{1} << bits);
    const double step = two_pi / levels;

    PhaseVector out;
    out.bit_depth = bits;
    out.phases.reserve(phases.size());
    for (double phi : phases.phases) {
        double idx = std::floor(levels * phi / two_pi + 0.5);
        if (idx >= levels) idx -= levels;  // phases near 2pi round to level 0
        out.phases.push_back(wrap_phase(idx * step));
    }
    return out;
}

}  // namespace qmp
