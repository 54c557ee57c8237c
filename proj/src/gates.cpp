#include "qmp/gates.hpp"

#include <atomic>
#include <cmath>
#include <string>

namespace qmp::core {

namespace {

std::atomic<std::uint64_t> g_ry_count{0};
std::atomic<std::uint64_t> g_cnot_count{0};
std::atomic<std::uint64_t> g_expectation_count{0};

}  // namespace

OpCounters op_counters() {
    return {g_ry_count.load(), g_cnot_count.load(), g_expectation_count.load()};
}

void reset_op_counters() {
    g_ry_count = 0;
    g_cnot_count = 0;
    g_expectation_count = 0;
}

void count_expectation_call() { g_expectation_count.fetch_add(1, std::memory_order_relaxed); }

StateVector apply_ry(const StateVector& state, int qubit, double angle) {
    const std::uint64_t mask = state.qubit_mask(qubit);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);

    StateVector out(state);
    auto& amps = out.amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == 0) {
            const std::size_t i1 = i | mask;
            const cplx a0 = amps[i];
            const cplx a1 = amps[i1];
            amps[i] = c * a0 - s * a1;
            amps[i1] = s * a0 + c * a1;
        }
    }
    g_ry_count.fetch_add(1, std::memory_order_relaxed);
    return out;
}

StateVector apply_cnot(const StateVector& state, int control, int target) {
    if (control == target) {
        throw InvalidQubitError("apply_cnot: control == target (" + std::to_string(control) + ")");
    }
    const std::uint64_t cmask = state.qubit_mask(control);
    const std::uint64_t tmask = state.qubit_mask(target);

    StateVector out(state);
    auto& amps = out.amplitudes();
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        // Swap each |c=1, t=0> with its |c=1, t=1> partner once.
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amps[i], amps[i | tmask]);
        }
    }
    g_cnot_count.fetch_add(1, std::memory_order_relaxed);
    return out;
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
    StateVector out(state);
    for (const GateOp& g : circuit) {
        switch (g.kind) {
            case GateKind::RY:
                out = apply_ry(out, g.target, g.angle);
                break;
            case GateKind::CNOT:
                out = apply_cnot(out, g.control, g.target);
                break;
        }
    }
    return out;
}

StateVector apply_weighted_sum(const StateVector& state,
                               const std::vector<WeightedCircuit>& terms,
                               double* pre_norm) {
    if (terms.empty()) {
        throw ParameterError("apply_weighted_sum: no terms");
    }
    for (const auto& t : terms) {
        if (!std::isfinite(t.weight)) {
            throw NumericError("apply_weighted_sum: non-finite weight");
        }
    }

    std::vector<cplx> acc(state.dim(), cplx{0.0, 0.0});
    for (const auto& t : terms) {
        StateVector branch = apply_circuit(state, t.circuit);
        const auto& b = branch.amplitudes();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t.weight * b[i];
    }

    StateVector summed(state.n_qubits(), std::move(acc));
    const double n = summed.norm();
    if (pre_norm != nullptr) *pre_norm = n;
    if (n < 1e-12) {
        throw DestructiveCancellationError(
            "apply_weighted_sum: branches cancelled (norm " + std::to_string(n) + ")");
    }
    return normalize(summed);
}

}  // namespace qmp::core
