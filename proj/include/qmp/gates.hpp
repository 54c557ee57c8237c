#pragma once

#include <cstdint>
#include <vector>

#include "qmp/statevector.hpp"

namespace qmp::core {

enum class GateKind { RY, CNOT };

// One gate of the shallow R_Y/CNOT gate set.
struct GateOp {
    GateKind kind;
    int target;
    int control = -1;   // CNOT only
    double angle = 0.0; // RY only

    static GateOp ry(int target, double angle) { return {GateKind::RY, target, -1, angle}; }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }
};

using Circuit = std::vector<GateOp>;

// Global kernel-invocation counters. Tests use them to prove, e.g., that
// no expectation value is evaluated mid-evolution. Counted at the simulator
// kernel level, one tick per apply/measure call.
struct OpCounters {
    std::uint64_t ry = 0;
    std::uint64_t cnot = 0;
    std::uint64_t expectation = 0;
};

OpCounters op_counters();
void reset_op_counters();

// R_Y(angle) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]] on the given wire.
StateVector apply_ry(const StateVector& state, int qubit, double angle);

// Flips the target bit on basis states whose control bit is 1.
StateVector apply_cnot(const StateVector& state, int control, int target);

// Applies gates in sequence.
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

// One branch of a linear combination of circuit applications.
struct WeightedCircuit {
    double weight;
    Circuit circuit;
};

// Returns the normalized sum_i w_i * (circuit_i applied to state). A sum of
// unitaries is generally not unitary, so the result is renormalized; the
// pre-normalization norm is reported through *pre_norm when given. Throws
// DestructiveCancellationError when the sum collapses below 1e-12.
StateVector apply_weighted_sum(const StateVector& state,
                               const std::vector<WeightedCircuit>& terms,
                               double* pre_norm = nullptr);

}  // namespace qmp::core
