#pragma once

#include <vector>

#include "qmp/statevector.hpp"

namespace qmp::core {

// Diagonal-in-computational-basis observables: single-qubit Pauli-Z or an
// explicit diagonal. Everything the terminal decode needs is diagonal.
class Observable {
public:
    enum class Kind { PauliZ, Diagonal };

    static Observable pauli_z(int qubit);
    static Observable diagonal(std::vector<double> diag);

    Kind kind() const { return kind_; }
    int qubit() const { return qubit_; }
    const std::vector<double>& diag() const { return diag_; }

private:
    Kind kind_;
    int qubit_ = -1;
    std::vector<double> diag_;
};

// <state|O|state>. Pauli-Z results lie in [-1, 1]; dimension mismatches and
// out-of-range qubits throw.
double expectation(const StateVector& state, const Observable& obs);

// Convenience: <Z_q> for every qubit, in qubit order.
std::vector<double> all_z_expectations(const StateVector& state);

}  // namespace qmp::core
