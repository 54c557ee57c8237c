#include "qmp/observable.hpp"

#include <string>

namespace qmp::core {

void count_expectation_call();  // defined in gates.cpp

Observable Observable::pauli_z(int qubit) {
    Observable o;
    o.kind_ = Kind::PauliZ;
    o.qubit_ = qubit;
    return o;
}

Observable Observable::diagonal(std::vector<double> diag) {
    Observable o;
    o.kind_ = Kind::Diagonal;
    o.diag_ = std::move(diag);
    return o;
}

double expectation(const StateVector& state, const Observable& obs) {
    count_expectation_call();
    const auto& amps = state.amplitudes();
    double acc = 0.0;
    switch (obs.kind()) {
        case Observable::Kind::PauliZ: {
            const std::uint64_t mask = state.qubit_mask(obs.qubit());
            for (std::size_t i = 0; i < amps.size(); ++i) {
                const double p = std::norm(amps[i]);
                acc += (i & mask) ? -p : p;
            }
            break;
        }
        case Observable::Kind::Diagonal: {
            if (obs.diag().size() != amps.size()) {
                throw ShapeError("expectation: diagonal length " +
                                 std::to_string(obs.diag().size()) + " != state dim " +
                                 std::to_string(amps.size()));
            }
            for (std::size_t i = 0; i < amps.size(); ++i) {
                acc += obs.diag()[i] * std::norm(amps[i]);
            }
            break;
        }
    }
    return acc;
}

std::vector<double> all_z_expectations(const StateVector& state) {
    std::vector<double> z(state.n_qubits());
    for (int q = 0; q < state.n_qubits(); ++q) {
        z[q] = expectation(state, Observable::pauli_z(q));
    }
    return z;
}

}  // namespace qmp::core
