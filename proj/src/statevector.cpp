#include "qmp/statevector.hpp"

#include <atomic>
#include <cmath>
#include <fstream>

namespace qmp::core {

namespace {

std::atomic<std::uint64_t> g_next_state_id{1};

std::uint64_t next_id() { return g_next_state_id.fetch_add(1, std::memory_order_relaxed); }

}  // namespace

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amps_(), id_(next_id()) {
    if (n_qubits < 0 || n_qubits > 30) {
        throw ParameterError("StateVector: qubit count " + std::to_string(n_qubits) +
                             " outside supported range [0, 30]");
    }
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = cplx{1.0, 0.0};
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)), id_(next_id()) {
    if (n_qubits < 0 || n_qubits > 30) {
        throw ParameterError("StateVector: qubit count " + std::to_string(n_qubits) +
                             " outside supported range [0, 30]");
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw ShapeError("StateVector: amplitude vector length " + std::to_string(amps_.size()) +
                         " != 2^" + std::to_string(n_qubits));
    }
}

StateVector::StateVector(const StateVector& other)
    : n_qubits_(other.n_qubits_), amps_(other.amps_), id_(next_id()) {}

StateVector::StateVector(StateVector&& other) noexcept
    : n_qubits_(other.n_qubits_), amps_(std::move(other.amps_)), id_(other.id_) {}

StateVector& StateVector::operator=(const StateVector& other) {
    if (this != &other) {
        n_qubits_ = other.n_qubits_;
        amps_ = other.amps_;
        id_ = next_id();
    }
    return *this;
}

StateVector& StateVector::operator=(StateVector&& other) noexcept {
    n_qubits_ = other.n_qubits_;
    amps_ = std::move(other.amps_);
    id_ = other.id_;
    return *this;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw ShapeError("basis: index " + std::to_string(index) + " >= dim " +
                         std::to_string(s.dim()));
    }
    s.amps_[0] = cplx{0.0, 0.0};
    s.amps_[index] = cplx{1.0, 0.0};
    return s;
}

double StateVector::squared_norm() const {
    double acc = 0.0;
    for (const cplx& a : amps_) acc += std::norm(a);
    return acc;
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

std::uint64_t StateVector::qubit_mask(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw InvalidQubitError("qubit " + std::to_string(qubit) + " out of range for " +
                                std::to_string(n_qubits_) + "-qubit state");
    }
    return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
}

void StateVector::dump(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("dump: cannot open " + path);
    out.precision(17);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        out << i << " " << amps_[i].real() << " " << amps_[i].imag() << "\n";
    }
}

StateVector normalize(const StateVector& state) {
    const double n2 = state.squared_norm();
    if (n2 <= 0.0) {
        throw DegenerateStateError("normalize: zero state vector");
    }
    const double inv = 1.0 / std::sqrt(n2);
    StateVector out(state);
    for (cplx& a : out.amplitudes()) a *= inv;
    return out;
}

StateVector tensor(const StateVector& a, const StateVector& b, int max_qubits) {
    const int n = a.n_qubits() + b.n_qubits();
    if (n > max_qubits) {
        throw CapacityError("tensor: " + std::to_string(n) + " qubits exceeds budget of " +
                            std::to_string(max_qubits));
    }
    std::vector<cplx> out(std::size_t{1} << n);
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    const std::size_t db = vb.size();
    for (std::size_t i = 0; i < va.size(); ++i) {
        const cplx ai = va[i];
        const std::size_t base = i * db;
        for (std::size_t j = 0; j < db; ++j) out[base + j] = ai * vb[j];
    }
    return StateVector(n, std::move(out));
}

}  // namespace qmp::core
