#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qmp/errors.hpp"

namespace qmp::core {

using cplx = std::complex<double>;

// Default ceiling on tensor-product growth; the paper-scale architecture
// needs 24 qubits (16 Mi amplitudes), tests run at 12.
inline constexpr int kDefaultQubitCapacity = 24;

// Dense n-qubit pure state.
//
// Convention (fixed): qubit 0 is the MOST significant bit of the basis
// index, so |q0 q1 ... q_{n-1}> reads left-to-right as the binary index.
// tensor(a, b) places a's qubits in front of b's.
//
// Operations treat states as values: they return new states and never
// mutate their inputs. Every constructed state carries a process-unique
// serial id so tests can prove two pipeline stages share no state object.
class StateVector {
public:
    // |0...0> on n qubits.
    explicit StateVector(int n_qubits);

    // From explicit amplitudes; size must be a power of two.
    StateVector(int n_qubits, std::vector<cplx> amplitudes);

    StateVector(const StateVector& other);
    StateVector(StateVector&& other) noexcept;
    StateVector& operator=(const StateVector& other);
    StateVector& operator=(StateVector&& other) noexcept;

    // Computational basis state |index> on n qubits.
    static StateVector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }
    cplx amplitude(std::uint64_t index) const { return amps_.at(index); }

    // Serial id, unique per constructed object (copies get fresh ids).
    std::uint64_t id() const { return id_; }

    double norm() const;         // sqrt of squared-magnitude sum
    double squared_norm() const;

    // Bit position of `qubit` inside a basis index (qubit 0 = MSB).
    std::uint64_t qubit_mask(int qubit) const;

    // Writes "index real imag" rows; debug aid.
    void dump(const std::string& path) const;

private:
    int n_qubits_;
    std::vector<cplx> amps_;
    std::uint64_t id_;
};

// Returns the unit-norm copy of `state`. Zero states are degenerate.
StateVector normalize(const StateVector& state);

// Kronecker product; a's qubits become qubits 0..n_a-1 of the result.
// Throws CapacityError if the combined qubit count exceeds max_qubits.
StateVector tensor(const StateVector& a, const StateVector& b,
                   int max_qubits = kDefaultQubitCapacity);

}  // namespace qmp::core
