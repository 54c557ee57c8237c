#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qmp/gates.hpp"
#include "qmp/observable.hpp"
#include "qmp/statevector.hpp"
#include "oracles.hpp"

using namespace qmp;
using core::StateVector;
using core::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

double dist_inf(const StateVector& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        d = std::max(d, std::abs(a.amplitudes()[i] - b[i]));
    }
    return d;
}

core::Circuit random_circuit(std::mt19937_64& rng, int n_qubits, int depth) {
    std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> coin(0, 1);
    core::Circuit circuit;
    for (int i = 0; i < depth; ++i) {
        if (n_qubits > 1 && coin(rng) == 1) {
            int c = qubit(rng);
            int t = qubit(rng);
            while (t == c) t = qubit(rng);
            circuit.push_back(core::GateOp::cnot(c, t));
        } else {
            circuit.push_back(core::GateOp::ry(qubit(rng), angle(rng)));
        }
    }
    return circuit;
}

StateVector random_state(std::mt19937_64& rng, int n_qubits) {
    std::normal_distribution<double> n01(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (auto& a : amps) a = cplx(n01(rng), n01(rng));
    return core::normalize(StateVector(n_qubits, std::move(amps)));
}

}  // namespace

TEST_CASE("apply_ry analytic cases") {
    StateVector zero(1);

    StateVector same = core::apply_ry(zero, 0, 0.0);
    CHECK(std::abs(same.amplitude(0) - 1.0) < 1e-15);
    CHECK(std::abs(same.amplitude(1)) < 1e-15);

    StateVector one = core::apply_ry(zero, 0, kPi);
    CHECK(std::abs(one.amplitude(0)) < 1e-15);
    CHECK(std::abs(std::abs(one.amplitude(1)) - 1.0) < 1e-15);

    // sin(arcsin(sqrt(0.25))) = 0.5 forces the |1> amplitude
    StateVector enc = core::apply_ry(zero, 0, 2.0 * std::asin(std::sqrt(0.25)));
    CHECK(enc.amplitude(0).real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(enc.amplitude(1).real() == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(core::apply_ry(zero, 1, 0.1), InvalidQubitError);
    CHECK_THROWS_AS(core::apply_ry(zero, -1, 0.1), InvalidQubitError);
}

TEST_CASE("apply_cnot basis action") {
    // |10> -> |11> with qubit 0 the control (and the index MSB)
    StateVector s10 = StateVector::basis(2, 0b10);
    StateVector flipped = core::apply_cnot(s10, 0, 1);
    CHECK(std::abs(flipped.amplitude(0b11) - 1.0) < 1e-15);

    StateVector s00 = StateVector::basis(2, 0b00);
    StateVector kept = core::apply_cnot(s00, 0, 1);
    CHECK(std::abs(kept.amplitude(0b00) - 1.0) < 1e-15);

    // Bell construction from (|00> + |10>)/sqrt(2)
    StateVector plus(2, {cplx(1 / std::sqrt(2.0), 0), 0, cplx(1 / std::sqrt(2.0), 0), 0});
    StateVector bell = core::apply_cnot(plus, 0, 1);
    CHECK(std::abs(bell.amplitude(0b00) - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bell.amplitude(0b11) - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bell.amplitude(0b01)) < 1e-15);

    CHECK_THROWS_AS(core::apply_cnot(s00, 1, 1), InvalidQubitError);
}

TEST_CASE("tensor structure and capacity") {
    StateVector a = StateVector::basis(1, 0);
    StateVector b = StateVector::basis(1, 1);
    StateVector ab = core::tensor(a, b);
    CHECK(ab.n_qubits() == 2);
    CHECK(std::abs(ab.amplitude(0b01) - 1.0) < 1e-15);

    // |psi> (x) |0> interleaves zeros at odd indices
    std::mt19937_64 rng(11);
    StateVector psi = random_state(rng, 2);
    StateVector padded = core::tensor(psi, StateVector(1));
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        CHECK(std::abs(padded.amplitude(2 * i) - psi.amplitude(i)) < 1e-15);
        CHECK(std::abs(padded.amplitude(2 * i + 1)) < 1e-15);
    }

    StateVector x = random_state(rng, 3);
    StateVector y = random_state(rng, 3);
    CHECK(core::tensor(x, y).norm() == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(core::tensor(x, y, 5), CapacityError);
}

TEST_CASE("tensor associativity") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        StateVector a = random_state(rng, 2);
        StateVector b = random_state(rng, 1);
        StateVector c = random_state(rng, 2);
        StateVector left = core::tensor(core::tensor(a, b), c);
        StateVector right = core::tensor(a, core::tensor(b, c));
        CHECK(dist_inf(left, right.amplitudes()) < 1e-12);
    }
}

TEST_CASE("expectation values") {
    StateVector zero(1);
    StateVector one = StateVector::basis(1, 1);
    CHECK(core::expectation(zero, core::Observable::pauli_z(0)) == doctest::Approx(1.0));
    CHECK(core::expectation(one, core::Observable::pauli_z(0)) == doctest::Approx(-1.0));

    StateVector plus(1, {cplx(1 / std::sqrt(2.0), 0), cplx(1 / std::sqrt(2.0), 0)});
    CHECK(std::abs(core::expectation(plus, core::Observable::pauli_z(0))) < 1e-12);

    CHECK_THROWS_AS(core::expectation(plus, core::Observable::diagonal({1.0, 2.0, 3.0})),
                    ShapeError);

    // linearity over diagonal observables
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int rep = 0; rep < 25; ++rep) {
        StateVector psi = random_state(rng, 3);
        std::vector<double> d1(8), d2(8), combo(8);
        const double alpha = coef(rng), beta = coef(rng);
        for (int i = 0; i < 8; ++i) {
            d1[i] = coef(rng);
            d2[i] = coef(rng);
            combo[i] = alpha * d1[i] + beta * d2[i];
        }
        const double lhs = core::expectation(psi, core::Observable::diagonal(combo));
        const double rhs = alpha * core::expectation(psi, core::Observable::diagonal(d1)) +
                           beta * core::expectation(psi, core::Observable::diagonal(d2));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("normalize") {
    StateVector two(1, {cplx(2.0, 0.0), cplx(0.0, 0.0)});
    StateVector n = core::normalize(two);
    CHECK(std::abs(n.amplitude(0) - 1.0) < 1e-15);

    StateVector ones(1, {cplx(1.0, 0.0), cplx(1.0, 0.0)});
    StateVector h = core::normalize(ones);
    CHECK(h.amplitude(0).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

    StateVector again = core::normalize(h);
    CHECK(dist_inf(again, h.amplitudes()) < 1e-12);

    StateVector dead(1, {cplx(0.0, 0.0), cplx(0.0, 0.0)});
    CHECK_THROWS_AS(core::normalize(dead), DegenerateStateError);
}

TEST_CASE("apply_weighted_sum") {
    std::mt19937_64 rng(5);
    StateVector psi = random_state(rng, 2);

    double pre = 0.0;
    StateVector same = core::apply_weighted_sum(psi, {{1.0, {}}}, &pre);
    CHECK(dist_inf(same, psi.amplitudes()) < 1e-12);
    CHECK(pre == doctest::Approx(1.0).epsilon(1e-10));

    StateVector halves = core::apply_weighted_sum(psi, {{0.5, {}}, {0.5, {}}}, &pre);
    CHECK(dist_inf(halves, psi.amplitudes()) < 1e-12);

    // weights (1/3, 2/3) on orthogonal branch outputs: pre-norm sqrt(5)/3
    StateVector zero(1);
    core::Circuit flip = {core::GateOp::ry(0, kPi)};
    StateVector mix = core::apply_weighted_sum(zero, {{1.0 / 3.0, {}}, {2.0 / 3.0, flip}}, &pre);
    CHECK(pre == doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-12));
    CHECK(mix.norm() == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(core::apply_weighted_sum(psi, {{1.0, {}}, {-1.0, {}}}, nullptr),
                    DestructiveCancellationError);
    CHECK_THROWS_AS(core::apply_weighted_sum(psi, {}, nullptr), ParameterError);
}

TEST_CASE("norm preservation over random circuits") {
    std::mt19937_64 rng(101);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 11);  // up to 12 qubits
        StateVector psi = random_state(rng, n);
        psi = core::apply_circuit(psi, random_circuit(rng, n, 20));
        CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("gate-inverse oracle on small registers") {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        StateVector psi = random_state(rng, n);
        const int q = static_cast<int>(rng() % n);
        const double a = angle(rng);
        StateVector back = core::apply_ry(core::apply_ry(psi, q, a), q, -a);
        CHECK(dist_inf(back, psi.amplitudes()) < 1e-12);

        if (n > 1) {
            int t = static_cast<int>(rng() % n);
            while (t == q) t = static_cast<int>(rng() % n);
            StateVector twice = core::apply_cnot(core::apply_cnot(psi, q, t), q, t);
            CHECK(dist_inf(twice, psi.amplitudes()) < 1e-12);
        }
    }
}

TEST_CASE("gate kernels match the dense matrix oracle") {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 3);
        StateVector psi = random_state(rng, n);
        std::vector<cplx> ref = psi.amplitudes();
        StateVector out(psi);
        for (const auto& gate : random_circuit(rng, n, 7)) {
            if (gate.kind == core::GateKind::RY) {
                out = core::apply_ry(out, gate.target, gate.angle);
                ref = oracle::mat_vec(oracle::ry_matrix(n, gate.target, gate.angle), ref);
            } else {
                out = core::apply_cnot(out, gate.control, gate.target);
                ref = oracle::mat_vec(oracle::cnot_matrix(n, gate.control, gate.target), ref);
            }
        }
        CHECK(dist_inf(out, ref) < 1e-12);
    }
}

TEST_CASE("state ids are unique per object") {
    StateVector a(2);
    StateVector b(a);
    StateVector c = a;
    CHECK(a.id() != b.id());
    CHECK(a.id() != c.id());
    CHECK(b.id() != c.id());
}

TEST_CASE("op counters track kernel invocations") {
    core::reset_op_counters();
    StateVector psi(2);
    psi = core::apply_ry(psi, 0, 0.3);
    psi = core::apply_cnot(psi, 0, 1);
    core::expectation(psi, core::Observable::pauli_z(0));
    const auto counters = core::op_counters();
    CHECK(counters.ry == 1);
    CHECK(counters.cnot == 1);
    CHECK(counters.expectation == 1);
}
