#include "qcrec/qsim/circuits.hpp"
#include "qcrec/qsim/gates.hpp"
#include "qcrec/qsim/kernel.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qcrec;

namespace {

Vector random_angles(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    Vector x(kNumQubits);
    for (int q = 0; q < kNumQubits; ++q) x(q) = u(rng);
    return x;
}

} // namespace

TEST_CASE("single-qubit gates act on the correct amplitudes") {
    StateVector s{};
    s[0] = 1.0;  // |0000>
    apply_gate(s, {GateKind::H, 0});
    CHECK(std::abs(s[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(s[1] - 1.0 / std::sqrt(2.0)) < 1e-12);  // qubit 0 is the LSB

    StateVector t{};
    t[0] = 1.0;
    apply_gate(t, {GateKind::RX, 2, -1, std::numbers::pi});
    // RX(pi)|0> = -i|1> on qubit 2 -> amplitude at index 4
    CHECK(std::abs(t[4] - std::complex<double>(0, -1)) < 1e-12);
}

TEST_CASE("controlled gates fire only when the control is set") {
    StateVector s{};
    s[1] = 1.0;  // qubit 0 = 1
    apply_gate(s, {GateKind::CX, 0, 1});
    CHECK(std::abs(s[3] - 1.0) < 1e-12);  // both qubits set

    StateVector t{};
    t[2] = 1.0;  // control clear (CX on 0 -> 1)
    apply_gate(t, {GateKind::CX, 0, 1});
    CHECK(std::abs(t[2] - 1.0) < 1e-12);  // unchanged
}

TEST_CASE("sqrt(iSWAP) squared equals iSWAP on |01>") {
    StateVector s{};
    s[1] = 1.0;  // |01> in (q1 q0) ordering: qubit0=1, qubit1=0
    apply_gate(s, {GateKind::SQISW, 0, 1});
    apply_gate(s, {GateKind::SQISW, 0, 1});
    // iSWAP maps |01> -> i|10>
    CHECK(std::abs(s[2] - std::complex<double>(0, 1)) < 1e-12);
    CHECK(std::abs(s[1]) < 1e-12);
}

TEST_CASE("gate validation rejects bad qubit indices") {
    StateVector s{};
    s[0] = 1.0;
    CHECK_THROWS_AS(apply_gate(s, {GateKind::H, 4}), InputError);
    CHECK_THROWS_AS(apply_gate(s, {GateKind::CX, 1, 1}), InputError);
}

TEST_CASE("structural audit: all nine circuits match the published shape table") {
    struct Row {
        CircuitId id;
        int params, gates, depth;
        std::string two_qubit;
    };
    const std::vector<Row> expect = {
        {CircuitId::SRx, 0, 8, 2, "-"},
        {CircuitId::HERx, 0, 14, 8, "CX"},
        {CircuitId::ZFM, 0, 16, 4, "-"},
        {CircuitId::ZZFM, 0, 34, 22, "CX"},
        {CircuitId::HD, 0, 31, 9, "sqrt(iSWAP)"},
        {CircuitId::YZ_CX, 16, 20, 6, "CX"},
        {CircuitId::HZY_CZ, 16, 28, 13, "CRZ"},
        {CircuitId::PZFM, 8, 22, 10, "CX"},
        {CircuitId::Chebyshev, 24, 24, 10, "CRZ"},
    };
    auto circuits = all_circuits();
    REQUIRE(circuits.size() == expect.size());
    for (const auto& row : expect) {
        CAPTURE(circuit_name(row.id));
        CircuitStructure s = circuit_structure(circuits[circuit_index(row.id)]);
        CHECK(s.n_params == row.params);
        CHECK(s.n_gates == row.gates);
        CHECK(s.depth == row.depth);
        CHECK(s.two_qubit_gate == row.two_qubit);
    }
}

TEST_CASE("encoded states are normalized") {
    std::mt19937_64 rng(5);
    for (const auto& c : all_circuits()) {
        Vector x = random_angles(rng);
        StateVector s = encode(c, x);
        double norm = 0;
        for (const auto& a : s.amps) norm += std::norm(a);
        CHECK(std::abs(norm - 1.0) < 1e-12);
    }
}

TEST_CASE("kernel symmetry and unit self-overlap") {
    std::mt19937_64 rng(17);
    for (const auto& c : all_circuits()) {
        CAPTURE(circuit_name(c.id));
        for (int rep = 0; rep < 20; ++rep) {
            Vector x = random_angles(rng), xp = random_angles(rng);
            double kxy = kernel(c, x, xp);
            double kyx = kernel(c, xp, x);
            CHECK(std::abs(kxy - kyx) < 1e-10);
            CHECK(kxy >= -1e-12);
            CHECK(kxy <= 1.0 + 1e-12);
            CHECK(std::abs(kernel(c, x, x) - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("product-of-cosines closed form for the rotation-only circuit") {
    auto circuits = all_circuits();
    const auto& srx = circuits[circuit_index(CircuitId::SRx)];
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 200; ++rep) {
        Vector x = random_angles(rng), xp = random_angles(rng);
        double expect = 1.0;
        for (int q = 0; q < kNumQubits; ++q) expect *= std::pow(std::cos(x(q) - xp(q)), 2);
        CHECK(std::abs(kernel(srx, x, xp) - expect) < 1e-10);
    }
}

TEST_CASE("gram matrices are positive semidefinite") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    Matrix x(40, kNumQubits);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) x(i, j) = u(rng);
    for (const auto& c : all_circuits()) {
        CAPTURE(circuit_name(c.id));
        GramMatrix g = gram(c, x, x);
        CHECK((g.entries - g.entries.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Matrix> es(g.entries);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
        for (int i = 0; i < x.rows(); ++i) CHECK(std::abs(g.entries(i, i) - 1.0) < 1e-12);
    }
}

TEST_CASE("gram counts kernel evaluations exactly once per unordered pair") {
    auto circuits = all_circuits();
    Matrix x = Matrix::Constant(10, kNumQubits, 0.5);
    auto before = cost_counters().kernel_evals.load();
    gram(circuits[0], x, x);
    auto after = cost_counters().kernel_evals.load();
    CHECK(after - before == 10 * 9 / 2 + 10);
}

TEST_CASE("encode rejects angles outside the preprocessing range") {
    auto circuits = all_circuits();
    Vector bad(kNumQubits);
    bad << -0.5, 0.1, 0.1, 0.1;
    CHECK_THROWS_AS(encode(circuits[0], bad), InputError);
}

TEST_CASE("parameterized circuits are deterministic under the parameter seed") {
    auto a = all_circuits(99);
    auto b = all_circuits(99);
    auto c = all_circuits(100);
    const auto& yz_a = a[circuit_index(CircuitId::YZ_CX)];
    const auto& yz_b = b[circuit_index(CircuitId::YZ_CX)];
    const auto& yz_c = c[circuit_index(CircuitId::YZ_CX)];
    REQUIRE(yz_a.params.size() == 16);
    CHECK(yz_a.params == yz_b.params);
    CHECK(yz_a.params != yz_c.params);
    for (double p : yz_a.params) {
        CHECK(p >= 0.0);
        CHECK(p < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("build_circuit validates the parameter count") {
    CHECK_THROWS_AS(build_circuit(CircuitId::YZ_CX, std::vector<double>(5, 1.0)), InputError);
    auto c = build_circuit(CircuitId::SRx, {});
    CHECK(c.params.empty());
}
