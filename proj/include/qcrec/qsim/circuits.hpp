#pragma once

#include "qcrec/qsim/gates.hpp"

#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

namespace qcrec {

enum class CircuitId { SRx, HERx, ZFM, ZZFM, HD, YZ_CX, HZY_CZ, PZFM, Chebyshev };

inline constexpr int kNumCircuits = 9;
inline constexpr int kLayers = 2;

inline constexpr std::array<CircuitId, kNumCircuits> kCircuitOrder = {
    CircuitId::SRx,    CircuitId::HERx,   CircuitId::ZFM,
    CircuitId::ZZFM,   CircuitId::HD,     CircuitId::YZ_CX,
    CircuitId::HZY_CZ, CircuitId::PZFM,   CircuitId::Chebyshev};

inline const char* circuit_name(CircuitId id) {
    switch (id) {
        case CircuitId::SRx: return "SRx";
        case CircuitId::HERx: return "HERx";
        case CircuitId::ZFM: return "ZFM";
        case CircuitId::ZZFM: return "ZZFM";
        case CircuitId::HD: return "HD";
        case CircuitId::YZ_CX: return "YZ_CX";
        case CircuitId::HZY_CZ: return "HZY_CZ";
        case CircuitId::PZFM: return "PZFM";
        case CircuitId::Chebyshev: return "Chebyshev";
    }
    return "?";
}

inline int circuit_index(CircuitId id) {
    for (int i = 0; i < kNumCircuits; ++i)
        if (kCircuitOrder[i] == id) return i;
    return -1;
}

inline CircuitId circuit_from_name(const std::string& s) {
    for (auto id : kCircuitOrder)
        if (s == circuit_name(id)) return id;
    throw InputError("unknown circuit id: " + s);
}

inline int circuit_param_count(CircuitId id) {
    switch (id) {
        case CircuitId::YZ_CX: return 16;
        case CircuitId::HZY_CZ: return 16;
        case CircuitId::PZFM: return 8;
        case CircuitId::Chebyshev: return 24;
        default: return 0;
    }
}

/// One of the nine feature maps with its trainable parameters bound.
/// The gate list is instantiated per input vector by gates_for().
struct EncodingCircuit {
    CircuitId id;
    std::vector<double> params;

    /// Gate list grouped into blocks separated by barriers (one block per
    /// repetition or entangling stage). Depth accounting respects barriers.
    std::vector<std::vector<Gate>> blocks_for(const Vector& x) const;

    std::vector<Gate> gates_for(const Vector& x) const {
        std::vector<Gate> flat;
        for (auto& b : blocks_for(x)) flat.insert(flat.end(), b.begin(), b.end());
        return flat;
    }
};

/// Parameters are never optimized: one seeded draw from U[0, 2pi), shared by
/// every dataset, so each circuit defines one fixed kernel.
inline constexpr std::uint64_t kDefaultParamSeed = 42;

inline EncodingCircuit build_circuit(CircuitId id, std::vector<double> params) {
    if (static_cast<int>(params.size()) != circuit_param_count(id))
        throw InputError(std::string("build_circuit: ") + circuit_name(id) + " needs " +
                         std::to_string(circuit_param_count(id)) + " params, got " +
                         std::to_string(params.size()));
    return {id, std::move(params)};
}

inline EncodingCircuit build_circuit(CircuitId id, std::uint64_t param_seed = kDefaultParamSeed) {
    int np = circuit_param_count(id);
    std::vector<double> p(np);
    auto rng = make_rng(param_seed, static_cast<std::uint64_t>(circuit_index(id)));
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (auto& v : p) v = u(rng);
    return {id, std::move(p)};
}

inline std::vector<EncodingCircuit> all_circuits(std::uint64_t param_seed = kDefaultParamSeed) {
    std::vector<EncodingCircuit> cs;
    for (auto id : kCircuitOrder) cs.push_back(build_circuit(id, param_seed));
    return cs;
}

inline std::vector<std::vector<Gate>> EncodingCircuit::blocks_for(const Vector& x) const {
    using std::numbers::pi;
    if (x.size() != kNumQubits) throw InputError("encode: feature vector must have 4 entries");
    std::vector<std::vector<Gate>> blocks;
    std::vector<Gate> g;
    auto rot = [&](GateKind k, int q, double a) { g.push_back({k, q, -1, a}); };
    auto h = [&](int q) { g.push_back({GateKind::H, q, -1, std::nullopt}); };
    auto cx = [&](int a, int b) { g.push_back({GateKind::CX, a, b, std::nullopt}); };
    auto crz = [&](int a, int b, double t) { g.push_back({GateKind::CRZ, a, b, t}); };
    auto sqisw = [&](int a, int b) { g.push_back({GateKind::SQISW, a, b, std::nullopt}); };
    auto barrier = [&] { blocks.push_back(std::move(g)); g.clear(); };

    switch (id) {
        case CircuitId::SRx:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RX, q, x(q));
                barrier();
            }
            break;

        case CircuitId::HERx:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RX, q, x(q));
                cx(0, 1); cx(1, 2); cx(2, 3);
                barrier();
            }
            break;

        case CircuitId::ZFM:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) h(q);
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::P, q, 2.0 * x(q));
                barrier();
            }
            break;

        case CircuitId::ZZFM:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) h(q);
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::P, q, 2.0 * x(q));
                for (int q = 0; q < kNumQubits - 1; ++q) {
                    cx(q, q + 1);
                    rot(GateKind::P, q + 1, 2.0 * (pi - x(q)) * (pi - x(q + 1)));
                    cx(q, q + 1);
                }
                barrier();
            }
            break;

        case CircuitId::HD:
            // Two dense single-qubit blocks joined by a sqrt(iSWAP) entangler,
            // closed by a Hadamard wall: 31 gates, depth 9.
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RY, q, x(q));
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RZ, q, x(q));
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RY, q, x(q));
                barrier();
                if (l == 0) {
                    sqisw(0, 1); sqisw(2, 3); sqisw(1, 2);
                    barrier();
                }
            }
            for (int q = 0; q < kNumQubits; ++q) h(q);
            barrier();
            break;

        case CircuitId::YZ_CX:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RY, q, params[8 * l + q] * x(q));
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RZ, q, params[8 * l + 4 + q] * x(q));
                cx(0, 1); cx(2, 3);
                barrier();
            }
            break;

        case CircuitId::HZY_CZ:
            for (int q = 0; q < kNumQubits; ++q) h(q);
            barrier();
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RZ, q, params[8 * l + q] * x(q));
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RY, q, params[8 * l + 4 + q] * x(q));
                crz(0, 1, (pi - x(0)) * (pi - x(1)));
                crz(1, 2, (pi - x(1)) * (pi - x(2)));
                crz(2, 3, (pi - x(2)) * (pi - x(3)));
                crz(3, 0, (pi - x(3)) * (pi - x(0)));
                barrier();
            }
            break;

        case CircuitId::PZFM:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) h(q);
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::P, q, params[4 * l + q] * x(q));
                cx(0, 1); cx(1, 2); cx(2, 3);
                barrier();
            }
            break;

        case CircuitId::Chebyshev:
            for (int l = 0; l < kLayers; ++l) {
                for (int q = 0; q < kNumQubits; ++q) {
                    double xt = std::clamp(2.0 * x(q) / pi - 1.0, -1.0, 1.0);
                    rot(GateKind::RX, q, params[12 * l + q] * std::acos(xt));
                }
                for (int q = 0; q < kNumQubits; ++q) rot(GateKind::RY, q, params[12 * l + 4 + q]);
                crz(0, 1, params[12 * l + 8]);
                crz(1, 2, params[12 * l + 9]);
                crz(3, 0, params[12 * l + 10]);
                crz(2, 3, params[12 * l + 11]);
                barrier();
            }
            break;
    }
    if (!g.empty()) blocks.push_back(std::move(g));
    return blocks;
}

/// Greedy as-soon-as-possible depth within a block: a gate enters the
/// earliest layer where all its qubits are free.
inline int block_depth(const std::vector<Gate>& gates) {
    std::array<int, kNumQubits> busy{};
    int depth = 0;
    for (const auto& g : gates) {
        int layer = busy[g.q0];
        if (gate_is_two_qubit(g.kind)) layer = std::max(layer, busy[g.q1]);
        layer += 1;
        busy[g.q0] = layer;
        if (gate_is_two_qubit(g.kind)) busy[g.q1] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

/// Total depth: blocks are separated by barriers, so depths add.
inline int circuit_depth(const std::vector<std::vector<Gate>>& blocks) {
    int depth = 0;
    for (const auto& b : blocks) depth += block_depth(b);
    return depth;
}

/// Structural summary checked against the published circuit table.
struct CircuitStructure {
    int n_params;
    int n_gates;
    int depth;
    std::string two_qubit_gate;  // "-" when none
};

inline CircuitStructure circuit_structure(const EncodingCircuit& c) {
    Vector probe(kNumQubits);
    probe << 0.3, 0.7, 1.1, 2.0;
    auto blocks = c.blocks_for(probe);
    std::string twoq = "-";
    int n_gates = 0;
    for (const auto& b : blocks)
        for (const auto& g : b) {
            ++n_gates;
            if (gate_is_two_qubit(g.kind)) {
                std::string name = g.kind == GateKind::SQISW ? "sqrt(iSWAP)" : gate_name(g.kind);
                if (twoq != "-" && twoq != name)
                    throw NumericalError("circuit mixes two-qubit gate kinds");
                twoq = name;
            }
        }
    return {static_cast<int>(c.params.size()), n_gates, circuit_depth(blocks), twoq};
}

} // namespace qcrec
