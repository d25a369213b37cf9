#pragma once

#include "qcrec/common.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <optional>

namespace qcrec {

inline constexpr int kNumQubits = 4;
inline constexpr int kDim = 1 << kNumQubits;

using Amplitude = std::complex<double>;

/// 16 complex amplitudes over 4 qubits; qubit 0 is the least significant bit
/// of the amplitude index.
struct StateVector {
    std::array<Amplitude, kDim> amps{};

    Amplitude& operator[](std::size_t i) { return amps[i]; }
    const Amplitude& operator[](std::size_t i) const { return amps[i]; }

    static StateVector zero_state() {
        StateVector s;
        s.amps[0] = 1.0;
        return s;
    }

    double norm_sq() const {
        double n = 0;
        for (const auto& a : amps) n += std::norm(a);
        return n;
    }
};

enum class GateKind { H, RX, RY, RZ, P, CX, CZ, CRZ, SQISW };

inline bool gate_is_two_qubit(GateKind k) {
    return k == GateKind::CX || k == GateKind::CZ || k == GateKind::CRZ || k == GateKind::SQISW;
}

inline bool gate_has_angle(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::P ||
           k == GateKind::CRZ;
}

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::P: return "P";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
        case GateKind::CRZ: return "CRZ";
        case GateKind::SQISW: return "SQISW";
    }
    return "?";
}

struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;                    // second qubit for two-qubit kinds
    std::optional<double> angle;    // radians, present iff parameterized

    void validate() const {
        auto in_range = [](int q) { return q >= 0 && q < kNumQubits; };
        if (!in_range(q0)) throw InputError("gate: invalid qubit index");
        if (gate_is_two_qubit(kind)) {
            if (!in_range(q1) || q1 == q0) throw InputError("gate: invalid two-qubit targets");
        }
        if (gate_has_angle(kind) != angle.has_value())
            throw InputError("gate: angle presence mismatch");
    }
};

namespace detail {

inline void apply_1q(StateVector& s, int q, Amplitude u00, Amplitude u01, Amplitude u10,
                     Amplitude u11) {
    int bit = 1 << q;
    for (int i = 0; i < kDim; ++i) {
        if (i & bit) continue;
        Amplitude a0 = s.amps[i], a1 = s.amps[i | bit];
        s.amps[i] = u00 * a0 + u01 * a1;
        s.amps[i | bit] = u10 * a0 + u11 * a1;
    }
}

} // namespace detail

/// Apply one gate in place. Norm is preserved (all kinds are unitary).
inline void apply_gate(StateVector& s, const Gate& g) {
    using namespace std::complex_literals;
    g.validate();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H:
            detail::apply_1q(s, g.q0, inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
            break;
        case GateKind::RX: {
            double c = std::cos(*g.angle / 2), sn = std::sin(*g.angle / 2);
            detail::apply_1q(s, g.q0, c, -1i * sn, -1i * sn, c);
            break;
        }
        case GateKind::RY: {
            double c = std::cos(*g.angle / 2), sn = std::sin(*g.angle / 2);
            detail::apply_1q(s, g.q0, c, -sn, sn, c);
            break;
        }
        case GateKind::RZ: {
            Amplitude e = std::exp(-1i * (*g.angle / 2));
            detail::apply_1q(s, g.q0, e, 0, 0, std::conj(e));
            break;
        }
        case GateKind::P: {
            detail::apply_1q(s, g.q0, 1, 0, 0, std::exp(1i * *g.angle));
            break;
        }
        case GateKind::CX: {
            int c = 1 << g.q0, t = 1 << g.q1;
            for (int i = 0; i < kDim; ++i)
                if ((i & c) && !(i & t)) std::swap(s.amps[i], s.amps[i | t]);
            break;
        }
        case GateKind::CZ: {
            int c = 1 << g.q0, t = 1 << g.q1;
            for (int i = 0; i < kDim; ++i)
                if ((i & c) && (i & t)) s.amps[i] = -s.amps[i];
            break;
        }
        case GateKind::CRZ: {
            int c = 1 << g.q0, t = 1 << g.q1;
            Amplitude e0 = std::exp(-1i * (*g.angle / 2)), e1 = std::conj(e0);
            for (int i = 0; i < kDim; ++i)
                if (i & c) s.amps[i] *= (i & t) ? e1 : e0;
            break;
        }
        case GateKind::SQISW: {
            // Identity on |00>,|11>; [[1/sqrt2, i/sqrt2],[i/sqrt2, 1/sqrt2]]
            // on span{|01>,|10>}.
            int b0 = 1 << g.q0, b1 = 1 << g.q1;
            for (int i = 0; i < kDim; ++i) {
                if ((i & b0) || !(i & b1)) continue;  // enumerate the |01> member once
                int j = (i ^ b1) | b0;                // the paired |10> index
                Amplitude a01 = s.amps[i], a10 = s.amps[j];
                s.amps[i] = inv_sqrt2 * a01 + 1i * inv_sqrt2 * a10;
                s.amps[j] = 1i * inv_sqrt2 * a01 + inv_sqrt2 * a10;
            }
            break;
        }
    }
}

} // namespace qcrec
