#pragma once

#include "qcrec/cost.hpp"
#include "qcrec/qsim/circuits.hpp"

#include <fstream>
#include <numbers>
#include <vector>

namespace qcrec {

/// |phi(x)> = U(x)|0...0>. Inputs must already be preprocessed to [0, pi].
inline StateVector encode(const EncodingCircuit& c, const Vector& x) {
    for (int q = 0; q < x.size(); ++q)
        if (x(q) < -1e-12 || x(q) > std::numbers::pi + 1e-12)
            throw InputError("encode: feature outside [0, pi]");
    StateVector s = StateVector::zero_state();
    for (const auto& g : c.gates_for(x)) apply_gate(s, g);
    return s;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
    Amplitude overlap = 0;
    for (int i = 0; i < kDim; ++i) overlap += std::conj(a.amps[i]) * b.amps[i];
    double k = std::norm(overlap);
    return std::clamp(k, 0.0, 1.0);
}

/// Fidelity kernel K(x, x') = |<phi(x)|phi(x')>|^2.
inline double kernel(const EncodingCircuit& c, const Vector& x, const Vector& xp) {
    cost_counters().kernel_evals += 1;
    return fidelity(encode(c, x), encode(c, xp));
}

struct GramMatrix {
    Matrix entries;
    CircuitId circuit_id;
};

namespace detail {

inline std::vector<StateVector> encode_rows(const EncodingCircuit& c, const Matrix& a) {
    std::vector<StateVector> states;
    states.reserve(a.rows());
    for (int i = 0; i < a.rows(); ++i) states.push_back(encode(c, a.row(i).transpose()));
    return states;
}

} // namespace detail

/// Gram of kernel values between rows of A and rows of B; states for each
/// side are encoded once and reused. Pass the same matrix twice for the
/// square symmetric case.
inline GramMatrix gram(const EncodingCircuit& c, const Matrix& a, const Matrix& b) {
    if (a.cols() != kNumQubits || b.cols() != kNumQubits)
        throw InputError("gram: sample matrices must have 4 columns");
    cost_counters().gram_builds += 1;
    bool square = (&a == &b) || (a.rows() == b.rows() && a == b);
    auto sa = detail::encode_rows(c, a);
    GramMatrix g{Matrix(a.rows(), b.rows()), c.id};
    if (square) {
        for (int i = 0; i < a.rows(); ++i) {
            g.entries(i, i) = 1.0;
            for (int j = i + 1; j < a.rows(); ++j) {
                cost_counters().kernel_evals += 1;
                double k = fidelity(sa[i], sa[j]);
                g.entries(i, j) = k;
                g.entries(j, i) = k;
            }
        }
        cost_counters().kernel_evals += a.rows();  // diagonal self-fidelities
    } else {
        auto sb = detail::encode_rows(c, b);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < b.rows(); ++j) {
                cost_counters().kernel_evals += 1;
                g.entries(i, j) = fidelity(sa[i], sb[j]);
            }
    }
    return g;
}

inline void gram_to_csv(const GramMatrix& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << "# circuit=" << circuit_name(g.circuit_id) << "\n";
    for (int i = 0; i < g.entries.rows(); ++i) {
        for (int j = 0; j < g.entries.cols(); ++j)
            f << (j ? "," : "") << g.entries(i, j);
        f << "\n";
    }
}

/// Human-readable gate list for every circuit, one symbolic line per gate
/// pattern. This is the frozen realization the simulator implements.
inline std::string circuit_manifest_text() {
    return
R"(# Encoding circuit manifest (4 qubits, L = 2 layers)
# q ranges over qubits 0..3; x_q are input angles in [0, pi]; p[i] are fixed
# parameters drawn once from U[0, 2pi) with the pinned parameter seed.

SRx:            # 0 params, 8 gates, depth 2
  repeat 2: RX(x_q) on q=0..3

HERx:           # 0 params, 14 gates, depth 8
  repeat 2: RX(x_q) on q=0..3; CX(0,1); CX(1,2); CX(2,3)

ZFM:            # 0 params, 16 gates, depth 4
  repeat 2: H on q=0..3; P(2*x_q) on q=0..3

ZZFM:           # 0 params, 34 gates, depth 22
  repeat 2: H on q=0..3; P(2*x_q) on q=0..3;
            for (i,j) in (0,1),(1,2),(2,3): CX(i,j); P(2*(pi-x_i)*(pi-x_j)) on j; CX(i,j)

HD:             # 0 params, 31 gates, depth 9
  block A: RY(x_q), RZ(x_q), RY(x_q) on q=0..3
  block A; SQISW(0,1); SQISW(2,3); SQISW(1,2); block A; H on q=0..3

YZ_CX:          # 16 params, 20 gates, depth 6
  layer l=0,1: RY(p[8l+q]*x_q) on q=0..3; RZ(p[8l+4+q]*x_q) on q=0..3; CX(0,1); CX(2,3)

HZY_CZ:         # 16 params, 28 gates, depth 13
  H on q=0..3
  layer l=0,1: RZ(p[8l+q]*x_q) on q=0..3; RY(p[8l+4+q]*x_q) on q=0..3;
               CRZ((pi-x_i)*(pi-x_j)) on (0,1),(1,2),(2,3),(3,0)

PZFM:           # 8 params, 22 gates, depth 10
  layer l=0,1: H on q=0..3; P(p[4l+q]*x_q) on q=0..3; CX(0,1); CX(1,2); CX(2,3)

Chebyshev:      # 24 params, 24 gates, depth 10
  layer l=0,1: RX(p[12l+q]*acos(2*x_q/pi - 1)) on q=0..3; RY(p[12l+4+q]) on q=0..3;
               CRZ(p[12l+8..11]) on (0,1),(1,2),(3,0),(2,3)
)";
}

} // namespace qcrec
