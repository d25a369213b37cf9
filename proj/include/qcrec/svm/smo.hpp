#pragma once

#include "qcrec/common.hpp"

#include <limits>
#include <vector>

namespace qcrec {

/// Soft-margin SVM dual solved by SMO with maximal-violating-pair working set
/// selection, on a precomputed kernel matrix. Labels are +-1.
struct SmoResult {
    Vector alpha;
    double bias = 0.0;
    bool converged = false;
    int iterations = 0;

    double dual_objective(const Matrix& k, const Vector& y) const {
        Vector ay = alpha.cwiseProduct(y);
        return alpha.sum() - 0.5 * ay.dot(k * ay);
    }
};

inline SmoResult smo_solve(const Matrix& k, const Vector& y, double c = 1.0, double tol = 1e-6,
                           int max_iter = 200000) {
    int n = static_cast<int>(y.size());
    if (k.rows() != n || k.cols() != n) throw InputError("smo_solve: kernel/label size mismatch");
    SmoResult r;
    r.alpha = Vector::Zero(n);
    Vector grad = Vector::Ones(n);  // gradient of the dual wrt alpha: 1 - y_i sum_j alpha_j y_j K_ij

    for (int it = 0; it < max_iter; ++it) {
        // Maximal violating pair over the feasible directions.
        int i = -1, j = -1;
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        for (int t = 0; t < n; ++t) {
            double yg = y(t) * grad(t);
            bool up = (y(t) > 0 && r.alpha(t) < c) || (y(t) < 0 && r.alpha(t) > 0);
            bool down = (y(t) > 0 && r.alpha(t) > 0) || (y(t) < 0 && r.alpha(t) < c);
            if (up && yg > gmax) { gmax = yg; i = t; }
            if (down && yg < gmin) { gmin = yg; j = t; }
        }
        r.iterations = it;
        if (i < 0 || j < 0 || gmax - gmin <= tol) {
            r.converged = true;
            r.bias = (gmax + gmin) / 2.0;
            return r;
        }

        // Two-variable update along (i, j).
        double quad = k(i, i) + k(j, j) - 2.0 * y(i) * y(j) * k(i, j);
        quad = std::max(quad, 1e-12);
        double delta = (gmax - gmin) / quad;
        // Box clipping in the transformed variables.
        double ai = r.alpha(i), aj = r.alpha(j);
        double max_step_i = y(i) > 0 ? c - ai : ai;
        double max_step_j = y(j) > 0 ? aj : c - aj;
        delta = std::min({delta, max_step_i, max_step_j});
        r.alpha(i) += y(i) * delta;
        r.alpha(j) -= y(j) * delta;
        // grad_t = 1 - y_t sum_s alpha_s y_s K_ts
        for (int t = 0; t < n; ++t)
            grad(t) -= y(t) * delta * (k(t, i) - k(t, j));
    }
    r.bias = 0.0;
    return r;  // not converged
}

/// Decision values f(b) = sum_i alpha_i y_i K(b, i) + bias for rows of a
/// cross-kernel (rows = evaluation points, cols = training points).
inline Vector smo_decision(const SmoResult& r, const Matrix& k_cross, const Vector& y) {
    return k_cross * r.alpha.cwiseProduct(y) + Vector::Constant(k_cross.rows(), r.bias);
}

} // namespace qcrec
