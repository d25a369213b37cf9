#pragma once

#include "qcrec/cost.hpp"
#include "qcrec/svm/smo.hpp"

#include <vector>

namespace qcrec {

namespace detail {

inline Vector to_pm1(const std::vector<int>& y) {
    Vector v(y.size());
    for (size_t i = 0; i < y.size(); ++i) v(i) = y[i] == 1 ? 1.0 : -1.0;
    return v;
}

inline int majority_class(const std::vector<int>& y) {
    int c1 = 0;
    for (int v : y) c1 += (v == 1);
    return 2 * c1 >= static_cast<int>(y.size()) ? 1 : 0;
}

inline double accuracy_of(const Vector& decision, const std::vector<int>& y_test) {
    int ok = 0;
    for (int i = 0; i < decision.size(); ++i)
        ok += ((decision(i) >= 0 ? 1 : 0) == y_test[i]);
    return static_cast<double>(ok) / y_test.size();
}

} // namespace detail

/// Kernel SVM (C = 1) on a precomputed Gram; falls back to majority-class
/// accuracy if SMO fails to converge.
inline double svc_train_predict(const Matrix& k_train, const std::vector<int>& y_train,
                                const Matrix& k_test, const std::vector<int>& y_test) {
    cost_counters().evaluator_fits += 1;
    Vector y = detail::to_pm1(y_train);
    auto r = smo_solve(k_train, y, 1.0, 1e-6);
    if (!r.converged) {
        int maj = detail::majority_class(y_train);
        int ok = 0;
        for (int v : y_test) ok += (v == maj);
        return static_cast<double>(ok) / y_test.size();
    }
    return detail::accuracy_of(smo_decision(r, k_test, y), y_test);
}

/// Laplace-approximation posterior mode for binary GP classification with a
/// logistic likelihood: Newton iterations on psi(f) = log p(y|f) - 1/2 f^T
/// K^{-1} f, y in {-1,+1}. Retries with growing diagonal jitter if the inner
/// Cholesky fails.
inline Vector gpc_posterior_mode(const Matrix& k_train, const Vector& y) {
    int n = static_cast<int>(y.size());
    Matrix k = k_train;
    double jitter = 1e-8;
    for (int attempt = 0;; ++attempt) {
        Vector f = Vector::Zero(n);
        bool chol_ok = true;
        for (int it = 0; it < 100; ++it) {
            Vector pi = (1.0 + (-f.array()).exp()).inverse();     // sigma(f)
            Vector t = (y.array() + 1.0) / 2.0;
            Vector grad_lik = t - pi;                             // d log p(y|f) / df
            Vector w = pi.array() * (1.0 - pi.array());
            Vector w_sqrt = w.cwiseSqrt();
            Matrix b = Matrix::Identity(n, n) + w_sqrt.asDiagonal() * k * w_sqrt.asDiagonal();
            Eigen::LLT<Matrix> llt(b);
            if (llt.info() != Eigen::Success) { chol_ok = false; break; }
            Vector bvec = w.cwiseProduct(f) + grad_lik;
            Vector tmp = w_sqrt.cwiseProduct(k * bvec);
            Vector a = bvec - w_sqrt.cwiseProduct(llt.solve(tmp));
            Vector f_new = k * a;
            // Convergence on the objective gradient: grad_lik - K^{-1} f = grad_lik - a.
            double gnorm = (grad_lik - a).norm();
            f = f_new;
            if (gnorm <= 1e-6) break;
        }
        if (chol_ok) return f;
        if (attempt >= 3) throw NumericalError("gpc: Cholesky failed after jitter retries");
        k.diagonal().array() += jitter;
        jitter *= 10.0;
    }
}

/// Binary GP classification via the Laplace approximation; prediction by the
/// sign of the approximate latent test mean.
inline double gpc_train_predict(const Matrix& k_train, const std::vector<int>& y_train,
                                const Matrix& k_test, const std::vector<int>& y_test) {
    cost_counters().evaluator_fits += 1;
    Vector y = detail::to_pm1(y_train);
    Vector f = gpc_posterior_mode(k_train, y);
    Vector pi = (1.0 + (-f.array()).exp()).inverse();
    Vector t = (y.array() + 1.0) / 2.0;
    Vector grad_lik = t - pi;
    Vector mean_test = k_test * grad_lik;  // E[f*] = k*^T grad log p(y|f_hat)
    return detail::accuracy_of(mean_test, y_test);
}

/// Ridge coefficients: solve (K + alpha I) a = y.
inline Vector krc_coefficients(const Matrix& k_train, const Vector& y, double alpha) {
    int n = static_cast<int>(y.size());
    Matrix a = k_train + alpha * Matrix::Identity(n, n);
    Eigen::LDLT<Matrix> ldlt(a);
    if (ldlt.info() != Eigen::Success) {
        a.diagonal().array() += 1e-8;
        ldlt.compute(a);
        if (ldlt.info() != Eigen::Success) throw NumericalError("krc: singular system");
    }
    return ldlt.solve(y);
}

/// Kernel ridge classification: (K + alpha I) a = y+-, predict sign(K_test a).
inline double krc_train_predict(const Matrix& k_train, const std::vector<int>& y_train,
                                const Matrix& k_test, const std::vector<int>& y_test,
                                double alpha = 1.0) {
    cost_counters().evaluator_fits += 1;
    Vector y = detail::to_pm1(y_train);
    Vector coef = krc_coefficients(k_train, y, alpha);
    return detail::accuracy_of(k_test * coef, y_test);
}

} // namespace qcrec
