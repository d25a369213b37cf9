#pragma once

#include "qcrec/datagen/dataset.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace qcrec {

inline constexpr int kQubits = 4;

/// Min-max scale each column to [0,1]. Constant columns map to 0.
inline Matrix minmax_scale(const Matrix& x, ScalerParams* params = nullptr) {
    Matrix out(x.rows(), x.cols());
    Vector lo = x.colwise().minCoeff();
    Vector hi = x.colwise().maxCoeff();
    for (int j = 0; j < x.cols(); ++j) {
        double range = hi(j) - lo(j);
        if (range <= 0.0)
            out.col(j).setZero();
        else
            out.col(j) = (x.col(j).array() - lo(j)) / range;
    }
    if (params) {
        params->min = lo;
        params->max = hi;
    }
    return out;
}

/// Principal directions of the covariance of x, largest eigenvalues first.
/// Sign convention: each component's largest-magnitude coordinate is positive.
inline PcaParams fit_pca(const Matrix& x, int n_components) {
    PcaParams p;
    p.mean = x.colwise().mean();
    Matrix centered = x.rowwise() - p.mean.transpose();
    Matrix cov = centered.transpose() * centered / std::max<double>(1.0, x.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    int d = static_cast<int>(x.cols());
    n_components = std::min(n_components, d);
    p.basis.resize(d, n_components);
    for (int k = 0; k < n_components; ++k) {
        Vector v = es.eigenvectors().col(d - 1 - k);  // descending eigenvalue order
        int imax = 0;
        for (int i = 1; i < d; ++i)
            if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
        if (v(imax) < 0) v = -v;
        p.basis.col(k) = v;
    }
    return p;
}

inline Matrix pca_project(const Matrix& x, const PcaParams& p) {
    return (x.rowwise() - p.mean.transpose()) * p.basis;
}

/// Stratified split indices: |test| = round(0.2 n), per-class test counts by
/// largest remainder so class ratios are preserved within one sample.
inline void stratified_split(const std::vector<int>& labels, double test_fraction,
                             std::uint64_t seed, std::vector<int>& train_idx,
                             std::vector<int>& test_idx) {
    int n = static_cast<int>(labels.size());
    int n_test = static_cast<int>(std::lround(test_fraction * n));
    if (n < 5 || n_test < 1 || n - n_test < 1)
        throw InputError("stratified_split: too few samples for an 8/2 split");

    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < n; ++i) by_class[labels[i]].push_back(i);

    // Quotas: floor of the proportional share, then largest fractional remainder.
    std::vector<std::pair<double, int>> remainders;  // (-frac, class id)
    std::map<int, int> quota;
    int assigned = 0;
    for (const auto& [cls, idx] : by_class) {
        double share = test_fraction * idx.size();
        quota[cls] = static_cast<int>(std::floor(share));
        assigned += quota[cls];
        remainders.push_back({-(share - std::floor(share)), cls});
    }
    std::sort(remainders.begin(), remainders.end());
    for (int i = 0; assigned < n_test; ++i, ++assigned) quota[remainders[i % remainders.size()].second] += 1;

    train_idx.clear();
    test_idx.clear();
    auto rng = make_rng(seed, 0x5117);
    for (auto& [cls, idx] : by_class) {
        std::shuffle(idx.begin(), idx.end(), rng);
        int q = std::min<int>(quota[cls], static_cast<int>(idx.size()) - 1);
        for (int i = 0; i < static_cast<int>(idx.size()); ++i)
            (i < q ? test_idx : train_idx).push_back(idx[i]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
}

/// Standard pipeline: min-max to [0,1]; PCA to 4 components when wider than 4
/// (fit on the full dataset, then re-scaled to [0,1]); remap to [0, pi];
/// stratified 8/2 split.
inline PreprocessedDataset preprocess(const LabeledDataset& d, std::uint64_t seed) {
    d.validate();
    PreprocessedDataset out;
    out.name = d.name;

    Matrix scaled = minmax_scale(d.features, &out.scaler_params);
    if (scaled.cols() > kQubits) {
        out.has_pca = true;
        out.pca_params = fit_pca(scaled, kQubits);
        scaled = minmax_scale(pca_project(scaled, out.pca_params));
    }
    if (scaled.cols() < kQubits) {
        // Narrow datasets are zero-padded so every circuit always sees 4
        // angles; a 0 angle leaves the padded qubits untouched by the data.
        Matrix padded = Matrix::Zero(scaled.rows(), kQubits);
        padded.leftCols(scaled.cols()) = scaled;
        scaled = padded;
    }
    Matrix angles = scaled * std::numbers::pi;

    std::vector<int> train_idx, test_idx;
    stratified_split(d.labels, 0.2, seed, train_idx, test_idx);

    out.train_features.resize(train_idx.size(), angles.cols());
    out.train_labels.resize(train_idx.size());
    for (size_t i = 0; i < train_idx.size(); ++i) {
        out.train_features.row(i) = angles.row(train_idx[i]);
        out.train_labels[i] = d.labels[train_idx[i]];
    }
    out.test_features.resize(test_idx.size(), angles.cols());
    out.test_labels.resize(test_idx.size());
    for (size_t i = 0; i < test_idx.size(); ++i) {
        out.test_features.row(i) = angles.row(test_idx[i]);
        out.test_labels[i] = d.labels[test_idx[i]];
    }
    return out;
}

} // namespace qcrec
