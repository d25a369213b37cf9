#pragma once

#include "qcrec/common.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace qcrec {

/// CART classification tree over a fixed class universe. Gini impurity,
/// exhaustive midpoint split search, deterministic tie-break (lowest feature
/// index, then lowest threshold).
class DecisionTree {
public:
    struct Options {
        int max_depth = std::numeric_limits<int>::max();
        int n_classes = 9;
        int feature_subsample = 0;  // 0 = all features (RF passes sqrt(d))
    };

    void fit(const Matrix& x, const std::vector<int>& y, Options opt, std::mt19937_64* rng = nullptr) {
        opt_ = opt;
        nodes_.clear();
        std::vector<int> idx(x.rows());
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<double> weights(x.rows(), 1.0);
        build(x, y, weights, idx, 0, rng);
    }

    void fit_weighted(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
                      Options opt) {
        opt_ = opt;
        nodes_.clear();
        std::vector<int> idx(x.rows());
        std::iota(idx.begin(), idx.end(), 0);
        build(x, y, w, idx, 0, nullptr);
    }

    /// Class-count distribution (weight mass per class) at the reached leaf.
    const Vector& leaf_distribution(const Vector& x) const {
        int node = 0;
        while (!nodes_[node].is_leaf)
            node = x(nodes_[node].feature) <= nodes_[node].threshold ? nodes_[node].left
                                                                     : nodes_[node].right;
        return nodes_[node].counts;
    }

    int predict(const Vector& x) const {
        const Vector& c = leaf_distribution(x);
        int best = 0;
        for (int k = 1; k < c.size(); ++k)
            if (c(k) > c(best)) best = k;
        return best;
    }

private:
    struct Node {
        bool is_leaf = true;
        int feature = -1;
        double threshold = 0;
        int left = -1, right = -1;
        Vector counts;
    };

    Options opt_;
    std::vector<Node> nodes_;

    int build(const Matrix& x, const std::vector<int>& y, const std::vector<double>& w,
              const std::vector<int>& idx, int depth, std::mt19937_64* rng) {
        int node_id = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        Vector counts = Vector::Zero(opt_.n_classes);
        for (int i : idx) counts(y[i]) += w[i];
        nodes_[node_id].counts = counts;

        double total = counts.sum();
        bool pure = false;
        for (int k = 0; k < opt_.n_classes; ++k)
            if (counts(k) == total && total > 0) pure = true;
        if (pure || depth >= opt_.max_depth || idx.size() < 2) return node_id;

        auto gini = [&](const Vector& c) {
            double t = c.sum();
            if (t <= 0) return 0.0;
            return 1.0 - (c / t).squaredNorm();
        };

        int d = static_cast<int>(x.cols());
        std::vector<int> features(d);
        std::iota(features.begin(), features.end(), 0);
        if (opt_.feature_subsample > 0 && opt_.feature_subsample < d && rng) {
            std::shuffle(features.begin(), features.end(), *rng);
            features.resize(opt_.feature_subsample);
            std::sort(features.begin(), features.end());
        }

        int best_f = -1;
        double best_thr = 0, best_score = gini(counts);
        std::vector<std::pair<double, int>> vals;
        for (int f : features) {
            vals.clear();
            for (int i : idx) vals.push_back({x(i, f), i});
            std::sort(vals.begin(), vals.end());
            Vector left = Vector::Zero(opt_.n_classes), right = counts;
            for (size_t s = 0; s + 1 < vals.size(); ++s) {
                int i = vals[s].second;
                left(y[i]) += w[i];
                right(y[i]) -= w[i];
                if (vals[s + 1].first <= vals[s].first) continue;  // no gap
                double lt = left.sum(), rt = right.sum();
                double score = (lt * gini(left) + rt * gini(right)) / total;
                if (score < best_score - 1e-12) {
                    best_score = score;
                    best_f = f;
                    best_thr = 0.5 * (vals[s].first + vals[s + 1].first);
                }
            }
        }
        if (best_f < 0) return node_id;

        std::vector<int> li, ri;
        for (int i : idx) (x(i, best_f) <= best_thr ? li : ri).push_back(i);
        if (li.empty() || ri.empty()) return node_id;
        nodes_[node_id].is_leaf = false;
        nodes_[node_id].feature = best_f;
        nodes_[node_id].threshold = best_thr;
        int l = build(x, y, w, li, depth + 1, rng);
        int r = build(x, y, w, ri, depth + 1, rng);
        nodes_[node_id].left = l;
        nodes_[node_id].right = r;
        return node_id;
    }
};

/// Squared-error regression tree for gradient boosting; leaves carry the
/// Newton-style logit update of multinomial boosting.
class RegressionTree {
public:
    /// residual = target gradient; hessian-ish denominator per sample.
    void fit(const Matrix& x, const Vector& residual, const Vector& denom, int max_depth) {
        nodes_.clear();
        std::vector<int> idx(x.rows());
        std::iota(idx.begin(), idx.end(), 0);
        build(x, residual, denom, idx, 0, max_depth);
    }

    double value(const Vector& x) const {
        int node = 0;
        while (!nodes_[node].is_leaf)
            node = x(nodes_[node].feature) <= nodes_[node].threshold ? nodes_[node].left
                                                                     : nodes_[node].right;
        return nodes_[node].value;
    }

private:
    struct Node {
        bool is_leaf = true;
        int feature = -1;
        double threshold = 0;
        int left = -1, right = -1;
        double value = 0;
    };
    std::vector<Node> nodes_;

    int build(const Matrix& x, const Vector& r, const Vector& h, const std::vector<int>& idx,
              int depth, int max_depth) {
        int node_id = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        double sum_r = 0, sum_h = 0;
        for (int i : idx) { sum_r += r(i); sum_h += h(i); }
        nodes_[node_id].value = sum_h > 1e-12 ? sum_r / sum_h : 0.0;

        if (depth >= max_depth || idx.size() < 2) return node_id;

        // Variance-reduction split on the residuals.
        double best_gain = 1e-12;
        int best_f = -1;
        double best_thr = 0;
        std::vector<std::pair<double, int>> vals;
        double total_sum = 0;
        for (int i : idx) total_sum += r(i);
        double nn = static_cast<double>(idx.size());
        for (int f = 0; f < x.cols(); ++f) {
            vals.clear();
            for (int i : idx) vals.push_back({x(i, f), i});
            std::sort(vals.begin(), vals.end());
            double lsum = 0;
            for (size_t s = 0; s + 1 < vals.size(); ++s) {
                lsum += r(vals[s].second);
                if (vals[s + 1].first <= vals[s].first) continue;
                double ln = static_cast<double>(s + 1), rn = nn - ln;
                double rsum = total_sum - lsum;
                double gain = lsum * lsum / ln + rsum * rsum / rn - total_sum * total_sum / nn;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_f = f;
                    best_thr = 0.5 * (vals[s].first + vals[s + 1].first);
                }
            }
        }
        if (best_f < 0) return node_id;
        std::vector<int> li, ri;
        for (int i : idx) (x(i, best_f) <= best_thr ? li : ri).push_back(i);
        if (li.empty() || ri.empty()) return node_id;
        nodes_[node_id].is_leaf = false;
        nodes_[node_id].feature = best_f;
        nodes_[node_id].threshold = best_thr;
        int l = build(x, r, h, li, depth + 1, max_depth);
        int rr = build(x, r, h, ri, depth + 1, max_depth);
        nodes_[node_id].left = l;
        nodes_[node_id].right = rr;
        return node_id;
    }
};

} // namespace qcrec
