#pragma once

#include "qcrec/cost.hpp"
#include "qcrec/meta/tree.hpp"
#include "qcrec/svm/smo.hpp"

#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace qcrec {

enum class ClassifierId { DT, RF, EGB, AB, Bg, SVM_L, SVM_R, SVM_S, MLP1, MLP3, KNN, NC, NB, LR };

inline constexpr int kNumBaseClassifiers = 14;

inline constexpr std::array<ClassifierId, kNumBaseClassifiers> kClassifierOrder = {
    ClassifierId::DT,    ClassifierId::RF,    ClassifierId::EGB,  ClassifierId::AB,
    ClassifierId::Bg,    ClassifierId::SVM_L, ClassifierId::SVM_R, ClassifierId::SVM_S,
    ClassifierId::MLP1,  ClassifierId::MLP3,  ClassifierId::KNN,  ClassifierId::NC,
    ClassifierId::NB,    ClassifierId::LR};

inline const char* classifier_name(ClassifierId c) {
    switch (c) {
        case ClassifierId::DT: return "DT";
        case ClassifierId::RF: return "RF";
        case ClassifierId::EGB: return "E-GB";
        case ClassifierId::AB: return "AB";
        case ClassifierId::Bg: return "Bg";
        case ClassifierId::SVM_L: return "SVM-L";
        case ClassifierId::SVM_R: return "SVM-R";
        case ClassifierId::SVM_S: return "SVM-S";
        case ClassifierId::MLP1: return "MLP-1";
        case ClassifierId::MLP3: return "MLP-3";
        case ClassifierId::KNN: return "KNN";
        case ClassifierId::NC: return "NC";
        case ClassifierId::NB: return "NB";
        case ClassifierId::LR: return "LR";
    }
    return "?";
}

inline ClassifierId classifier_from_name(const std::string& s) {
    for (auto c : kClassifierOrder)
        if (s == classifier_name(c)) return c;
    throw InputError("unknown classifier id: " + s);
}

/// Sentinel for "this class cannot be recommended by this model" (unseen in
/// training, or zero votes). Ranking skips these entries.
inline constexpr double kNoScore = -1e300;

/// A fitted meta-classifier over the 9-circuit class universe. class_scores
/// returns one score per canonical class index; higher ranks earlier.
class BaseModel {
public:
    virtual ~BaseModel() = default;
    virtual Vector class_scores(const Vector& x) const = 0;

    int predict(const Vector& x) const {
        Vector s = class_scores(x);
        int best = 0;
        for (int k = 1; k < s.size(); ++k)
            if (s(k) > s(best)) best = k;   // ties keep the lowest canonical index
        return best;
    }
};

namespace meta_detail {

constexpr int kNumClasses = 9;

inline std::vector<int> seen_classes(const std::vector<int>& y) {
    std::vector<bool> seen(kNumClasses, false);
    for (int v : y) seen[v] = true;
    std::vector<int> out;
    for (int k = 0; k < kNumClasses; ++k)
        if (seen[k]) out.push_back(k);
    return out;
}

/// Mask a raw score vector: classes with no support become kNoScore.
inline Vector mask_unseen(Vector s, const std::vector<int>& seen) {
    Vector out = Vector::Constant(kNumClasses, kNoScore);
    for (int k : seen) out(k) = s(k);
    return out;
}

// ---- Tree family ---------------------------------------------------------

class DtModel : public BaseModel {
public:
    DecisionTree tree;
    Vector class_scores(const Vector& x) const override {
        Vector c = tree.leaf_distribution(x);
        Vector out(kNumClasses);
        for (int k = 0; k < kNumClasses; ++k) out(k) = c(k) > 0 ? c(k) : kNoScore;
        return out;
    }
};

class VoteForestModel : public BaseModel {
public:
    std::vector<DecisionTree> trees;
    Vector class_scores(const Vector& x) const override {
        Vector votes = Vector::Zero(kNumClasses);
        for (const auto& t : trees) votes(t.predict(x)) += 1;
        for (int k = 0; k < kNumClasses; ++k)
            if (votes(k) == 0) votes(k) = kNoScore;
        return votes;
    }
};

class GradientBoostModel : public BaseModel {
public:
    std::vector<int> classes;                       // seen classes, canonical order
    std::vector<std::vector<RegressionTree>> trees; // [iteration][class]
    double learning_rate = 0.1;

    Vector class_scores(const Vector& x) const override {
        int kc = static_cast<int>(classes.size());
        Vector f = Vector::Zero(kc);
        for (const auto& iter : trees)
            for (int k = 0; k < kc; ++k) f(k) += learning_rate * iter[k].value(x);
        Vector p = (f.array() - f.maxCoeff()).exp();
        p /= p.sum();
        Vector out = Vector::Constant(kNumClasses, kNoScore);
        for (int k = 0; k < kc; ++k) out(classes[k]) = p(k);
        return out;
    }
};

class AdaBoostModel : public BaseModel {
public:
    std::vector<DecisionTree> stumps;
    std::vector<double> weights;
    std::vector<int> seen;

    Vector class_scores(const Vector& x) const override {
        Vector votes = Vector::Zero(kNumClasses);
        for (size_t m = 0; m < stumps.size(); ++m) votes(stumps[m].predict(x)) += weights[m];
        for (int k = 0; k < kNumClasses; ++k)
            if (votes(k) <= 0) votes(k) = kNoScore;
        return votes;
    }
};

// ---- SVM family (one-vs-rest on a shared kernel) -------------------------

enum class SvmKernel { Linear, Rbf, Sigmoid };

class SvmOvrModel : public BaseModel {
public:
    SvmKernel kernel;
    double gamma = 1.0;
    Matrix support_x;                // training inputs
    std::vector<int> classes;
    std::vector<Vector> coef;        // alpha_i * y_i per class
    std::vector<double> bias;

    double k_eval(const Vector& a, const Vector& b) const {
        switch (kernel) {
            case SvmKernel::Linear: return a.dot(b);
            case SvmKernel::Rbf: return std::exp(-gamma * (a - b).squaredNorm());
            case SvmKernel::Sigmoid: return std::tanh(gamma * a.dot(b));
        }
        return 0;
    }

    Vector class_scores(const Vector& x) const override {
        Vector kx(support_x.rows());
        for (int i = 0; i < support_x.rows(); ++i) kx(i) = k_eval(support_x.row(i).transpose(), x);
        Vector out = Vector::Constant(kNumClasses, kNoScore);
        for (size_t c = 0; c < classes.size(); ++c) out(classes[c]) = kx.dot(coef[c]) + bias[c];
        return out;
    }
};

// ---- Neural network ------------------------------------------------------

/// Fully connected ReLU network with softmax output, trained by full-batch
/// Adam. Schedule pinned: lr 1e-2, 200 epochs, He-uniform init.
class MlpModel : public BaseModel {
public:
    std::vector<Matrix> w;  // [layer] out x in
    std::vector<Vector> b;
    std::vector<int> classes;

    Vector forward_logits(const Vector& x) const {
        Vector h = x;
        for (size_t l = 0; l < w.size(); ++l) {
            h = w[l] * h + b[l];
            if (l + 1 < w.size()) h = h.cwiseMax(0.0);
        }
        return h;
    }

    Vector class_scores(const Vector& x) const override {
        Vector z = forward_logits(x);
        Vector p = (z.array() - z.maxCoeff()).exp();
        p /= p.sum();
        Vector out = Vector::Constant(kNumClasses, kNoScore);
        for (size_t c = 0; c < classes.size(); ++c) out(classes[c]) = p(c);
        return out;
    }
};

// ---- Instance-based / probabilistic --------------------------------------

class KnnModel : public BaseModel {
public:
    Matrix x;
    std::vector<int> y;
    int k = 5;

    Vector class_scores(const Vector& q) const override {
        int n = static_cast<int>(y.size());
        std::vector<std::pair<double, int>> d(n);
        for (int i = 0; i < n; ++i) d[i] = {(x.row(i).transpose() - q).norm(), i};
        int kk = std::min(k, n);
        std::partial_sort(d.begin(), d.begin() + kk, d.end());
        Vector votes = Vector::Zero(kNumClasses);
        for (int i = 0; i < kk; ++i) votes(y[d[i].second]) += 1;
        for (int c = 0; c < kNumClasses; ++c)
            if (votes(c) == 0) votes(c) = kNoScore;
        return votes;
    }
};

class CentroidModel : public BaseModel {
public:
    std::vector<int> classes;
    Matrix centroids;  // one row per seen class

    Vector class_scores(const Vector& x) const override {
        Vector out = Vector::Constant(kNumClasses, kNoScore);
        for (size_t c = 0; c < classes.size(); ++c)
            out(classes[c]) = -(centroids.row(c).transpose() - x).norm();
        return out;
    }
};

class GaussianNbModel : public BaseModel {
public:
    std::vector<int> classes;
    Matrix mean, var;   // per seen class x feature
    Vector log_prior;

    Vector class_scores(const Vector& x) const override {
        Vector out = Vector::Constant(kNumClasses, kNoScore);
        for (size_t c = 0; c < classes.size(); ++c) {
            double lp = log_prior(c);
            for (int j = 0; j < x.size(); ++j) {
                double v = var(c, j);
                lp += -0.5 * std::log(2.0 * M_PI * v) - (x(j) - mean(c, j)) * (x(j) - mean(c, j)) / (2.0 * v);
            }
            out(classes[c]) = lp;
        }
        return out;
    }
};

class LogisticModel : public BaseModel {
public:
    std::vector<int> classes;
    Matrix w;  // seen classes x features
    Vector b;

    Vector class_scores(const Vector& x) const override {
        Vector z = w * x + b;
        Vector p = (z.array() - z.maxCoeff()).exp();
        p /= p.sum();
        Vector out = Vector::Constant(kNumClasses, kNoScore);
        for (size_t c = 0; c < classes.size(); ++c) out(classes[c]) = p(c);
        return out;
    }
};

// ---- Trainers ------------------------------------------------------------

inline std::unique_ptr<BaseModel> train_trees(const Matrix& x, const std::vector<int>& y,
                                              int n_trees, int feature_subsample,
                                              std::uint64_t seed) {
    auto m = std::make_unique<VoteForestModel>();
    m->trees.resize(n_trees);
    for (int t = 0; t < n_trees; ++t) {
        auto rng = make_rng(seed, t);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(x.rows()) - 1);
        Matrix bx(x.rows(), x.cols());
        std::vector<int> by(x.rows());
        for (int i = 0; i < x.rows(); ++i) {
            int s = pick(rng);
            bx.row(i) = x.row(s);
            by[i] = y[s];
        }
        m->trees[t].fit(bx, by, {.n_classes = kNumClasses, .feature_subsample = feature_subsample},
                        &rng);
    }
    return m;
}

inline std::unique_ptr<BaseModel> train_gb(const Matrix& x, const std::vector<int>& y) {
    auto m = std::make_unique<GradientBoostModel>();
    m->classes = seen_classes(y);
    int kc = static_cast<int>(m->classes.size());
    int n = static_cast<int>(x.rows());
    std::vector<int> yk(n);  // compact class index
    for (int i = 0; i < n; ++i)
        yk[i] = static_cast<int>(std::find(m->classes.begin(), m->classes.end(), y[i]) -
                                 m->classes.begin());
    Matrix f = Matrix::Zero(n, kc);
    for (int it = 0; it < 100; ++it) {
        m->trees.emplace_back(kc);
        Matrix p = f;
        for (int i = 0; i < n; ++i) {
            Vector row = f.row(i).transpose();
            Vector e = (row.array() - row.maxCoeff()).exp();
            p.row(i) = (e / e.sum()).transpose();
        }
        for (int k = 0; k < kc; ++k) {
            Vector resid(n), denom(n);
            for (int i = 0; i < n; ++i) {
                double r = (yk[i] == k ? 1.0 : 0.0) - p(i, k);
                resid(i) = r;
                denom(i) = std::max(1e-12, p(i, k) * (1.0 - p(i, k)));
            }
            // Friedman's multiclass leaf scaling folded into the denominator.
            denom *= static_cast<double>(kc) / std::max(1, kc - 1);
            m->trees.back()[k].fit(x, resid, denom, 3);
            for (int i = 0; i < n; ++i)
                f(i, k) += m->learning_rate * m->trees.back()[k].value(x.row(i).transpose());
        }
    }
    return m;
}

inline std::unique_ptr<BaseModel> train_adaboost(const Matrix& x, const std::vector<int>& y) {
    auto m = std::make_unique<AdaBoostModel>();
    m->seen = seen_classes(y);
    int n = static_cast<int>(x.rows());
    int kc = static_cast<int>(m->seen.size());
    std::vector<double> w(n, 1.0 / n);
    for (int it = 0; it < 50; ++it) {
        DecisionTree stump;
        stump.fit_weighted(x, y, w, {.max_depth = 1, .n_classes = kNumClasses});
        double err = 0;
        std::vector<bool> wrong(n);
        for (int i = 0; i < n; ++i) {
            wrong[i] = stump.predict(x.row(i).transpose()) != y[i];
            if (wrong[i]) err += w[i];
        }
        if (err <= 0) {  // perfect stump dominates; SAMME weight capped
            m->stumps.push_back(std::move(stump));
            m->weights.push_back(20.0 + std::log(std::max(1.0, kc - 1.0)));
            break;
        }
        if (kc > 1 && err >= 1.0 - 1.0 / kc) break;  // no better than chance
        double alpha = std::log((1.0 - err) / err) + std::log(std::max(1.0, kc - 1.0));
        m->stumps.push_back(std::move(stump));
        m->weights.push_back(alpha);
        double z = 0;
        for (int i = 0; i < n; ++i) {
            w[i] *= std::exp(alpha * (wrong[i] ? 1.0 : 0.0));
            z += w[i];
        }
        for (auto& v : w) v /= z;
    }
    if (m->stumps.empty()) {  // degenerate: fall back to a single stump
        DecisionTree stump;
        stump.fit_weighted(x, y, w, {.max_depth = 1, .n_classes = kNumClasses});
        m->stumps.push_back(std::move(stump));
        m->weights.push_back(1.0);
    }
    return m;
}

inline std::unique_ptr<BaseModel> train_svm(const Matrix& x, const std::vector<int>& y,
                                            SvmKernel kernel) {
    auto m = std::make_unique<SvmOvrModel>();
    m->kernel = kernel;
    m->support_x = x;
    m->classes = seen_classes(y);
    int n = static_cast<int>(x.rows());
    // sklearn's gamma='scale'
    double var = (x.array() - x.mean()).square().mean();
    m->gamma = var > 0 ? 1.0 / (x.cols() * var) : 1.0;

    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = m->k_eval(x.row(i).transpose(), x.row(j).transpose());
            k(i, j) = v;
            k(j, i) = v;
        }
    for (int cls : m->classes) {
        Vector yb(n);
        for (int i = 0; i < n; ++i) yb(i) = y[i] == cls ? 1.0 : -1.0;
        auto r = smo_solve(k, yb, 1.0, 1e-6, 100000);
        m->coef.push_back(r.alpha.cwiseProduct(yb));
        m->bias.push_back(r.bias);
    }
    return m;
}

inline std::unique_ptr<BaseModel> train_mlp(const Matrix& x, const std::vector<int>& y,
                                            const std::vector<int>& hidden, std::uint64_t seed) {
    auto m = std::make_unique<MlpModel>();
    m->classes = seen_classes(y);
    int kc = static_cast<int>(m->classes.size());
    int n = static_cast<int>(x.rows());
    std::vector<int> sizes;
    sizes.push_back(static_cast<int>(x.cols()));
    for (int h : hidden) sizes.push_back(h);
    sizes.push_back(kc);

    auto rng = make_rng(seed, 0x91f);
    for (size_t l = 0; l + 1 < sizes.size(); ++l) {
        double bound = std::sqrt(6.0 / sizes[l]);
        std::uniform_real_distribution<double> u(-bound, bound);
        Matrix wl(sizes[l + 1], sizes[l]);
        for (int i = 0; i < wl.rows(); ++i)
            for (int j = 0; j < wl.cols(); ++j) wl(i, j) = u(rng);
        m->w.push_back(wl);
        m->b.push_back(Vector::Zero(sizes[l + 1]));
    }

    Matrix targets = Matrix::Zero(n, kc);
    for (int i = 0; i < n; ++i)
        targets(i, static_cast<int>(std::find(m->classes.begin(), m->classes.end(), y[i]) -
                                    m->classes.begin())) = 1.0;

    int n_layers = static_cast<int>(m->w.size());
    std::vector<Matrix> mw(n_layers), vw(n_layers);
    std::vector<Vector> mb(n_layers), vb(n_layers);
    for (int l = 0; l < n_layers; ++l) {
        mw[l] = Matrix::Zero(m->w[l].rows(), m->w[l].cols());
        vw[l] = mw[l];
        mb[l] = Vector::Zero(m->b[l].size());
        vb[l] = mb[l];
    }
    const double lr = 1e-2, b1 = 0.9, b2 = 0.999, eps = 1e-8;
    const int epochs = 200;
    for (int ep = 1; ep <= epochs; ++ep) {
        // forward (batch)
        std::vector<Matrix> act;  // activations per layer, rows = samples
        act.push_back(x);
        for (int l = 0; l < n_layers; ++l) {
            Matrix z = act.back() * m->w[l].transpose();
            z.rowwise() += m->b[l].transpose();
            if (l + 1 < n_layers) z = z.cwiseMax(0.0);
            act.push_back(z);
        }
        Matrix p = act.back();
        for (int i = 0; i < n; ++i) {
            Vector row = p.row(i).transpose();
            Vector e = (row.array() - row.maxCoeff()).exp();
            p.row(i) = (e / e.sum()).transpose();
        }
        Matrix delta = (p - targets) / n;  // dL/dz at output, mean CE
        for (int l = n_layers - 1; l >= 0; --l) {
            Matrix gw = delta.transpose() * act[l];
            Vector gb = delta.colwise().sum().transpose();
            if (l > 0) {
                delta = delta * m->w[l];
                delta = delta.cwiseProduct((act[l].array() > 0).cast<double>().matrix());
            }
            double corr1 = 1.0 - std::pow(b1, ep), corr2 = 1.0 - std::pow(b2, ep);
            mw[l] = b1 * mw[l] + (1 - b1) * gw;
            vw[l] = b2 * vw[l].array().matrix() + (1 - b2) * gw.cwiseProduct(gw);
            m->w[l] -= (lr * (mw[l] / corr1).array() / ((vw[l] / corr2).array().sqrt() + eps)).matrix();
            mb[l] = b1 * mb[l] + (1 - b1) * gb;
            vb[l] = b2 * vb[l] + (1 - b2) * gb.cwiseProduct(gb);
            m->b[l] -= (lr * (mb[l] / corr1).array() / ((vb[l] / corr2).array().sqrt() + eps)).matrix();
        }
    }
    return m;
}

inline std::unique_ptr<BaseModel> train_logistic(const Matrix& x, const std::vector<int>& y) {
    auto m = std::make_unique<LogisticModel>();
    m->classes = seen_classes(y);
    int kc = static_cast<int>(m->classes.size());
    int n = static_cast<int>(x.rows());
    int d = static_cast<int>(x.cols());
    m->w = Matrix::Zero(kc, d);
    m->b = Vector::Zero(kc);
    Matrix targets = Matrix::Zero(n, kc);
    for (int i = 0; i < n; ++i)
        targets(i, static_cast<int>(std::find(m->classes.begin(), m->classes.end(), y[i]) -
                                    m->classes.begin())) = 1.0;
    // Full-batch Adam on the softmax cross-entropy, small L2, iteration cap 1000.
    const double lr = 0.1, b1 = 0.9, b2 = 0.999, eps = 1e-8, l2 = 1e-4;
    Matrix mw = Matrix::Zero(kc, d), vw = mw;
    Vector mb = Vector::Zero(kc), vb = mb;
    for (int it = 1; it <= 1000; ++it) {
        Matrix z = x * m->w.transpose();
        z.rowwise() += m->b.transpose();
        Matrix p = z;
        for (int i = 0; i < n; ++i) {
            Vector row = z.row(i).transpose();
            Vector e = (row.array() - row.maxCoeff()).exp();
            p.row(i) = (e / e.sum()).transpose();
        }
        Matrix delta = (p - targets) / n;
        Matrix gw = delta.transpose() * x + l2 * m->w;
        Vector gb = delta.colwise().sum().transpose();
        if (gw.norm() + gb.norm() < 1e-6) break;
        double corr1 = 1.0 - std::pow(b1, it), corr2 = 1.0 - std::pow(b2, it);
        mw = b1 * mw + (1 - b1) * gw;
        vw = b2 * vw + (1 - b2) * gw.cwiseProduct(gw);
        m->w -= (lr * (mw / corr1).array() / ((vw / corr2).array().sqrt() + eps)).matrix();
        mb = b1 * mb + (1 - b1) * gb;
        vb = b2 * vb + (1 - b2) * gb.cwiseProduct(gb);
        m->b -= (lr * (mb / corr1).array() / ((vb / corr2).array().sqrt() + eps)).matrix();
    }
    return m;
}

} // namespace meta_detail

/// Train one of the 14 base classifiers. Deterministic under (inputs, seed);
/// increments the base-training cost counter exactly once.
inline std::unique_ptr<BaseModel> train_base(ClassifierId id, const Matrix& x,
                                             const std::vector<int>& y, std::uint64_t seed) {
    using namespace meta_detail;
    if (x.rows() != static_cast<long>(y.size()) || x.rows() == 0)
        throw InputError("train_base: shape mismatch or empty input");
    cost_counters().base_trainings += 1;

    switch (id) {
        case ClassifierId::DT: {
            auto m = std::make_unique<DtModel>();
            m->tree.fit(x, y, {.n_classes = kNumClasses});
            return m;
        }
        case ClassifierId::RF: {
            int sub = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(x.cols()))));
            return train_trees(x, y, 10, sub, seed);
        }
        case ClassifierId::EGB: return train_gb(x, y);
        case ClassifierId::AB: return train_adaboost(x, y);
        case ClassifierId::Bg: return train_trees(x, y, 10, 0, mix_seed(seed, 0xba66));
        case ClassifierId::SVM_L: return train_svm(x, y, SvmKernel::Linear);
        case ClassifierId::SVM_R: return train_svm(x, y, SvmKernel::Rbf);
        case ClassifierId::SVM_S: return train_svm(x, y, SvmKernel::Sigmoid);
        case ClassifierId::MLP1: return train_mlp(x, y, {500}, seed);
        case ClassifierId::MLP3: return train_mlp(x, y, {100, 100, 100}, mix_seed(seed, 3));
        case ClassifierId::KNN: {
            auto m = std::make_unique<KnnModel>();
            m->x = x;
            m->y = y;
            return m;
        }
        case ClassifierId::NC: {
            auto m = std::make_unique<CentroidModel>();
            m->classes = seen_classes(y);
            m->centroids = Matrix::Zero(m->classes.size(), x.cols());
            for (size_t c = 0; c < m->classes.size(); ++c) {
                int cnt = 0;
                for (int i = 0; i < x.rows(); ++i)
                    if (y[i] == m->classes[c]) { m->centroids.row(c) += x.row(i); ++cnt; }
                m->centroids.row(c) /= cnt;
            }
            return m;
        }
        case ClassifierId::NB: {
            auto m = std::make_unique<GaussianNbModel>();
            m->classes = seen_classes(y);
            int kc = static_cast<int>(m->classes.size());
            m->mean = Matrix::Zero(kc, x.cols());
            m->var = Matrix::Zero(kc, x.cols());
            m->log_prior.resize(kc);
            double max_var = (x.array() - x.mean()).square().mean();
            for (int c = 0; c < kc; ++c) {
                std::vector<int> idx;
                for (int i = 0; i < x.rows(); ++i)
                    if (y[i] == m->classes[c]) idx.push_back(i);
                for (int i : idx) m->mean.row(c) += x.row(i);
                m->mean.row(c) /= idx.size();
                for (int i : idx)
                    m->var.row(c) += (x.row(i) - m->mean.row(c)).cwiseProduct(x.row(i) - m->mean.row(c));
                m->var.row(c) /= idx.size();
                m->var.row(c).array() += 1e-9 * std::max(1e-12, max_var);
                m->log_prior(c) = std::log(static_cast<double>(idx.size()) / x.rows());
            }
            return m;
        }
        case ClassifierId::LR: return train_logistic(x, y);
    }
    throw InputError("train_base: unknown classifier");
}

} // namespace qcrec
