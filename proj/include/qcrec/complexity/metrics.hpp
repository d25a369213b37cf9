#pragma once

#include "qcrec/datagen/dataset.hpp"
#include "qcrec/datagen/preprocess.hpp"
#include "qcrec/svm/smo.hpp"

#include <zlib.h>

#include <array>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace qcrec {

// Canonical metric order; ALL-IN concatenation uses exactly this order.
enum class MetricId {
    F1, F1v, F2, F3, F4,
    L1, L2, L3,
    N1, N2, N3, N4, T1, LSC,
    Density, ClsCoef, Hubs,
    T2, T3, T4,
    C1, C2,
    IntDim, Kolmogorov
};

inline constexpr int kNumMetrics = 24;

inline constexpr std::array<MetricId, kNumMetrics> kMetricOrder = {
    MetricId::F1, MetricId::F1v, MetricId::F2, MetricId::F3, MetricId::F4,
    MetricId::L1, MetricId::L2, MetricId::L3,
    MetricId::N1, MetricId::N2, MetricId::N3, MetricId::N4, MetricId::T1, MetricId::LSC,
    MetricId::Density, MetricId::ClsCoef, MetricId::Hubs,
    MetricId::T2, MetricId::T3, MetricId::T4,
    MetricId::C1, MetricId::C2,
    MetricId::IntDim, MetricId::Kolmogorov};

inline const char* metric_name(MetricId m) {
    switch (m) {
        case MetricId::F1: return "F1";
        case MetricId::F1v: return "F1v";
        case MetricId::F2: return "F2";
        case MetricId::F3: return "F3";
        case MetricId::F4: return "F4";
        case MetricId::L1: return "L1";
        case MetricId::L2: return "L2";
        case MetricId::L3: return "L3";
        case MetricId::N1: return "N1";
        case MetricId::N2: return "N2";
        case MetricId::N3: return "N3";
        case MetricId::N4: return "N4";
        case MetricId::T1: return "T1";
        case MetricId::LSC: return "LSC";
        case MetricId::Density: return "Density";
        case MetricId::ClsCoef: return "ClsCoef";
        case MetricId::Hubs: return "Hubs";
        case MetricId::T2: return "T2";
        case MetricId::T3: return "T3";
        case MetricId::T4: return "T4";
        case MetricId::C1: return "C1";
        case MetricId::C2: return "C2";
        case MetricId::IntDim: return "IntDim";
        case MetricId::Kolmogorov: return "Kolmogorov";
    }
    return "?";
}

inline MetricId metric_from_name(const std::string& s) {
    for (auto m : kMetricOrder)
        if (s == metric_name(m)) return m;
    throw InputError("unknown metric id: " + s);
}

struct ComplexityVector {
    std::vector<MetricId> ids;
    Vector values;
    std::string dataset_name;
};

namespace cxd {  // complexity internals

// All metrics except the dimensionality/compression family work on min-max
// scaled features; hand each helper the scaled matrix.
struct Prepared {
    Matrix x;                  // scaled to [0,1] per column
    Matrix x_raw;
    std::vector<int> y;        // {0,1}
    int n;
    int d;
    std::array<std::vector<int>, 2> cls_idx;
    Matrix dist;               // pairwise Euclidean on scaled features

    explicit Prepared(const LabeledDataset& ds) {
        ds.validate();
        x_raw = ds.features;
        x = minmax_scale(ds.features);
        y = ds.labels;
        n = ds.n();
        d = ds.dim();
        for (int i = 0; i < n; ++i) {
            if (y[i] != 0 && y[i] != 1) throw InputError("complexity: labels must be binary {0,1}");
            cls_idx[y[i]].push_back(i);
        }
        if (cls_idx[0].empty() || cls_idx[1].empty())
            throw InputError("complexity: single-class input");
        dist.resize(n, n);
        for (int i = 0; i < n; ++i) {
            dist(i, i) = 0;
            for (int j = i + 1; j < n; ++j) {
                double dd = (x.row(i) - x.row(j)).norm();
                dist(i, j) = dd;
                dist(j, i) = dd;
            }
        }
    }

    // Nearest neighbor of i excluding i, ties broken by lowest index.
    int nn_of(int i) const {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (dist(i, j) < bd) { bd = dist(i, j); best = j; }
        }
        return best;
    }

    // Nearest enemy distance (to the closest opposite-class point).
    double enemy_dist(int i) const {
        double bd = std::numeric_limits<double>::infinity();
        for (int j : cls_idx[1 - y[i]]) bd = std::min(bd, dist(i, j));
        return bd;
    }
};

// ---- Feature-based -------------------------------------------------------

inline double f1(const Prepared& p) {
    double max_rf = 0;
    for (int j = 0; j < p.d; ++j) {
        double mu = p.x.col(j).mean();
        double num = 0, den = 0;
        for (int c = 0; c < 2; ++c) {
            double mc = 0;
            for (int i : p.cls_idx[c]) mc += p.x(i, j);
            mc /= p.cls_idx[c].size();
            num += p.cls_idx[c].size() * (mc - mu) * (mc - mu);
            for (int i : p.cls_idx[c]) den += (p.x(i, j) - mc) * (p.x(i, j) - mc);
        }
        double rf = den > 0 ? num / den : (num > 0 ? 1e12 : 0.0);
        max_rf = std::max(max_rf, rf);
    }
    return 1.0 / (1.0 + max_rf);
}

inline double f1v(const Prepared& p) {
    Vector mu0 = Vector::Zero(p.d), mu1 = Vector::Zero(p.d);
    for (int i : p.cls_idx[0]) mu0 += p.x.row(i).transpose();
    for (int i : p.cls_idx[1]) mu1 += p.x.row(i).transpose();
    mu0 /= p.cls_idx[0].size();
    mu1 /= p.cls_idx[1].size();
    Matrix w = Matrix::Zero(p.d, p.d);
    double p0 = static_cast<double>(p.cls_idx[0].size()) / p.n;
    double p1 = 1.0 - p0;
    Matrix s0 = Matrix::Zero(p.d, p.d), s1 = Matrix::Zero(p.d, p.d);
    for (int i : p.cls_idx[0]) {
        Vector v = p.x.row(i).transpose() - mu0;
        s0 += v * v.transpose();
    }
    for (int i : p.cls_idx[1]) {
        Vector v = p.x.row(i).transpose() - mu1;
        s1 += v * v.transpose();
    }
    w = p0 * s0 / p.cls_idx[0].size() + p1 * s1 / p.cls_idx[1].size();
    Matrix b = (mu0 - mu1) * (mu0 - mu1).transpose();
    // Fisher direction via pseudo-inverse of the within-class scatter.
    Vector dvec = w.completeOrthogonalDecomposition().pseudoInverse() * (mu0 - mu1);
    double num = dvec.dot(b * dvec);
    double den = dvec.dot(w * dvec);
    double df = den > 0 ? num / den : (num > 0 ? 1e12 : 0.0);
    return 1.0 / (1.0 + df);
}

struct OverlapBounds {
    double lo, hi;  // overlap interval per feature (hi < lo means disjoint)
};

inline OverlapBounds overlap_region(const Prepared& p, int j) {
    double min0 = 1e300, max0 = -1e300, min1 = 1e300, max1 = -1e300;
    for (int i : p.cls_idx[0]) { min0 = std::min(min0, p.x(i, j)); max0 = std::max(max0, p.x(i, j)); }
    for (int i : p.cls_idx[1]) { min1 = std::min(min1, p.x(i, j)); max1 = std::max(max1, p.x(i, j)); }
    return {std::max(min0, min1), std::min(max0, max1)};
}

inline double f2(const Prepared& p) {
    double vol = 1.0;
    for (int j = 0; j < p.d; ++j) {
        auto ob = overlap_region(p, j);
        double lo = p.x.col(j).minCoeff(), hi = p.x.col(j).maxCoeff();
        double range = hi - lo;
        double over = std::max(0.0, ob.hi - ob.lo);
        vol *= range > 0 ? over / range : 0.0;
    }
    return vol;
}

inline int count_in_overlap(const Prepared& p, int j) {
    auto ob = overlap_region(p, j);
    int c = 0;
    for (int i = 0; i < p.n; ++i)
        if (p.x(i, j) >= ob.lo && p.x(i, j) <= ob.hi) ++c;
    return c;
}

inline double f3(const Prepared& p) {
    int best = p.n;
    for (int j = 0; j < p.d; ++j) best = std::min(best, count_in_overlap(p, j));
    return static_cast<double>(best) / p.n;
}

inline double f4(const Prepared& p) {
    // Collective feature efficiency: repeatedly remove points separable by the
    // currently most discriminative feature.
    std::vector<int> active(p.n);
    std::iota(active.begin(), active.end(), 0);
    std::vector<bool> used(p.d, false);
    for (int round = 0; round < p.d && !active.empty(); ++round) {
        int best_j = -1;
        std::vector<int> best_remaining;
        for (int j = 0; j < p.d; ++j) {
            if (used[j]) continue;
            // Overlap interval computed on the active subset.
            double min0 = 1e300, max0 = -1e300, min1 = 1e300, max1 = -1e300;
            for (int i : active) {
                if (p.y[i] == 0) { min0 = std::min(min0, p.x(i, j)); max0 = std::max(max0, p.x(i, j)); }
                else { min1 = std::min(min1, p.x(i, j)); max1 = std::max(max1, p.x(i, j)); }
            }
            double lo = std::max(min0, min1), hi = std::min(max0, max1);
            std::vector<int> remaining;
            for (int i : active)
                if (p.x(i, j) >= lo && p.x(i, j) <= hi) remaining.push_back(i);
            if (best_j < 0 || remaining.size() < best_remaining.size()) {
                best_j = j;
                best_remaining = std::move(remaining);
            }
        }
        if (best_j < 0 || best_remaining.size() == active.size()) break;  // no progress
        used[best_j] = true;
        active = std::move(best_remaining);
        bool has0 = false, has1 = false;
        for (int i : active) (p.y[i] == 0 ? has0 : has1) = true;
        if (!has0 || !has1) { active.clear(); break; }  // one class left: all separable
    }
    return static_cast<double>(active.size()) / p.n;
}

// ---- Linearity (shared linear SVM, C = 1) --------------------------------

struct LinearFit {
    SmoResult smo;
    Vector y_pm;     // +-1 labels
    Matrix k;        // linear Gram on scaled features
};

inline LinearFit fit_linear_svm(const Prepared& p) {
    LinearFit f;
    f.y_pm.resize(p.n);
    for (int i = 0; i < p.n; ++i) f.y_pm(i) = p.y[i] == 1 ? 1.0 : -1.0;
    f.k = p.x * p.x.transpose();
    f.smo = smo_solve(f.k, f.y_pm, 1.0, 1e-6);
    return f;
}

inline double l1(const Prepared& p, const LinearFit& f) {
    // Normalized sum of margin violations: sum of hinge losses over n, then
    // squashed to [0,1).
    Vector dec = smo_decision(f.smo, f.k, f.y_pm);
    double sum = 0;
    for (int i = 0; i < p.n; ++i) sum += std::max(0.0, 1.0 - f.y_pm(i) * dec(i));
    double avg = sum / p.n;
    return avg / (1.0 + avg);
}

inline double l2(const Prepared& p, const LinearFit& f) {
    Vector dec = smo_decision(f.smo, f.k, f.y_pm);
    int err = 0;
    for (int i = 0; i < p.n; ++i) err += (dec(i) >= 0 ? 1.0 : -1.0) != f.y_pm(i);
    return static_cast<double>(err) / p.n;
}

// Interpolated same-class points: one per training point, uniform convex
// combination of two random same-class points.
inline Matrix interpolated_points(const Prepared& p, std::uint64_t seed, std::vector<int>& labels) {
    auto rng = make_rng(seed, 0x17e4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix pts(p.n, p.d);
    labels.resize(p.n);
    for (int i = 0; i < p.n; ++i) {
        int cls = p.y[i];
        const auto& idx = p.cls_idx[cls];
        std::uniform_int_distribution<int> pick(0, static_cast<int>(idx.size()) - 1);
        int a = idx[pick(rng)], b = idx[pick(rng)];
        double t = u(rng);
        pts.row(i) = t * p.x.row(a) + (1.0 - t) * p.x.row(b);
        labels[i] = cls;
    }
    return pts;
}

inline double l3(const Prepared& p, const LinearFit& f, std::uint64_t seed) {
    std::vector<int> labels;
    Matrix pts = interpolated_points(p, seed, labels);
    Matrix k_cross = pts * p.x.transpose();
    Vector dec = smo_decision(f.smo, k_cross, f.y_pm);
    int err = 0;
    for (int i = 0; i < p.n; ++i) {
        double yp = labels[i] == 1 ? 1.0 : -1.0;
        err += (dec(i) >= 0 ? 1.0 : -1.0) != yp;
    }
    return static_cast<double>(err) / p.n;
}

// ---- Neighborhood --------------------------------------------------------

inline double n1(const Prepared& p) {
    // Prim's MST on the distance matrix; fraction of edges joining classes.
    std::vector<bool> in_tree(p.n, false);
    std::vector<double> best(p.n, std::numeric_limits<double>::infinity());
    std::vector<int> from(p.n, -1);
    in_tree[0] = true;
    for (int j = 1; j < p.n; ++j) { best[j] = p.dist(0, j); from[j] = 0; }
    int cross = 0;
    for (int e = 0; e < p.n - 1; ++e) {
        int next = -1;
        for (int j = 0; j < p.n; ++j)
            if (!in_tree[j] && (next < 0 || best[j] < best[next])) next = j;
        in_tree[next] = true;
        if (p.y[next] != p.y[from[next]]) ++cross;
        for (int j = 0; j < p.n; ++j)
            if (!in_tree[j] && p.dist(next, j) < best[j]) { best[j] = p.dist(next, j); from[j] = next; }
    }
    return static_cast<double>(cross) / (p.n - 1);
}

inline double n2(const Prepared& p) {
    double intra = 0, inter = 0;
    for (int i = 0; i < p.n; ++i) {
        double din = std::numeric_limits<double>::infinity();
        for (int j : p.cls_idx[p.y[i]])
            if (j != i) din = std::min(din, p.dist(i, j));
        intra += din;
        inter += p.enemy_dist(i);
    }
    if (inter <= 0) return 1.0;
    double r = intra / inter;
    return r / (1.0 + r);
}

inline double n3(const Prepared& p) {
    int err = 0;
    for (int i = 0; i < p.n; ++i) err += p.y[p.nn_of(i)] != p.y[i];
    return static_cast<double>(err) / p.n;
}

inline double n4(const Prepared& p, std::uint64_t seed) {
    std::vector<int> labels;
    Matrix pts = interpolated_points(p, seed ^ 0x44, labels);
    int err = 0;
    for (int i = 0; i < p.n; ++i) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int j = 0; j < p.n; ++j) {
            double dd = (pts.row(i) - p.x.row(j)).norm();
            if (dd < bd) { bd = dd; best = j; }
        }
        err += p.y[best] != labels[i];
    }
    return static_cast<double>(err) / p.n;
}

inline double t1(const Prepared& p) {
    // Maximal same-class hyperspheres: radius = nearest enemy distance;
    // spheres fully contained in another are absorbed.
    std::vector<double> radius(p.n);
    for (int i = 0; i < p.n; ++i) radius[i] = p.enemy_dist(i);
    std::vector<bool> kept(p.n, true);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            if (i == j || !kept[i] || !kept[j] || p.y[i] != p.y[j]) continue;
            if (p.dist(i, j) + radius[i] <= radius[j]) { kept[i] = false; break; }
        }
    int count = 0;
    for (bool k : kept) count += k;
    return static_cast<double>(count) / p.n;
}

inline double lsc(const Prepared& p) {
    // Local set of i: same-class points closer to i than its nearest enemy.
    double total = 0;
    for (int i = 0; i < p.n; ++i) {
        double ed = p.enemy_dist(i);
        for (int j : p.cls_idx[p.y[i]])
            if (j != i && p.dist(i, j) < ed) total += 1;
    }
    return 1.0 - total / (static_cast<double>(p.n) * p.n);
}

// ---- Network (eps-NN graph, cross-class edges pruned) --------------------

struct Graph {
    std::vector<std::vector<int>> adj;
    int n_edges = 0;
};

inline Graph build_graph(const Prepared& p, double eps = 0.15) {
    Graph g;
    g.adj.resize(p.n);
    double dmax = p.dist.maxCoeff();
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j) {
            double nd = dmax > 0 ? p.dist(i, j) / dmax : 0.0;
            if (nd < eps && p.y[i] == p.y[j]) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
                ++g.n_edges;
            }
        }
    return g;
}

inline double density(const Prepared& p, const Graph& g) {
    double possible = static_cast<double>(p.n) * (p.n - 1) / 2.0;
    return 1.0 - g.n_edges / possible;
}

inline double cls_coef(const Prepared& p, const Graph& g) {
    double sum = 0;
    for (int i = 0; i < p.n; ++i) {
        int k = static_cast<int>(g.adj[i].size());
        if (k < 2) continue;
        int links = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                int u = g.adj[i][a], v = g.adj[i][b];
                for (int w : g.adj[u]) if (w == v) { ++links; break; }
            }
        sum += 2.0 * links / (static_cast<double>(k) * (k - 1));
    }
    return 1.0 - sum / p.n;
}

inline double hubs(const Prepared& p, const Graph& g) {
    // Power-iteration hub score on the pruned adjacency, normalized to [0,1].
    Vector h = Vector::Ones(p.n);
    for (int it = 0; it < 100; ++it) {
        Vector nh = Vector::Zero(p.n);
        for (int i = 0; i < p.n; ++i)
            for (int j : g.adj[i]) nh(i) += h(j);
        double norm = nh.norm();
        if (norm <= 0) { h = Vector::Zero(p.n); break; }
        nh /= norm;
        if ((nh - h).norm() < 1e-12) { h = nh; break; }
        h = nh;
    }
    double hmax = h.maxCoeff();
    if (hmax > 0) h /= hmax;
    return 1.0 - h.mean();
}

// ---- Dimensionality ------------------------------------------------------

inline Vector cov_eigenvalues(const Matrix& x) {
    Matrix centered = x.rowwise() - x.colwise().mean();
    Matrix cov = centered.transpose() * centered / std::max<double>(1.0, x.rows() - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
    return es.eigenvalues().cwiseMax(0.0);
}

inline int pca_dims_for_variance(const Vector& eig, double frac = 0.95) {
    double total = eig.sum();
    if (total <= 0) return 0;
    // Eigenvalues ascend; accumulate from the largest.
    double acc = 0;
    int k = 0;
    for (int i = static_cast<int>(eig.size()) - 1; i >= 0; --i) {
        acc += eig(i);
        ++k;
        if (acc / total >= frac) break;
    }
    return k;
}

inline double intrinsic_dimension(const Matrix& x) {
    Vector eig = cov_eigenvalues(x);
    double s1 = eig.sum(), s2 = eig.squaredNorm();
    if (s2 <= 0) return 1.0;
    return s1 * s1 / s2;
}

// ---- Class balance -------------------------------------------------------

inline double c1(const Prepared& p) {
    double p0 = static_cast<double>(p.cls_idx[0].size()) / p.n;
    double p1 = 1.0 - p0;
    auto plogp = [](double q) { return q > 0 ? q * std::log(q) : 0.0; };
    double h = -(plogp(p0) + plogp(p1));
    return 1.0 - h / std::log(2.0);
}

inline double c2(const Prepared& p) {
    double n0 = static_cast<double>(p.cls_idx[0].size());
    double n1c = static_cast<double>(p.cls_idx[1].size());
    double ir = 0.5 * (n0 / n1c + n1c / n0);
    return 1.0 - 1.0 / ir;
}

// ---- Kolmogorov (compression ratio) --------------------------------------

inline constexpr int kDeflateLevel = 6;

inline std::string canonical_text(const LabeledDataset& d) {
    std::string out;
    char buf[64];
    // Labels remapped by first occurrence so 0<->1 swaps leave the text
    // byte-identical.
    std::map<int, int> remap;
    for (int i = 0; i < d.n(); ++i) {
        for (int j = 0; j < d.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.6f", d.features(i, j));
            out += buf;
            out += ',';
        }
        auto [it, inserted] = remap.insert({d.labels[i], static_cast<int>(remap.size())});
        std::snprintf(buf, sizeof(buf), "%d", it->second);
        out += buf;
        out += '\n';
    }
    return out;
}

inline double compression_ratio(const std::string& text) {
    uLongf bound = compressBound(static_cast<uLong>(text.size()));
    std::vector<Bytef> out(bound);
    uLongf out_len = bound;
    int rc = compress2(out.data(), &out_len, reinterpret_cast<const Bytef*>(text.data()),
                       static_cast<uLong>(text.size()), kDeflateLevel);
    if (rc != Z_OK) throw NumericalError("zlib compress2 failed");
    return static_cast<double>(out_len) / text.size();
}

} // namespace cxd

/// Reorder samples lexicographically by feature vector (label as tie-break),
/// so every downstream metric is invariant under input permutation.
inline LabeledDataset canonical_sort(const LabeledDataset& d) {
    std::vector<int> order(d.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        for (int j = 0; j < d.dim(); ++j) {
            if (d.features(a, j) < d.features(b, j)) return true;
            if (d.features(a, j) > d.features(b, j)) return false;
        }
        return d.labels[a] < d.labels[b];
    });
    LabeledDataset out = d;
    for (int i = 0; i < d.n(); ++i) {
        out.features.row(i) = d.features.row(order[i]);
        out.labels[i] = d.labels[order[i]];
    }
    return out;
}

/// Compute every metric on the full (scaled, pre-split) dataset. The seed
/// drives only the interpolation draws of L3/N4; it is fixed per dataset.
inline Vector compute_all_metrics(const LabeledDataset& d_in, std::uint64_t seed = 0) {
    LabeledDataset d = canonical_sort(d_in);
    cxd::Prepared p(d);
    auto lin = cxd::fit_linear_svm(p);
    auto graph = cxd::build_graph(p);
    Vector eig_raw = cxd::cov_eigenvalues(p.x_raw);
    int d_pca = cxd::pca_dims_for_variance(eig_raw);

    Vector v(kNumMetrics);
    v(0) = cxd::f1(p);
    v(1) = cxd::f1v(p);
    v(2) = cxd::f2(p);
    v(3) = cxd::f3(p);
    v(4) = cxd::f4(p);
    v(5) = cxd::l1(p, lin);
    v(6) = cxd::l2(p, lin);
    v(7) = cxd::l3(p, lin, seed);
    v(8) = cxd::n1(p);
    v(9) = cxd::n2(p);
    v(10) = cxd::n3(p);
    v(11) = cxd::n4(p, seed);
    v(12) = cxd::t1(p);
    v(13) = cxd::lsc(p);
    v(14) = cxd::density(p, graph);
    v(15) = cxd::cls_coef(p, graph);
    v(16) = cxd::hubs(p, graph);
    v(17) = static_cast<double>(p.d) / p.n;                     // T2
    v(18) = static_cast<double>(d_pca) / p.n;                   // T3
    v(19) = static_cast<double>(d_pca) / p.d;                   // T4
    v(20) = cxd::c1(p);
    v(21) = cxd::c2(p);
    v(22) = cxd::intrinsic_dimension(p.x_raw);
    v(23) = cxd::compression_ratio(cxd::canonical_text(d));
    return v;
}

struct FeatureMode {
    bool all_in = true;
    MetricId single_metric = MetricId::F1;   // used when !all_in

    std::string to_string() const {
        return all_in ? "ALL-IN" : std::string("SINGLE-IN(") + metric_name(single_metric) + ")";
    }
    static FeatureMode all() { return {true, MetricId::F1}; }
    static FeatureMode single(MetricId m) { return {false, m}; }
    bool operator==(const FeatureMode&) const = default;
};

/// SINGLE-IN / ALL-IN extraction.
inline ComplexityVector extract(const LabeledDataset& d, const FeatureMode& mode,
                                std::uint64_t seed = 0) {
    Vector all = compute_all_metrics(d, seed);
    ComplexityVector cv;
    cv.dataset_name = d.name;
    if (mode.all_in) {
        cv.ids.assign(kMetricOrder.begin(), kMetricOrder.end());
        cv.values = all;
    } else {
        int idx = -1;
        for (int i = 0; i < kNumMetrics; ++i)
            if (kMetricOrder[i] == mode.single_metric) idx = i;
        cv.ids = {mode.single_metric};
        cv.values = Vector::Constant(1, all(idx));
    }
    return cv;
}

} // namespace qcrec
