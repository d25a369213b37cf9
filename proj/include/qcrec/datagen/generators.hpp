#pragma once

#include "qcrec/datagen/dataset.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qcrec {

enum class SyntheticFamily { Blobs, Circles, Moons, ConcentricRings, Xor, Spiral, Checkerboard };

inline const char* family_name(SyntheticFamily f) {
    switch (f) {
        case SyntheticFamily::Blobs: return "Blobs";
        case SyntheticFamily::Circles: return "Circles";
        case SyntheticFamily::Moons: return "Moons";
        case SyntheticFamily::ConcentricRings: return "ConcentricRings";
        case SyntheticFamily::Xor: return "XOR";
        case SyntheticFamily::Spiral: return "Spiral";
        case SyntheticFamily::Checkerboard: return "Checkerboard";
    }
    throw InputError("unknown family");
}

inline SyntheticFamily family_from_name(const std::string& s) {
    for (auto f : {SyntheticFamily::Blobs, SyntheticFamily::Circles, SyntheticFamily::Moons,
                   SyntheticFamily::ConcentricRings, SyntheticFamily::Xor, SyntheticFamily::Spiral,
                   SyntheticFamily::Checkerboard})
        if (s == family_name(f)) return f;
    throw InputError("unknown synthetic family: " + s);
}

using GeneratorConfig = std::map<std::string, double>;

namespace detail {

inline double cfg_get(const GeneratorConfig& c, const std::string& key, double fallback) {
    auto it = c.find(key);
    return it == c.end() ? fallback : it->second;
}

inline void cfg_check_keys(const GeneratorConfig& c, std::initializer_list<const char*> allowed,
                           const char* family) {
    for (const auto& [k, v] : c) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || (k == a);
        if (!ok) throw InputError(std::string(family) + ": invalid config key '" + k + "'");
    }
}

// Split n into k nearly equal parts, remainder to the lowest indices.
inline std::vector<int> balanced_counts(int n, int k) {
    std::vector<int> out(k, n / k);
    for (int i = 0; i < n % k; ++i) out[i] += 1;
    return out;
}

inline std::string config_tag(const GeneratorConfig& c) {
    std::ostringstream os;
    for (const auto& [k, v] : c) os << "_" << k << v;
    return os.str();
}

} // namespace detail

/// Deterministic synthetic dataset generator for the seven supported families.
/// Samples are laid out class-by-class so balanced families stay balanced
/// (class counts differ by at most 1).
inline LabeledDataset binarize_parity(LabeledDataset d);

inline LabeledDataset generate_synthetic(SyntheticFamily family, const GeneratorConfig& config,
                                         int n_samples, std::uint64_t seed) {
    using std::numbers::pi;
    if (n_samples < 4) throw InputError("generate_synthetic: n_samples < 4");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    LabeledDataset d;
    d.seed = seed;
    d.generator_config = config;

    switch (family) {
        case SyntheticFamily::Blobs: {
            detail::cfg_check_keys(config, {"centers", "std", "features", "spread"}, "Blobs");
            int centers = static_cast<int>(detail::cfg_get(config, "centers", 2));
            int dim = static_cast<int>(detail::cfg_get(config, "features", 2));
            double std_dev = detail::cfg_get(config, "std", 1.0);
            double spread = detail::cfg_get(config, "spread", 10.0);
            if (centers < 2 || centers > 4) throw InputError("Blobs: centers must be 2..4");
            if (dim < 2 || dim > 4) throw InputError("Blobs: features must be 2..4");
            Matrix mu(centers, dim);
            for (int c = 0; c < centers; ++c)
                for (int j = 0; j < dim; ++j) mu(c, j) = spread * (2.0 * unit(rng) - 1.0);
            auto counts = detail::balanced_counts(n_samples, centers);
            d.features.resize(n_samples, dim);
            d.labels.resize(n_samples);
            int row = 0;
            for (int c = 0; c < centers; ++c)
                for (int i = 0; i < counts[c]; ++i, ++row) {
                    for (int j = 0; j < dim; ++j) d.features(row, j) = mu(c, j) + std_dev * gauss(rng);
                    d.labels[row] = c;
                }
            if (centers > 2) d = binarize_parity(std::move(d));
            break;
        }
        case SyntheticFamily::Circles: {
            detail::cfg_check_keys(config, {"noise", "factor"}, "Circles");
            double noise = detail::cfg_get(config, "noise", 0.0);
            double factor = detail::cfg_get(config, "factor", 0.5);
            auto counts = detail::balanced_counts(n_samples, 2);
            d.features.resize(n_samples, 2);
            d.labels.resize(n_samples);
            int row = 0;
            for (int cls = 0; cls < 2; ++cls) {
                double r = cls == 0 ? 1.0 : factor;
                for (int i = 0; i < counts[cls]; ++i, ++row) {
                    double t = 2.0 * pi * i / counts[cls];
                    d.features(row, 0) = r * std::cos(t) + noise * gauss(rng);
                    d.features(row, 1) = r * std::sin(t) + noise * gauss(rng);
                    d.labels[row] = cls;
                }
            }
            break;
        }
        case SyntheticFamily::Moons: {
            detail::cfg_check_keys(config, {"noise"}, "Moons");
            double noise = detail::cfg_get(config, "noise", 0.0);
            auto counts = detail::balanced_counts(n_samples, 2);
            d.features.resize(n_samples, 2);
            d.labels.resize(n_samples);
            int row = 0;
            for (int i = 0; i < counts[0]; ++i, ++row) {  // upper moon
                double t = counts[0] == 1 ? 0.0 : pi * i / (counts[0] - 1);
                d.features(row, 0) = std::cos(t) + noise * gauss(rng);
                d.features(row, 1) = std::sin(t) + noise * gauss(rng);
                d.labels[row] = 0;
            }
            for (int i = 0; i < counts[1]; ++i, ++row) {  // lower moon, shifted
                double t = counts[1] == 1 ? 0.0 : pi * i / (counts[1] - 1);
                d.features(row, 0) = 1.0 - std::cos(t) + noise * gauss(rng);
                d.features(row, 1) = 0.5 - std::sin(t) + noise * gauss(rng);
                d.labels[row] = 1;
            }
            break;
        }
        case SyntheticFamily::ConcentricRings: {
            detail::cfg_check_keys(config, {"rings", "width", "noise"}, "ConcentricRings");
            int rings = static_cast<int>(detail::cfg_get(config, "rings", 4));
            double width = detail::cfg_get(config, "width", 0.5);
            double noise = detail::cfg_get(config, "noise", 0.0);
            if (rings < 2) throw InputError("ConcentricRings: rings must be >= 2");
            auto ring_counts = detail::balanced_counts(n_samples, rings);
            d.features.resize(n_samples, 2);
            d.labels.resize(n_samples);
            int row = 0;
            for (int r = 0; r < rings; ++r) {
                double r_lo = 0.5 + r * width;
                for (int i = 0; i < ring_counts[r]; ++i, ++row) {
                    double theta = 2.0 * pi * unit(rng);
                    double radius = r_lo + width * unit(rng) + noise * gauss(rng);
                    d.features(row, 0) = radius * std::cos(theta);
                    d.features(row, 1) = radius * std::sin(theta);
                    d.labels[row] = r % 2;   // alternating annuli
                }
            }
            break;
        }
        case SyntheticFamily::Xor: {
            detail::cfg_check_keys(config, {"noise"}, "XOR");
            double noise = detail::cfg_get(config, "noise", 0.0);
            auto counts = detail::balanced_counts(n_samples, 2);
            d.features.resize(n_samples, 2);
            d.labels.resize(n_samples);
            // Quadrant-parity labels on the square [-1,1]^2; per-class quadrant
            // assignment keeps the classes balanced before jitter.
            int row = 0;
            for (int cls = 0; cls < 2; ++cls)
                for (int i = 0; i < counts[cls]; ++i, ++row) {
                    double x = unit(rng), y = unit(rng);           // one quadrant
                    int qx = i % 2;                                // alternate quadrants within class
                    int qy = (cls == 0) ? qx : 1 - qx;             // parity fixes the class
                    d.features(row, 0) = (qx ? x : -x) + noise * gauss(rng);
                    d.features(row, 1) = (qy ? y : -y) + noise * gauss(rng);
                    d.labels[row] = cls;
                }
            break;
        }
        case SyntheticFamily::Spiral: {
            detail::cfg_check_keys(config, {"noise", "turns"}, "Spiral");
            double noise = detail::cfg_get(config, "noise", 0.0);
            double turns = detail::cfg_get(config, "turns", 2.0);
            auto counts = detail::balanced_counts(n_samples, 2);
            d.features.resize(n_samples, 2);
            d.labels.resize(n_samples);
            int row = 0;
            for (int arm = 0; arm < 2; ++arm)
                for (int i = 0; i < counts[arm]; ++i, ++row) {
                    double t = 0.25 + (turns * pi - 0.25) * i / std::max(1, counts[arm] - 1);
                    double theta = t + arm * pi + noise * gauss(rng);
                    d.features(row, 0) = t * std::cos(theta);
                    d.features(row, 1) = t * std::sin(theta);
                    d.labels[row] = arm;
                }
            break;
        }
        case SyntheticFamily::Checkerboard: {
            detail::cfg_check_keys(config, {"k", "noise"}, "Checkerboard");
            int k = static_cast<int>(detail::cfg_get(config, "k", 3));
            double noise = detail::cfg_get(config, "noise", 0.0);
            if (k < 2) throw InputError("Checkerboard: k must be >= 2");
            auto counts = detail::balanced_counts(n_samples, 2);
            d.features.resize(n_samples, 2);
            d.labels.resize(n_samples);
            // Cells of each parity, cycled within class for balance.
            std::vector<std::pair<int, int>> even_cells, odd_cells;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    ((i + j) % 2 == 0 ? even_cells : odd_cells).push_back({i, j});
            int row = 0;
            for (int cls = 0; cls < 2; ++cls) {
                const auto& cells = cls == 0 ? even_cells : odd_cells;
                for (int i = 0; i < counts[cls]; ++i, ++row) {
                    auto [ci, cj] = cells[i % cells.size()];
                    d.features(row, 0) = (ci + unit(rng)) / k + noise * gauss(rng);
                    d.features(row, 1) = (cj + unit(rng)) / k + noise * gauss(rng);
                    d.labels[row] = cls;
                }
            }
            break;
        }
    }
    d.name = std::string(family_name(family)) + detail::config_tag(config) + "_n" +
             std::to_string(n_samples) + "_s" + std::to_string(seed);
    d.validate();
    return d;
}

/// Collapse a multi-class dataset to {0,1} by label parity (used for Blobs
/// grids with 3 or 4 centers).
inline LabeledDataset binarize_parity(LabeledDataset d) {
    for (auto& y : d.labels) y = y % 2;
    d.validate();
    return d;
}

} // namespace qcrec
