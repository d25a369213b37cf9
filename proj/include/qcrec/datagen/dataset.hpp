#pragma once

#include "qcrec/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcrec {

/// A real-valued feature matrix with class labels plus the provenance needed
/// to regenerate it. Labels are {0,1} everywhere past binarization; generators
/// with more than two centers carry the raw multi-class ids until binarized.
struct LabeledDataset {
    Matrix features;            // rows = samples
    std::vector<int> labels;
    std::string name;
    std::map<std::string, double> generator_config;
    std::uint64_t seed = 0;

    int n() const { return static_cast<int>(features.rows()); }
    int dim() const { return static_cast<int>(features.cols()); }

    std::vector<int> class_ids() const {
        std::vector<int> ids;
        for (int y : labels)
            if (std::find(ids.begin(), ids.end(), y) == ids.end()) ids.push_back(y);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    int class_count(int cls) const {
        int c = 0;
        for (int y : labels) c += (y == cls);
        return c;
    }

    void validate() const {
        if (features.rows() != static_cast<long>(labels.size()))
            throw InputError(name + ": feature rows != label count");
        if (!features.allFinite())
            throw InputError(name + ": non-finite feature value");
        for (int cls : class_ids())
            if (class_count(cls) < 2)
                throw InputError(name + ": class " + std::to_string(cls) + " has fewer than 2 samples");
    }
};

struct ScalerParams {
    Vector min;
    Vector max;
};

struct PcaParams {
    Vector mean;     // of the scaled data the basis was fit on
    Matrix basis;    // columns = principal directions, orthonormal
};

/// Output of the standard pipeline: 4 columns in [0, pi], stratified 8/2 split.
struct PreprocessedDataset {
    Matrix train_features;
    Matrix test_features;
    std::vector<int> train_labels;
    std::vector<int> test_labels;
    ScalerParams scaler_params;
    bool has_pca = false;
    PcaParams pca_params;
    std::string name;
};

} // namespace qcrec
