#pragma once

#include "qcrec/datagen/csv.hpp"
#include "qcrec/datagen/generators.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace qcrec {

/// One dataset to materialize: either a synthetic generator config at a
/// specific size, or a binarized slice of a real CSV.
struct DatasetSpec {
    bool synthetic = true;
    // synthetic
    SyntheticFamily family = SyntheticFamily::Blobs;
    GeneratorConfig config;
    // real
    std::string name;   // real datasets only; synthetic ones name themselves
    std::string file;   // relative to the manifest
    Binarization binarization;

    int n_samples = 0;
    std::uint64_t seed = 0;
};

struct Manifest {
    std::vector<DatasetSpec> specs;
    std::string base_dir;  // directory of the manifest file
};

inline Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open manifest " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("manifest: invalid json: ") + e.what());
    }
    if (!j.contains("version") || j.at("version").get<int>() != 1)
        throw InputError("manifest: unsupported version");

    Manifest m;
    auto slash = path.find_last_of('/');
    m.base_dir = slash == std::string::npos ? "." : path.substr(0, slash);

    std::vector<int> sizes = j.at("sizes").get<std::vector<int>>();
    if (sizes.empty()) throw InputError("manifest: sizes must be non-empty");

    for (const auto& fam : j.at("synthetic")) {
        SyntheticFamily family = family_from_name(fam.at("family").get<std::string>());
        for (const auto& cfg : fam.at("configs")) {
            GeneratorConfig gc;
            std::uint64_t seed = 0;
            for (auto it = cfg.begin(); it != cfg.end(); ++it) {
                if (it.key() == "seed") seed = it.value().get<std::uint64_t>();
                else gc[it.key()] = it.value().get<double>();
            }
            for (size_t s = 0; s < sizes.size(); ++s) {
                DatasetSpec spec;
                spec.synthetic = true;
                spec.family = family;
                spec.config = gc;
                spec.n_samples = sizes[s];
                spec.seed = seed + s;
                m.specs.push_back(std::move(spec));
            }
        }
    }
    for (const auto& r : j.at("real")) {
        DatasetSpec spec;
        spec.synthetic = false;
        spec.name = r.at("name").get<std::string>();
        spec.file = r.at("file").get<std::string>();
        if (r.contains("class_pair"))
            spec.binarization.class_pair = r.at("class_pair").get<std::vector<std::string>>();
        if (r.contains("threshold")) spec.binarization.threshold = r.at("threshold").get<double>();
        if (!spec.binarization.is_pair() && !spec.binarization.threshold)
            throw InputError("manifest: real entry '" + spec.name + "' needs class_pair or threshold");
        spec.n_samples = r.at("n_samples").get<int>();
        spec.seed = r.at("seed").get<std::uint64_t>();
        m.specs.push_back(std::move(spec));
    }
    return m;
}

inline LabeledDataset materialize(const DatasetSpec& spec, const std::string& base_dir) {
    if (spec.synthetic)
        return generate_synthetic(spec.family, spec.config, spec.n_samples, spec.seed);
    LabeledDataset d = load_real(base_dir + "/" + spec.file, CsvSchema{}, spec.binarization,
                                 spec.n_samples, spec.seed);
    d.name = spec.name;
    return d;
}

inline std::string spec_family_name(const DatasetSpec& spec) {
    return spec.synthetic ? family_name(spec.family) : "Real";
}

} // namespace qcrec
