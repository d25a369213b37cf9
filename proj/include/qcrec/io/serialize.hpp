#pragma once

#include "qcrec/meta/recommend.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace qcrec {

namespace io_detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    // max_digits10: doubles survive the text round-trip bit-exactly, so a
    // reloaded model refits to the identical classifier state.
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string join_set(const std::set<CircuitId>& s) {
    std::string out;
    for (auto id : kCircuitOrder) {
        if (!s.count(id)) continue;
        if (!out.empty()) out += '|';
        out += circuit_name(id);
    }
    return out;
}

inline std::set<CircuitId> parse_set(const std::string& s) {
    std::set<CircuitId> out;
    for (const auto& tok : split(s, '|'))
        if (!tok.empty()) out.insert(circuit_from_name(tok));
    return out;
}

} // namespace io_detail

/// Meta-dataset CSV: one row per dataset with the 24 metrics, both label
/// sets (pipe-separated circuit names) and the 9 best accuracies.
inline std::string meta_records_to_csv(const std::vector<MetaRecord>& recs) {
    std::ostringstream os;
    os << "dataset";
    for (auto m : kMetricOrder) os << ',' << metric_name(m);
    os << ",single_best,tied_best";
    for (auto c : kCircuitOrder) os << ",acc_" << circuit_name(c);
    os << '\n';
    for (const auto& r : recs) {
        os << r.name;
        for (int j = 0; j < r.features.size(); ++j) os << ',' << io_detail::fmt(r.features(j));
        os << ',' << io_detail::join_set(r.single_set) << ',' << io_detail::join_set(r.tied_set);
        for (int j = 0; j < r.best_acc.size(); ++j) os << ',' << io_detail::fmt(r.best_acc(j));
        os << '\n';
    }
    return os.str();
}

inline std::vector<MetaRecord> meta_records_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("meta csv: empty input");
    const int want = 1 + kNumMetrics + 2 + static_cast<int>(kNumCircuits);
    if (static_cast<int>(io_detail::split(line, ',').size()) != want)
        throw InputError("meta csv: unexpected header width");
    std::vector<MetaRecord> recs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = io_detail::split(line, ',');
        if (static_cast<int>(f.size()) != want)
            throw InputError("meta csv: bad row width for " + (f.empty() ? line : f[0]));
        MetaRecord r;
        r.name = f[0];
        r.features.resize(kNumMetrics);
        for (int j = 0; j < kNumMetrics; ++j) r.features(j) = std::stod(f[1 + j]);
        r.single_set = io_detail::parse_set(f[1 + kNumMetrics]);
        r.tied_set = io_detail::parse_set(f[2 + kNumMetrics]);
        if (r.single_set.size() != 1) throw InputError("meta csv: single label must have 1 circuit");
        if (r.tied_set.empty()) throw InputError("meta csv: tied label must be non-empty");
        r.best_acc.resize(kNumCircuits);
        for (int j = 0; j < static_cast<int>(kNumCircuits); ++j)
            r.best_acc(j) = std::stod(f[3 + kNumMetrics + j]);
        recs.push_back(std::move(r));
    }
    return recs;
}

inline std::vector<MetaRecord> meta_records_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return meta_records_from_csv(in);
}

/// Per-dataset score table: all three evaluator accuracies for each circuit.
inline std::string scores_to_csv(const std::string& dataset,
                                 const std::vector<CircuitScore>& scores) {
    std::ostringstream os;
    os << "dataset,circuit,acc_svc,acc_gpc,acc_krc,best,failure\n";
    for (const auto& s : scores) {
        os << dataset << ',' << circuit_name(s.circuit_id) << ',' << io_detail::fmt(s.acc_svc)
           << ',' << io_detail::fmt(s.acc_gpc) << ',' << io_detail::fmt(s.acc_krc) << ','
           << io_detail::fmt(s.best_accuracy) << ',' << s.failure << '\n';
    }
    return os.str();
}

inline constexpr int kModelFormatVersion = 1;

/// Serialize a trained recommender. The JSON stores the configuration, the
/// seed and the full training meta-dataset; loading refits the classifiers
/// deterministically, so the file stays small and version-stable.
inline nlohmann::json recommender_to_json(const Recommender& rec,
                                          const std::vector<MetaRecord>& training) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["strategy"] = strategy_name(rec.strategy);
    j["label_mode"] = label_mode_name(rec.label_mode);
    j["feature_mode"] = rec.feature_mode.all_in
                            ? std::string("ALL-IN")
                            : std::string(metric_name(rec.feature_mode.single_metric));
    j["winner"] = classifier_name(rec.winner);
    j["seed"] = rec.seed;
    j["training_csv"] = meta_records_to_csv(training);
    return j;
}

struct LoadedRecommender {
    Recommender rec;
    std::vector<MetaRecord> training;
};

inline LoadedRecommender recommender_from_json(const nlohmann::json& j) {
    if (!j.contains("format_version") || j.at("format_version").get<int>() != kModelFormatVersion)
        throw InputError("model file: unsupported format version");
    LoadedRecommender out;
    Strategy strategy = strategy_from_name(j.at("strategy").get<std::string>());
    std::string lm = j.at("label_mode").get<std::string>();
    LabelMode mode;
    if (lm == label_mode_name(LabelMode::SingleBestOut)) mode = LabelMode::SingleBestOut;
    else if (lm == label_mode_name(LabelMode::TiedBestOut)) mode = LabelMode::TiedBestOut;
    else throw InputError("model file: unknown label mode " + lm);
    std::string fm = j.at("feature_mode").get<std::string>();
    FeatureMode fmode = fm == "ALL-IN" ? FeatureMode::all() : FeatureMode::single(metric_from_name(fm));
    ClassifierId winner = classifier_from_name(j.at("winner").get<std::string>());
    std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    std::istringstream csv(j.at("training_csv").get<std::string>());
    out.training = meta_records_from_csv(csv);
    out.rec = train_final(out.training, strategy, mode, fmode, winner, seed);
    return out;
}

inline void save_recommender(const std::string& path, const Recommender& rec,
                             const std::vector<MetaRecord>& training) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << recommender_to_json(rec, training).dump(2) << '\n';
}

inline LoadedRecommender load_recommender(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("model file: invalid json: ") + e.what());
    }
    return recommender_from_json(j);
}

} // namespace qcrec
