#pragma once

#include "qcrec/datagen/dataset.hpp"
#include "qcrec/evaluator/classifiers.hpp"
#include "qcrec/qsim/kernel.hpp"

#include <optional>
#include <set>

namespace qcrec {

struct CircuitScore {
    CircuitId circuit_id;
    double acc_svc = 0;
    double acc_gpc = 0;
    double acc_krc = 0;
    double best_accuracy = 0;      // max over the three
    double mean_accuracy = 0;      // diagnostic only
    std::string failure;           // non-empty if any classifier fell back
};

enum class LabelMode { SingleBestOut, TiedBestOut };

inline const char* label_mode_name(LabelMode m) {
    return m == LabelMode::SingleBestOut ? "SINGLE-BEST-OUT" : "TIED-BEST-OUT";
}

/// The ground-truth label set Y_i for one dataset.
struct LabelSet {
    std::set<CircuitId> circuits;
    LabelMode mode;
    double epsilon = 0.0;

    bool contains(CircuitId id) const { return circuits.count(id) > 0; }
};

/// Score all nine circuits on one preprocessed dataset: train-Gram on the
/// train split, cross-Gram (test x train), all three kernel classifiers,
/// best = max. Per-circuit classifier failures degrade to majority-class
/// accuracy instead of aborting the row.
inline std::vector<CircuitScore> score_circuits(const PreprocessedDataset& d,
                                                const std::vector<EncodingCircuit>& circuits) {
    std::vector<CircuitScore> scores;
    for (const auto& c : circuits) {
        CircuitScore s;
        s.circuit_id = c.id;
        Matrix k_train = gram(c, d.train_features, d.train_features).entries;
        Matrix k_test = gram(c, d.test_features, d.train_features).entries;
        auto guarded = [&](auto&& fn, const char* name) {
            try {
                return fn();
            } catch (const std::exception& e) {
                s.failure += std::string(name) + ": " + e.what() + "; ";
                int maj = detail::majority_class(d.train_labels);
                int ok = 0;
                for (int v : d.test_labels) ok += (v == maj);
                return static_cast<double>(ok) / d.test_labels.size();
            }
        };
        s.acc_svc = guarded([&] { return svc_train_predict(k_train, d.train_labels, k_test, d.test_labels); }, "svc");
        s.acc_gpc = guarded([&] { return gpc_train_predict(k_train, d.train_labels, k_test, d.test_labels); }, "gpc");
        s.acc_krc = guarded([&] { return krc_train_predict(k_train, d.train_labels, k_test, d.test_labels); }, "krc");
        s.best_accuracy = std::max({s.acc_svc, s.acc_gpc, s.acc_krc});
        s.mean_accuracy = (s.acc_svc + s.acc_gpc + s.acc_krc) / 3.0;
        scores.push_back(std::move(s));
    }
    return scores;
}

/// SINGLE-BEST-OUT: argmax of best_accuracy, exact ties broken by a seeded
/// uniform choice. TIED-BEST-OUT: every circuit within epsilon of the best.
inline LabelSet label(const std::vector<CircuitScore>& scores, LabelMode mode, double epsilon,
                      std::uint64_t seed) {
    if (scores.size() != kNumCircuits) throw InputError("label: expected 9 circuit scores");
    if (epsilon < 0) throw InputError("label: epsilon must be >= 0");
    double best = 0;
    for (const auto& s : scores) best = std::max(best, s.best_accuracy);

    LabelSet ls;
    ls.mode = mode;
    ls.epsilon = mode == LabelMode::TiedBestOut ? epsilon : 0.0;
    if (mode == LabelMode::TiedBestOut) {
        for (const auto& s : scores)
            if (s.best_accuracy >= best - epsilon) ls.circuits.insert(s.circuit_id);
    } else {
        std::vector<CircuitId> tied;
        for (auto id : kCircuitOrder)  // canonical order for determinism
            for (const auto& s : scores)
                if (s.circuit_id == id && s.best_accuracy == best) tied.push_back(id);
        if (tied.size() == 1) {
            ls.circuits.insert(tied[0]);
        } else {
            auto rng = make_rng(seed, 0x1abe1);
            std::uniform_int_distribution<size_t> pick(0, tied.size() - 1);
            ls.circuits.insert(tied[pick(rng)]);
        }
    }
    return ls;
}

/// The deterministic training target for a record: the highest-accuracy
/// circuit, canonical-order tie-break.
inline CircuitId best_circuit(const std::vector<CircuitScore>& scores) {
    double best = -1;
    CircuitId out = CircuitId::SRx;
    for (auto id : kCircuitOrder)
        for (const auto& s : scores)
            if (s.circuit_id == id && s.best_accuracy > best) {
                best = s.best_accuracy;
                out = id;
            }
    return out;
}

} // namespace qcrec
