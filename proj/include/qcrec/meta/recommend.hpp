#pragma once

#include "qcrec/complexity/metrics.hpp"
#include "qcrec/evaluator/scoring.hpp"
#include "qcrec/meta/classifiers.hpp"
#include "qcrec/qsim/circuits.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qcrec {

/// One row of the meta-dataset: a dataset reduced to its complexity profile
/// plus the measured quantum-kernel outcomes.
struct MetaRecord {
    std::string name;
    Vector features;                 // 24 metrics, canonical order
    std::set<CircuitId> single_set;  // SINGLE-BEST-OUT label (1 circuit)
    std::set<CircuitId> tied_set;    // TIED-BEST-OUT label (>= 1 circuit)
    Vector best_acc;                 // best evaluator accuracy per circuit, canonical order

    /// Deterministic training class under a label mode. SINGLE uses its own
    /// (seeded) label; TIED trains on the accuracy argmax with canonical
    /// tie-break so the target is reproducible even when the set is wide.
    int target(LabelMode mode) const {
        if (mode == LabelMode::SingleBestOut) return circuit_index(*single_set.begin());
        int best = 0;
        for (int k = 1; k < static_cast<int>(kNumCircuits); ++k)
            if (best_acc(k) > best_acc(best)) best = k;
        return best;
    }

    const std::set<CircuitId>& truth(LabelMode mode) const {
        return mode == LabelMode::SingleBestOut ? single_set : tied_set;
    }

    std::string signature(LabelMode mode) const {
        std::string s;
        for (auto id : truth(mode)) {
            if (!s.empty()) s += '+';
            s += circuit_name(id);
        }
        return s;
    }
};

inline Vector select_features(const Vector& all24, const FeatureMode& mode) {
    if (all24.size() != kNumMetrics) throw InputError("select_features: expected 24 metrics");
    if (mode.all_in) return all24;
    for (int i = 0; i < kNumMetrics; ++i)
        if (kMetricOrder[i] == mode.single_metric) return Vector::Constant(1, all24(i));
    throw InputError("select_features: unknown metric");
}

/// ALL-IN followed by the 24 SINGLE-IN modes, canonical metric order.
inline std::vector<FeatureMode> all_feature_modes() {
    std::vector<FeatureMode> out{FeatureMode::all()};
    for (auto m : kMetricOrder) out.push_back(FeatureMode::single(m));
    return out;
}

enum class Strategy { MajorityVote, Loocv };

inline const char* strategy_name(Strategy s) {
    return s == Strategy::MajorityVote ? "MV" : "LOOCV";
}

inline Strategy strategy_from_name(const std::string& s) {
    if (s == "MV") return Strategy::MajorityVote;
    if (s == "LOOCV") return Strategy::Loocv;
    throw InputError("unknown strategy: " + s);
}

namespace meta_detail {

inline Matrix feature_matrix(const std::vector<MetaRecord>& recs, const FeatureMode& mode) {
    Vector probe = select_features(recs.at(0).features, mode);
    Matrix x(recs.size(), probe.size());
    for (size_t i = 0; i < recs.size(); ++i)
        x.row(i) = select_features(recs[i].features, mode).transpose();
    return x;
}

inline std::vector<int> targets_of(const std::vector<MetaRecord>& recs, LabelMode mode) {
    std::vector<int> y(recs.size());
    for (size_t i = 0; i < recs.size(); ++i) y[i] = recs[i].target(mode);
    return y;
}

/// 80/20 split of record indices, stratified by label-set signature.
/// Largest-remainder quotas keep |test| = round(0.2 n) exactly.
inline void split_indices(const std::vector<MetaRecord>& recs, LabelMode mode, std::uint64_t seed,
                          std::vector<int>& train, std::vector<int>& test) {
    std::map<std::string, std::vector<int>> groups;
    for (size_t i = 0; i < recs.size(); ++i)
        groups[recs[i].signature(mode)].push_back(static_cast<int>(i));

    int n = static_cast<int>(recs.size());
    int want_test = static_cast<int>(std::lround(0.2 * n));
    auto rng = make_rng(seed, 0x51);

    std::vector<std::pair<double, std::string>> rema;
    std::map<std::string, int> quota;
    int assigned = 0;
    for (auto& [sig, idx] : groups) {
        double exact = 0.2 * idx.size();
        quota[sig] = static_cast<int>(exact);
        assigned += quota[sig];
        rema.push_back({exact - quota[sig], sig});
    }
    std::sort(rema.begin(), rema.end(),
              [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (int i = 0; assigned < want_test && i < static_cast<int>(rema.size()); ++i) {
        if (quota[rema[i].second] < static_cast<int>(groups[rema[i].second].size())) {
            quota[rema[i].second] += 1;
            assigned += 1;
        }
    }

    train.clear();
    test.clear();
    for (auto& [sig, idx] : groups) {
        std::vector<int> shuffled = idx;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (size_t i = 0; i < shuffled.size(); ++i)
            (static_cast<int>(i) < quota[sig] ? test : train).push_back(shuffled[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
}

} // namespace meta_detail

/// Turn per-class scores from one or more models into a ranked circuit list.
/// Models vote with their argmax; vote count descending, canonical order
/// breaks ties; zero-vote circuits are excluded, so the list can be short.
inline std::vector<CircuitId> rank_by_votes(const std::vector<std::unique_ptr<BaseModel>>& models,
                                            const Vector& x, std::vector<std::string>* tie_log = nullptr,
                                            const std::string& context = "") {
    Vector votes = Vector::Zero(kNumCircuits);
    for (const auto& m : models) votes(m->predict(x)) += 1;
    std::vector<int> order(kNumCircuits);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return votes(a) > votes(b); });
    if (tie_log && kNumCircuits > 1 && votes(order[0]) == votes(order[1]) && votes(order[0]) > 0) {
        std::ostringstream os;
        os << "vote tie at rank 1 (" << votes(order[0]) << " votes: "
           << circuit_name(kCircuitOrder[order[0]]) << " vs "
           << circuit_name(kCircuitOrder[order[1]]) << ")";
        if (!context.empty()) os << " [" << context << "]";
        tie_log->push_back(os.str());
    }
    std::vector<CircuitId> out;
    for (int k : order)
        if (votes(k) > 0) out.push_back(kCircuitOrder[k]);
    return out;
}

/// Ranked circuits from a single model's class scores (kNoScore excluded).
inline std::vector<CircuitId> rank_by_scores(const BaseModel& model, const Vector& x) {
    Vector s = model.class_scores(x);
    std::vector<int> order(kNumCircuits);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s(a) > s(b); });
    std::vector<CircuitId> out;
    for (int k : order)
        if (s(k) != kNoScore) out.push_back(kCircuitOrder[k]);
    return out;
}

/// Top-k hit: at least one of the first k ranked circuits is in the truth set.
inline bool hit(const std::vector<CircuitId>& ranked, int top_k, const std::set<CircuitId>& truth) {
    if (top_k < 1) throw InputError("hit: top_k must be >= 1");
    for (int i = 0; i < top_k && i < static_cast<int>(ranked.size()); ++i)
        if (truth.count(ranked[i])) return true;
    return false;
}

struct MvRunResult {
    std::uint64_t split_seed;
    int n_test = 0;
    double hit_rate = 0;
};

struct MvEvaluation {
    std::vector<MvRunResult> runs;
    double mean_hit_rate = 0;
    std::vector<std::string> tie_log;
    int trainings = 0;  // classifier fits consumed (14 per usable run)
};

/// Repeated-holdout evaluation of the majority-vote recommender: R runs of an
/// 80/20 stratified split, all 14 classifiers retrained per run, each test
/// record scored by top-k hit. Splits whose training side collapses to one
/// class are discarded and redrawn from the next seed.
inline MvEvaluation mv_evaluate(const std::vector<MetaRecord>& recs, LabelMode mode,
                                const FeatureMode& fmode, int top_k, int runs,
                                std::uint64_t seed) {
    if (recs.size() < 5) throw InputError("mv_evaluate: need at least 5 records");
    if (runs < 1) throw InputError("mv_evaluate: runs must be >= 1");
    using namespace meta_detail;
    Matrix x_all = feature_matrix(recs, fmode);
    std::vector<int> y_all = targets_of(recs, mode);

    MvEvaluation ev;
    std::uint64_t draw = 0;
    for (int r = 0; r < runs; ++r) {
        std::vector<int> tr, te;
        bool usable = false;
        std::uint64_t run_seed = 0;
        for (int attempt = 0; attempt < 64 && !usable; ++attempt) {
            run_seed = mix_seed(seed, draw++);
            split_indices(recs, mode, run_seed, tr, te);
            std::set<int> cls(y_all.begin(), y_all.end());
            std::set<int> tr_cls;
            for (int i : tr) tr_cls.insert(y_all[i]);
            usable = tr_cls.size() >= 2 || cls.size() < 2;
        }
        if (!usable) throw NumericalError("mv_evaluate: could not draw a usable split");

        Matrix xt(tr.size(), x_all.cols());
        std::vector<int> yt(tr.size());
        for (size_t i = 0; i < tr.size(); ++i) {
            xt.row(i) = x_all.row(tr[i]);
            yt[i] = y_all[tr[i]];
        }
        std::vector<std::unique_ptr<BaseModel>> models;
        for (size_t c = 0; c < kClassifierOrder.size(); ++c)
            models.push_back(train_base(kClassifierOrder[c], xt, yt, mix_seed(run_seed, c)));
        ev.trainings += static_cast<int>(models.size());

        int hits = 0;
        for (int i : te) {
            auto ranked = rank_by_votes(models, x_all.row(i).transpose(), &ev.tie_log,
                                        "run " + std::to_string(r) + " " + recs[i].name);
            hits += hit(ranked, top_k, recs[i].truth(mode));
        }
        ev.runs.push_back({run_seed, static_cast<int>(te.size()),
                           te.empty() ? 0.0 : static_cast<double>(hits) / te.size()});
    }
    for (const auto& r : ev.runs) ev.mean_hit_rate += r.hit_rate;
    ev.mean_hit_rate /= ev.runs.size();
    return ev;
}

struct LoocvCell {
    ClassifierId classifier;
    FeatureMode fmode;
    double hit_rate = 0;
};

struct LoocvEvaluation {
    std::vector<LoocvCell> grid;          // classifier-major, mode order within
    ClassifierId winner = ClassifierId::DT;
    FeatureMode winner_mode = FeatureMode::all();
    double winner_hit_rate = 0;
    int trainings = 0;
};

/// Leave-one-out evaluation over a (classifier x feature-mode) grid. Every
/// fold retrains each combination on the other N-1 records and scores the
/// held-out record by top-k hit. The winner is the highest hit rate; ties go
/// to the earlier classifier, then the earlier feature mode (ALL-IN first).
inline LoocvEvaluation loocv_evaluate(const std::vector<MetaRecord>& recs, LabelMode mode,
                                      const std::vector<FeatureMode>& fmodes, int top_k,
                                      std::uint64_t seed) {
    if (recs.size() < 3) throw InputError("loocv_evaluate: need at least 3 records");
    if (fmodes.empty()) throw InputError("loocv_evaluate: need at least one feature mode");
    using namespace meta_detail;
    int n = static_cast<int>(recs.size());
    std::vector<int> y_all = targets_of(recs, mode);

    LoocvEvaluation ev;
    for (size_t c = 0; c < kClassifierOrder.size(); ++c)
        for (const auto& fm : fmodes) ev.grid.push_back({kClassifierOrder[c], fm, 0.0});

    for (const auto& fm : fmodes) {
        Matrix x_all = feature_matrix(recs, fm);
        for (int held = 0; held < n; ++held) {
            Matrix xt(n - 1, x_all.cols());
            std::vector<int> yt(n - 1);
            for (int i = 0, j = 0; i < n; ++i) {
                if (i == held) continue;
                xt.row(j) = x_all.row(i);
                yt[j] = y_all[i];
                ++j;
            }
            for (size_t c = 0; c < kClassifierOrder.size(); ++c) {
                auto model = train_base(kClassifierOrder[c], xt, yt,
                                        mix_seed(seed, c * 1000003 + held));
                ev.trainings += 1;
                auto ranked = rank_by_scores(*model, x_all.row(held).transpose());
                if (hit(ranked, top_k, recs[held].truth(mode))) {
                    for (auto& cell : ev.grid)
                        if (cell.classifier == kClassifierOrder[c] && cell.fmode == fm)
                            cell.hit_rate += 1.0;  // count hits, normalize below
                }
            }
        }
    }
    for (auto& cell : ev.grid) cell.hit_rate /= n;
    for (const auto& cell : ev.grid) {
        if (cell.hit_rate > ev.winner_hit_rate + 1e-15) {
            ev.winner = cell.classifier;
            ev.winner_mode = cell.fmode;
            ev.winner_hit_rate = cell.hit_rate;
        }
    }
    // grid order already encodes the tie-break (classifier order, then mode
    // order), so scanning once with strict improvement is enough — but the
    // first cell must still be able to win with rate 0.
    if (ev.winner_hit_rate == 0 && !ev.grid.empty()) {
        ev.winner = ev.grid.front().classifier;
        ev.winner_mode = ev.grid.front().fmode;
    }
    return ev;
}

/// A trained recommender. MV keeps all 14 classifiers and ranks by vote;
/// LOOCV keeps the winning classifier and ranks by its class scores.
struct Recommender {
    Strategy strategy = Strategy::MajorityVote;
    LabelMode label_mode = LabelMode::TiedBestOut;
    FeatureMode feature_mode = FeatureMode::all();
    ClassifierId winner = ClassifierId::DT;  // LOOCV only
    std::uint64_t seed = 0;
    std::vector<std::unique_ptr<BaseModel>> models;
    mutable std::vector<std::string> tie_log;

    /// Full ranking for a 24-metric complexity vector. Top-k lists are
    /// prefixes of this, so k1 <= k2 implies the k1 list is a prefix of k2's.
    std::vector<CircuitId> rank(const Vector& features24) const {
        Vector x = select_features(features24, feature_mode);
        if (strategy == Strategy::MajorityVote)
            return rank_by_votes(models, x, &tie_log, "recommend");
        return rank_by_scores(*models.front(), x);
    }

    std::vector<CircuitId> recommend_topk(const Vector& features24, int top_k) const {
        if (top_k < 1) throw InputError("recommend_topk: top_k must be >= 1");
        auto ranked = rank(features24);
        if (static_cast<int>(ranked.size()) > top_k) ranked.resize(top_k);
        return ranked;
    }
};

/// Fit the final recommender on the full meta-dataset.
inline Recommender train_final(const std::vector<MetaRecord>& recs, Strategy strategy,
                               LabelMode mode, const FeatureMode& fmode, ClassifierId winner,
                               std::uint64_t seed) {
    using namespace meta_detail;
    Recommender rec;
    rec.strategy = strategy;
    rec.label_mode = mode;
    rec.feature_mode = fmode;
    rec.winner = winner;
    rec.seed = seed;
    Matrix x = feature_matrix(recs, fmode);
    std::vector<int> y = targets_of(recs, mode);
    if (strategy == Strategy::MajorityVote) {
        for (size_t c = 0; c < kClassifierOrder.size(); ++c)
            rec.models.push_back(train_base(kClassifierOrder[c], x, y, mix_seed(seed, c)));
    } else {
        rec.models.push_back(train_base(winner, x, y, mix_seed(seed, 0x100 + static_cast<int>(winner))));
    }
    return rec;
}

} // namespace qcrec
