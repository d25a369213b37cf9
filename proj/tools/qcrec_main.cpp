// Command-line pipeline driver: build the meta-dataset, train a recommender,
// recommend circuits for new datasets, and verify recommendations.

#include "qcrec/complexity/metrics.hpp"
#include "qcrec/cost.hpp"
#include "qcrec/datagen/preprocess.hpp"
#include "qcrec/evaluator/scoring.hpp"
#include "qcrec/io/manifest.hpp"
#include "qcrec/io/serialize.hpp"
#include "qcrec/meta/recommend.hpp"
#include "qcrec/qsim/kernel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qcrec;

namespace {

struct PipelineConfig {
    std::uint64_t seed = 7;
    std::string manifest = "data/manifest.json";
    double epsilon = 0.01;
    std::string label_mode = "TIED-BEST-OUT";
    std::string feature_mode = "ALL-IN";
    std::string strategy = "MV";
    int runs = 10;
    int top_k = 3;
    std::string out = "out";
    int jobs = 1;
    std::string loocv_modes = "all-in";  // "all-in" or "full"
};

LabelMode parse_label_mode(const std::string& s) {
    if (s == label_mode_name(LabelMode::SingleBestOut)) return LabelMode::SingleBestOut;
    if (s == label_mode_name(LabelMode::TiedBestOut)) return LabelMode::TiedBestOut;
    throw InputError("unknown label mode: " + s);
}

FeatureMode parse_feature_mode(const std::string& s) {
    return s == "ALL-IN" ? FeatureMode::all() : FeatureMode::single(metric_from_name(s));
}

/// Structured event log: one JSON object per line.
class EventLog {
public:
    explicit EventLog(const std::string& path) : out_(path) {}
    void emit(const std::string& kind, const json& detail) {
        std::lock_guard<std::mutex> lock(mu_);
        json j{{"event", kind}};
        j.update(detail);
        out_ << j.dump() << '\n';
        out_.flush();
    }

private:
    std::ofstream out_;
    std::mutex mu_;
};

void merge_config_file(PipelineConfig& cfg, const std::string& path, const CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("config file: invalid json: ") + e.what());
    }
    // A config file overrides built-in defaults; flags given on the command
    // line override the file.
    auto take = [&](const char* flag, const char* key, auto& slot) {
        if (j.contains(key) && app.count(flag) == 0)
            slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    take("--seed", "seed", cfg.seed);
    take("--manifest", "manifest", cfg.manifest);
    take("--epsilon", "epsilon", cfg.epsilon);
    take("--label-mode", "label_mode", cfg.label_mode);
    take("--feature-mode", "feature_mode", cfg.feature_mode);
    take("--strategy", "strategy", cfg.strategy);
    take("--runs", "runs", cfg.runs);
    take("--top-k", "top_k", cfg.top_k);
    take("--out", "out", cfg.out);
    take("--jobs", "jobs", cfg.jobs);
    take("--loocv-modes", "loocv_modes", cfg.loocv_modes);
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.epsilon < 0) throw InputError("epsilon must be >= 0");
    if (cfg.top_k < 1 || cfg.top_k > 9) throw InputError("top-k must be in [1, 9]");
    if (cfg.runs < 1) throw InputError("runs must be >= 1");
    if (cfg.jobs < 1) throw InputError("jobs must be >= 1");
    parse_label_mode(cfg.label_mode);
    parse_feature_mode(cfg.feature_mode);
    strategy_from_name(cfg.strategy);
    if (cfg.loocv_modes != "all-in" && cfg.loocv_modes != "full")
        throw InputError("loocv-modes must be 'all-in' or 'full'");
}

/// Load a standalone binary-classification CSV (header, feature columns,
/// label column last). The two distinct label values map to {0, 1} in sorted
/// order.
LabeledDataset load_binary_csv(const std::string& path) {
    std::ifstream probe(path);
    if (!probe) throw InputError("cannot open " + path);
    std::string header, line;
    if (!std::getline(probe, header)) throw InputError("empty csv " + path);
    std::set<std::string> values;
    while (std::getline(probe, line)) {
        if (line.empty()) continue;
        auto pos = line.find_last_of(',');
        if (pos == std::string::npos) throw InputError("malformed csv row in " + path);
        std::string v = line.substr(pos + 1);
        while (!v.empty() && (v.back() == '\r' || v.back() == ' ')) v.pop_back();
        values.insert(v);
    }
    if (values.size() != 2)
        throw InputError(path + ": expected exactly 2 label values, found " +
                         std::to_string(values.size()));
    Binarization bin;
    bin.class_pair = {*values.begin(), *std::next(values.begin())};
    LabeledDataset d = load_real(path, CsvSchema{}, bin, /*n_samples=*/-1, /*seed=*/0);
    fs::path p(path);
    d.name = p.stem().string();
    return d;
}

// ---- build-meta ----------------------------------------------------------

struct BuildResult {
    bool ok = false;
    std::string error;
    MetaRecord record;
    std::vector<CircuitScore> scores;
    std::string family;
};

int cmd_build_meta(const PipelineConfig& cfg) {
    validate_config(cfg);
    Manifest manifest = load_manifest(cfg.manifest);
    fs::create_directories(cfg.out);
    fs::create_directories(fs::path(cfg.out) / "scores");
    EventLog log((fs::path(cfg.out) / "log.jsonl").string());

    const auto circuits = all_circuits();
    const int n = static_cast<int>(manifest.specs.size());
    std::vector<BuildResult> results(n);

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            BuildResult& r = results[i];
            const DatasetSpec& spec = manifest.specs[i];
            r.family = spec_family_name(spec);
            try {
                LabeledDataset d = materialize(spec, manifest.base_dir);
                d.validate();
                std::uint64_t dseed = mix_seed(cfg.seed, std::hash<std::string>{}(d.name));
                MetaRecord rec;
                rec.name = d.name;
                rec.features = compute_all_metrics(d, dseed);
                PreprocessedDataset prep = preprocess(d, dseed);
                r.scores = score_circuits(prep, circuits);
                rec.best_acc.resize(kNumCircuits);
                for (int c = 0; c < static_cast<int>(kNumCircuits); ++c)
                    rec.best_acc(c) = r.scores[c].best_accuracy;
                LabelSet single = label(r.scores, LabelMode::SingleBestOut, 0.0, dseed);
                LabelSet tied = label(r.scores, LabelMode::TiedBestOut, cfg.epsilon, dseed);
                rec.single_set = single.circuits;
                rec.tied_set = tied.circuits;
                r.record = std::move(rec);
                r.ok = true;
                for (const auto& s : r.scores)
                    if (!s.failure.empty())
                        log.emit("classifier_fallback",
                                 {{"dataset", d.name},
                                  {"circuit", circuit_name(s.circuit_id)},
                                  {"detail", s.failure}});
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < cfg.jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<MetaRecord> records;
    std::map<std::string, int> inventory;
    std::map<std::string, int> tied_freq, single_freq;
    int failed = 0;
    for (int i = 0; i < n; ++i) {
        if (!results[i].ok) {
            ++failed;
            log.emit("dataset_skipped", {{"index", i}, {"error", results[i].error}});
            std::cerr << "warning: dataset " << i << " skipped: " << results[i].error << "\n";
            continue;
        }
        const MetaRecord& rec = results[i].record;
        records.push_back(rec);
        inventory[results[i].family] += 1;
        for (auto id : rec.tied_set) tied_freq[circuit_name(id)] += 1;
        for (auto id : rec.single_set) single_freq[circuit_name(id)] += 1;
        std::ofstream((fs::path(cfg.out) / "scores" / (rec.name + ".csv")).string())
            << scores_to_csv(rec.name, results[i].scores);
    }

    std::ofstream((fs::path(cfg.out) / "meta.csv").string()) << meta_records_to_csv(records);

    // Inventory report (dataset counts per family).
    json jinv{{"total", static_cast<int>(records.size())}, {"failed", failed}};
    std::ostringstream tinv;
    tinv << "Dataset inventory\n-----------------\n";
    for (const auto& [fam, count] : inventory) {
        tinv << "  " << fam << ": " << count << "\n";
        jinv["families"][fam] = count;
    }
    tinv << "  total: " << records.size() << " (failed: " << failed << ")\n";
    std::ofstream((fs::path(cfg.out) / "inventory.txt").string()) << tinv.str();
    std::ofstream((fs::path(cfg.out) / "inventory.json").string()) << jinv.dump(2) << '\n';
    std::cout << tinv.str();

    // Frequency report: how often each circuit appears across label sets.
    int tied_total = 0;
    for (const auto& [c, v] : tied_freq) tied_total += v;
    json jfreq{{"single_total", static_cast<int>(records.size())}, {"tied_total", tied_total}};
    std::ostringstream tfreq;
    tfreq << "Circuit frequency in label sets\n-------------------------------\n";
    tfreq << "  circuit       SINGLE   TIED\n";
    for (auto id : kCircuitOrder) {
        std::string name = circuit_name(id);
        tfreq << "  " << name << std::string(14 - name.size(), ' ') << single_freq[name] << "   "
              << tied_freq[name] << "\n";
        jfreq["single"][name] = single_freq[name];
        jfreq["tied"][name] = tied_freq[name];
    }
    tfreq << "  tied memberships total: " << tied_total << "\n";
    std::ofstream((fs::path(cfg.out) / "frequency.txt").string()) << tfreq.str();
    std::ofstream((fs::path(cfg.out) / "frequency.json").string()) << jfreq.dump(2) << '\n';
    std::cout << tfreq.str();

    const auto& cc = cost_counters();
    std::cout << "kernel evaluations: " << cc.kernel_evals.load()
              << ", gram builds: " << cc.gram_builds.load()
              << ", evaluator fits: " << cc.evaluator_fits.load() << "\n";

    if (failed * 20 > n) {  // > 5% failures
        std::cerr << "error: " << failed << "/" << n << " datasets failed (> 5%)\n";
        return 2;
    }
    return 0;
}

// ---- train ---------------------------------------------------------------

int cmd_train(const PipelineConfig& cfg, const std::string& meta_path) {
    validate_config(cfg);
    auto records = meta_records_from_file(meta_path);
    fs::create_directories(cfg.out);
    EventLog log((fs::path(cfg.out) / "log.jsonl").string());

    LabelMode mode = parse_label_mode(cfg.label_mode);
    FeatureMode fmode = parse_feature_mode(cfg.feature_mode);
    Strategy strategy = strategy_from_name(cfg.strategy);

    cost_counters().base_trainings = 0;
    json report{{"strategy", cfg.strategy},
                {"label_mode", cfg.label_mode},
                {"top_k", cfg.top_k},
                {"n_records", static_cast<int>(records.size())}};
    std::ostringstream text;
    Recommender rec;

    if (strategy == Strategy::MajorityVote) {
        auto ev = mv_evaluate(records, mode, fmode, cfg.top_k, cfg.runs, cfg.seed);
        text << "Majority-vote evaluation (" << cfg.runs << " runs, top-" << cfg.top_k << ")\n";
        for (size_t r = 0; r < ev.runs.size(); ++r) {
            text << "  run " << r + 1 << ": hit rate " << ev.runs[r].hit_rate << " ("
                 << ev.runs[r].n_test << " test records)\n";
            report["runs"].push_back(ev.runs[r].hit_rate);
        }
        text << "  mean hit rate: " << ev.mean_hit_rate << "\n";
        report["mean_hit_rate"] = ev.mean_hit_rate;
        report["feature_mode"] = cfg.feature_mode;
        for (const auto& t : ev.tie_log) log.emit("vote_tie", {{"detail", t}});
        long evals = cost_counters().base_trainings.load();
        auto ratio = cost_ratio(cfg.runs, kNumBaseClassifiers, static_cast<int>(records.size()));
        text << "  base trainings: " << evals << " (MV " << ratio.mv_trainings << " vs LOOCV "
             << ratio.loocv_trainings << ", ratio " << ratio.ratio << ")\n";
        report["base_trainings"] = evals;
        report["cost_ratio"] = ratio.ratio;
        rec = train_final(records, strategy, mode, fmode, ClassifierId::DT, cfg.seed);
    } else {
        std::vector<FeatureMode> modes =
            cfg.loocv_modes == "full" ? all_feature_modes() : std::vector<FeatureMode>{fmode};
        auto ev = loocv_evaluate(records, mode, modes, cfg.top_k, cfg.seed);
        text << "LOOCV evaluation grid (hit rate per classifier x feature mode)\n";
        for (const auto& cell : ev.grid) {
            text << "  " << classifier_name(cell.classifier) << " / " << cell.fmode.to_string()
                 << ": " << cell.hit_rate << "\n";
            report["grid"].push_back({{"classifier", classifier_name(cell.classifier)},
                                      {"feature_mode", cell.fmode.to_string()},
                                      {"hit_rate", cell.hit_rate}});
        }
        text << "  winner: " << classifier_name(ev.winner) << " / " << ev.winner_mode.to_string()
             << " (hit rate " << ev.winner_hit_rate << ")\n";
        report["winner"] = classifier_name(ev.winner);
        report["winner_mode"] = ev.winner_mode.to_string();
        report["winner_hit_rate"] = ev.winner_hit_rate;
        long evals = cost_counters().base_trainings.load();
        text << "  base trainings: " << evals << "\n";
        report["base_trainings"] = evals;
        report["feature_mode"] = ev.winner_mode.to_string();
        rec = train_final(records, strategy, mode, ev.winner_mode, ev.winner, cfg.seed);
    }

    std::string model_path = (fs::path(cfg.out) / "model.json").string();
    save_recommender(model_path, rec, records);
    text << "model written to " << model_path << "\n";
    std::ofstream((fs::path(cfg.out) / "train_report.txt").string()) << text.str();
    std::ofstream((fs::path(cfg.out) / "train_report.json").string()) << report.dump(2) << '\n';
    std::cout << text.str();
    return 0;
}

// ---- recommend / verify --------------------------------------------------

Vector features_for(const LabeledDataset& d, std::uint64_t seed) {
    return compute_all_metrics(d, mix_seed(seed, std::hash<std::string>{}(d.name)));
}

int cmd_recommend(const PipelineConfig& cfg, const std::string& model_path,
                  const std::vector<std::string>& csvs) {
    auto loaded = load_recommender(model_path);
    long evals_before = cost_counters().kernel_evals.load();
    json out = json::array();
    for (const auto& path : csvs) {
        LabeledDataset d = load_binary_csv(path);
        d.validate();
        Vector feats = features_for(d, cfg.seed);
        auto ranked = loaded.rec.recommend_topk(feats, cfg.top_k);
        std::cout << d.name << ": ";
        json entry{{"dataset", d.name}, {"top_k", cfg.top_k}};
        for (size_t i = 0; i < ranked.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << i + 1 << ". " << circuit_name(ranked[i]);
            entry["ranked"].push_back(circuit_name(ranked[i]));
        }
        std::cout << "\n";
        out.push_back(entry);
    }
    long evals_after = cost_counters().kernel_evals.load();
    if (evals_after != evals_before)
        throw NumericalError("recommend performed kernel evaluations; this is a bug");
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const PipelineConfig& cfg, const std::string& model_path,
               const std::vector<std::string>& csvs, bool full) {
    auto loaded = load_recommender(model_path);
    const auto circuits = all_circuits();
    int hits_k = 0, hits_1 = 0;
    std::cout << "dataset, recommended, evaluated accuracies" << (full ? ", truth set, top-1, top-k" : "")
              << "\n";
    for (const auto& path : csvs) {
        LabeledDataset d = load_binary_csv(path);
        d.validate();
        std::uint64_t dseed = mix_seed(cfg.seed, std::hash<std::string>{}(d.name));
        Vector feats = features_for(d, cfg.seed);
        auto ranked = loaded.rec.recommend_topk(feats, cfg.top_k);
        PreprocessedDataset prep = preprocess(d, dseed);

        std::cout << d.name << ": ";
        for (size_t i = 0; i < ranked.size(); ++i)
            std::cout << (i ? ", " : "") << circuit_name(ranked[i]);

        if (full) {
            // Evaluate all nine circuits to obtain the ground-truth label set.
            auto scores = score_circuits(prep, circuits);
            LabelSet truth =
                label(scores, parse_label_mode(cfg.label_mode), cfg.epsilon, dseed);
            bool h1 = !ranked.empty() && truth.contains(ranked[0]);
            bool hk = false;
            for (auto id : ranked) hk = hk || truth.contains(id);
            hits_1 += h1;
            hits_k += hk;
            std::cout << " | truth {";
            bool first = true;
            for (auto id : truth.circuits) {
                std::cout << (first ? "" : ", ") << circuit_name(id);
                first = false;
            }
            std::cout << "} | top-1 " << (h1 ? "hit" : "miss") << " | top-" << cfg.top_k << " "
                      << (hk ? "hit" : "miss");
        } else {
            // Reduced-burden mode: evaluate only the recommended circuits.
            std::vector<EncodingCircuit> chosen;
            for (auto id : ranked) chosen.push_back(circuits[circuit_index(id)]);
            auto scores = score_circuits(prep, chosen);
            std::cout << " | ";
            for (size_t i = 0; i < scores.size(); ++i)
                std::cout << (i ? ", " : "") << circuit_name(scores[i].circuit_id) << "="
                          << scores[i].best_accuracy;
        }
        std::cout << "\n";
    }
    if (full)
        std::cout << "summary: top-1 " << hits_1 << "/" << csvs.size() << ", top-" << cfg.top_k
                  << " " << hits_k << "/" << csvs.size() << "\n";
    return 0;
}

// ---- audit-circuits ------------------------------------------------------

int cmd_audit_circuits() {
    struct Row {
        CircuitId id;
        int params, gates, depth;
        const char* two_qubit;
    };
    // Reference tuples for the nine published circuit shapes at L = 2, n = 4.
    const Row expect[] = {
        {CircuitId::SRx, 0, 8, 2, "-"},
        {CircuitId::HERx, 0, 14, 8, "CX"},
        {CircuitId::ZFM, 0, 16, 4, "-"},
        {CircuitId::ZZFM, 0, 34, 22, "CX"},
        {CircuitId::HD, 0, 31, 9, "sqrt(iSWAP)"},
        {CircuitId::YZ_CX, 16, 20, 6, "CX"},
        {CircuitId::HZY_CZ, 16, 28, 13, "CRZ"},
        {CircuitId::PZFM, 8, 22, 10, "CX"},
        {CircuitId::Chebyshev, 24, 24, 10, "CRZ"},
    };
    const auto circuits = all_circuits();
    bool ok = true;
    std::cout << "circuit        params  gates  depth  2q-gate\n";
    for (const auto& row : expect) {
        CircuitStructure s = circuit_structure(circuits[circuit_index(row.id)]);
        bool match = s.n_params == row.params && s.n_gates == row.gates && s.depth == row.depth &&
                     s.two_qubit_gate == row.two_qubit;
        ok = ok && match;
        std::string name = circuit_name(row.id);
        std::cout << "  " << name << std::string(13 - name.size(), ' ') << s.n_params << "\t"
                  << s.n_gates << "\t" << s.depth << "\t" << s.two_qubit_gate
                  << (match ? "" : "  MISMATCH") << "\n";
    }
    std::cout << (ok ? "audit passed" : "audit FAILED") << "\n";
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum kernel circuit recommender pipeline"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    app.add_option("--seed", cfg.seed, "Global seed");
    app.add_option("--manifest", cfg.manifest, "Dataset manifest path");
    app.add_option("--epsilon", cfg.epsilon, "Tied-labeling tolerance");
    app.add_option("--label-mode", cfg.label_mode, "SINGLE-BEST-OUT or TIED-BEST-OUT");
    app.add_option("--feature-mode", cfg.feature_mode, "ALL-IN or a single metric name");
    app.add_option("--strategy", cfg.strategy, "MV or LOOCV");
    app.add_option("--runs", cfg.runs, "Majority-vote evaluation runs");
    app.add_option("--top-k", cfg.top_k, "Recommendation list length");
    app.add_option("--out", cfg.out, "Output directory");
    app.add_option("--jobs", cfg.jobs, "Worker threads");
    app.add_option("--loocv-modes", cfg.loocv_modes,
                   "LOOCV feature-mode grid: 'all-in' or 'full' (all 25 modes)");

    auto* build = app.add_subcommand("build-meta", "Materialize datasets, evaluate circuits, "
                                                   "write the meta-dataset");
    auto* train = app.add_subcommand("train", "Evaluate a strategy and train the recommender");
    std::string meta_path = "out/meta.csv";
    train->add_option("--meta", meta_path, "Meta-dataset CSV");
    auto* recommend = app.add_subcommand("recommend", "Rank circuits for new datasets "
                                                      "(no quantum simulation)");
    auto* verify = app.add_subcommand("verify", "Recommend, then evaluate the recommendation");
    std::string model_path = "out/model.json";
    std::vector<std::string> csvs;
    bool verify_full = false;
    recommend->add_option("--model", model_path, "Recommender file");
    recommend->add_option("csvs", csvs, "Dataset CSV files")->required();
    verify->add_option("--model", model_path, "Recommender file");
    verify->add_option("csvs", csvs, "Dataset CSV files")->required();
    verify->add_flag("--full", verify_full,
                     "Also evaluate all nine circuits to compute ground truth and hit/miss");
    auto* audit = app.add_subcommand("audit-circuits", "Run the circuit structural audit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) merge_config_file(cfg, config_path, app);
        if (build->parsed()) return cmd_build_meta(cfg);
        if (train->parsed()) return cmd_train(cfg, meta_path);
        if (recommend->parsed()) return cmd_recommend(cfg, model_path, csvs);
        if (verify->parsed()) return cmd_verify(cfg, model_path, csvs, verify_full);
        if (audit->parsed()) return cmd_audit_circuits();
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
