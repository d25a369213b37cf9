#include "qcrec/io/manifest.hpp"
#include "qcrec/io/serialize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>
#include <sstream>

using namespace qcrec;

namespace {

std::vector<MetaRecord> sample_records(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<MetaRecord> recs;
    for (int i = 0; i < n; ++i) {
        MetaRecord r;
        r.name = "ds" + std::to_string(i);
        r.features = Vector::Zero(kNumMetrics);
        for (int j = 0; j < kNumMetrics; ++j) r.features(j) = u(rng);
        int cls = i % 4;
        r.best_acc = Vector::Constant(kNumCircuits, 0.6);
        r.best_acc(cls) = 0.95;
        r.single_set = {kCircuitOrder[cls]};
        r.tied_set = {kCircuitOrder[cls], kCircuitOrder[(cls + 3) % kNumCircuits]};
        recs.push_back(r);
    }
    return recs;
}

} // namespace

TEST_CASE("meta-dataset csv round-trips bit-exactly") {
    auto recs = sample_records(15, 1);
    std::string csv = meta_records_to_csv(recs);
    std::istringstream in(csv);
    auto back = meta_records_from_csv(in);
    REQUIRE(back.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].name == recs[i].name);
        CHECK(back[i].features == recs[i].features);       // exact, not approximate
        CHECK(back[i].best_acc == recs[i].best_acc);
        CHECK(back[i].single_set == recs[i].single_set);
        CHECK(back[i].tied_set == recs[i].tied_set);
    }
    // serialization is canonical: a second pass yields identical bytes
    CHECK(meta_records_to_csv(back) == csv);
}

TEST_CASE("meta-dataset csv rejects malformed rows") {
    std::istringstream empty("");
    CHECK_THROWS_AS(meta_records_from_csv(empty), InputError);

    auto recs = sample_records(2, 2);
    std::string csv = meta_records_to_csv(recs);
    std::istringstream truncated(csv.substr(0, csv.rfind(',')));
    CHECK_THROWS_AS(meta_records_from_csv(truncated), InputError);
}

TEST_CASE("score table csv lists all circuits with their accuracies") {
    std::vector<CircuitScore> scores;
    for (auto id : kCircuitOrder) {
        CircuitScore s;
        s.circuit_id = id;
        s.acc_svc = 0.7;
        s.acc_gpc = 0.8;
        s.acc_krc = 0.75;
        s.best_accuracy = 0.8;
        scores.push_back(s);
    }
    std::string csv = scores_to_csv("probe", scores);
    CHECK(csv.find("dataset,circuit,acc_svc,acc_gpc,acc_krc,best,failure") == 0);
    for (auto id : kCircuitOrder)
        CHECK(csv.find(std::string("probe,") + circuit_name(id)) != std::string::npos);
}

TEST_CASE("a saved recommender reloads to identical behaviour") {
    auto recs = sample_records(20, 3);
    auto rec = train_final(recs, Strategy::MajorityVote, LabelMode::TiedBestOut,
                           FeatureMode::all(), ClassifierId::DT, 31);
    std::string path = "/tmp/qcrec_model_test.json";
    save_recommender(path, rec, recs);
    auto loaded = load_recommender(path);
    CHECK(loaded.rec.seed == 31);
    CHECK(loaded.rec.strategy == Strategy::MajorityVote);
    CHECK(loaded.training.size() == recs.size());
    for (const auto& r : recs)
        CHECK(loaded.rec.recommend_topk(r.features, 3) == rec.recommend_topk(r.features, 3));
    std::remove(path.c_str());
}

TEST_CASE("model files with a wrong version are rejected") {
    nlohmann::json j = recommender_to_json(
        train_final(sample_records(10, 4), Strategy::MajorityVote, LabelMode::TiedBestOut,
                    FeatureMode::all(), ClassifierId::DT, 1),
        sample_records(10, 4));
    j["format_version"] = 999;
    CHECK_THROWS_AS(recommender_from_json(j), InputError);
}

TEST_CASE("missing model files raise a clean input error") {
    CHECK_THROWS_AS(load_recommender("/tmp/definitely_missing_model.json"), InputError);
}

TEST_CASE("manifest loading validates structure") {
    std::string path = "/tmp/qcrec_manifest_test.json";
    std::ofstream(path) << "{\"version\": 2}";
    CHECK_THROWS_AS(load_manifest(path), InputError);
    std::ofstream(path) << "not json";
    CHECK_THROWS_AS(load_manifest(path), InputError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_manifest("/tmp/no_such_manifest.json"), InputError);
}
