// Acceptance suite: exercises the full pipeline end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include "qcrec/complexity/metrics.hpp"
#include "qcrec/cost.hpp"
#include "qcrec/datagen/preprocess.hpp"
#include "qcrec/evaluator/classifiers.hpp"
#include "qcrec/evaluator/scoring.hpp"
#include "qcrec/io/manifest.hpp"
#include "qcrec/io/serialize.hpp"
#include "qcrec/meta/recommend.hpp"
#include "qcrec/qsim/kernel.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace qcrec;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kRepo = QCREC_REPO_DIR;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << "CRITERION " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — " << detail
              << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- criterion 1: structural audit ---------------------------------------

void criterion_1() {
    struct Row {
        CircuitId id;
        int params, gates, depth;
        std::string two_qubit;
    };
    const std::vector<Row> expect = {
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
    auto t0 = Clock::now();
    auto circuits = all_circuits();
    bool ok = true;
    std::string bad;
    for (const auto& row : expect) {
        CircuitStructure s = circuit_structure(circuits[circuit_index(row.id)]);
        if (s.n_params != row.params || s.n_gates != row.gates || s.depth != row.depth ||
            s.two_qubit_gate != row.two_qubit) {
            ok = false;
            bad += std::string(" ") + circuit_name(row.id);
        }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 1.0;
    report(1, ok,
           ok ? "all nine circuit tuples (params, gates, depth, 2q-gate) match, " +
                    std::to_string(dt) + " s"
              : "mismatched circuits:" + bad);
}

// --- criterion 2: kernel correctness --------------------------------------

void criterion_2() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    auto angles = [&] {
        Vector x(kNumQubits);
        for (int q = 0; q < kNumQubits; ++q) x(q) = u(rng);
        return x;
    };
    bool ok = true;
    std::string why;
    auto circuits = all_circuits();
    for (const auto& c : circuits) {
        for (int rep = 0; rep < 1000 && ok; ++rep) {
            Vector x = angles(), xp = angles();
            double kxy = kernel(c, x, xp), kyx = kernel(c, xp, x);
            if (std::abs(kxy - kyx) > 1e-10) { ok = false; why = "symmetry"; }
            if (rep % 50 == 0 && std::abs(kernel(c, x, x) - 1.0) > 1e-10) {
                ok = false;
                why = "unit diagonal";
            }
        }
        if (!ok) break;
        Matrix batch(60, kNumQubits);
        for (int i = 0; i < 60; ++i) batch.row(i) = angles().transpose();
        GramMatrix g = gram(c, batch, batch);
        Eigen::SelfAdjointEigenSolver<Matrix> es(g.entries);
        if (es.eigenvalues().minCoeff() < -1e-8) { ok = false; why = "PSD"; break; }
    }
    if (ok) {
        const auto& srx = circuits[circuit_index(CircuitId::SRx)];
        for (int rep = 0; rep < 1000 && ok; ++rep) {
            Vector x = angles(), xp = angles();
            double expect = 1.0;
            for (int q = 0; q < kNumQubits; ++q) expect *= std::pow(std::cos(x(q) - xp(q)), 2);
            if (std::abs(kernel(srx, x, xp) - expect) > 1e-10) { ok = false; why = "closed form"; }
        }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    report(2, ok,
           ok ? "symmetry, unit diagonal, PSD and closed form verified, " + std::to_string(dt) + " s"
              : "kernel check failed: " + why);
}

// --- criterion 3: evaluator oracles ---------------------------------------

double svm_dual_oracle(const Matrix& k, const Vector& y, double c) {
    int n = static_cast<int>(y.size());
    Matrix q = y.asDiagonal() * k * y.asDiagonal();
    double best = -1e300;
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    std::vector<int> state(n);
    for (int code = 0; code < total; ++code) {
        int v = code;
        for (int i = 0; i < n; ++i) { state[i] = v % 3; v /= 3; }
        std::vector<int> free;
        Vector alpha = Vector::Zero(n);
        for (int i = 0; i < n; ++i) {
            if (state[i] == 1) alpha(i) = c;
            if (state[i] == 2) free.push_back(i);
        }
        int nf = static_cast<int>(free.size());
        if (nf == 0) {
            if (std::abs(alpha.dot(y)) > 1e-9) continue;
        } else {
            Matrix sys = Matrix::Zero(nf + 1, nf + 1);
            Vector rhs = Vector::Zero(nf + 1);
            for (int a = 0; a < nf; ++a) {
                for (int b = 0; b < nf; ++b) sys(a, b) = q(free[a], free[b]);
                sys(a, nf) = y(free[a]);
                rhs(a) = 1.0;
                for (int i = 0; i < n; ++i)
                    if (state[i] == 1) rhs(a) -= q(free[a], i) * c;
            }
            for (int b = 0; b < nf; ++b) sys(nf, b) = y(free[b]);
            for (int i = 0; i < n; ++i)
                if (state[i] == 1) rhs(nf) -= y(i) * c;
            Eigen::FullPivLU<Matrix> lu(sys);
            if (!lu.isInvertible()) continue;
            Vector sol = lu.solve(rhs);
            bool feas = true;
            for (int a = 0; a < nf; ++a) {
                alpha(free[a]) = sol(a);
                feas = feas && sol(a) >= -1e-9 && sol(a) <= c + 1e-9;
            }
            if (!feas) continue;
        }
        double obj = alpha.sum() - 0.5 * alpha.dot(q * alpha);
        best = std::max(best, obj);
    }
    return best;
}

void criterion_3() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(33);
    std::normal_distribution<double> g(0.0, 1.0);
    auto rbf = [](const Matrix& x, double gamma) {
        Matrix k(x.rows(), x.rows());
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.rows(); ++j)
                k(i, j) = std::exp(-gamma * (x.row(i) - x.row(j)).squaredNorm());
        return k;
    };
    bool ok = true;
    std::string why;

    for (int rep = 0; rep < 5 && ok; ++rep) {  // SVC dual vs brute force, 6 points
        Matrix x(6, 2);
        Vector y(6);
        for (int i = 0; i < 6; ++i) {
            y(i) = i < 3 ? 1 : -1;
            x(i, 0) = g(rng) + y(i);
            x(i, 1) = g(rng);
        }
        Matrix k = rbf(x, 0.6);
        auto r = smo_solve(k, y, 1.0, 1e-8);
        if (!r.converged || std::abs(r.dual_objective(k, y) - svm_dual_oracle(k, y, 1.0)) > 1e-4) {
            ok = false;
            why = "SVC dual objective";
        }
    }
    for (int rep = 0; rep < 5 && ok; ++rep) {  // KRC vs direct solve
        Matrix x(10, 2);
        Vector y(10);
        for (int i = 0; i < 10; ++i) {
            y(i) = i % 2 ? 1 : -1;
            x(i, 0) = g(rng);
            x(i, 1) = g(rng);
        }
        Matrix k = rbf(x, 0.9);
        Vector coef = krc_coefficients(k, y, 1.0);
        Vector direct = (k + Matrix::Identity(10, 10)).fullPivLu().solve(y);
        if ((coef - direct).cwiseAbs().maxCoeff() > 1e-10) { ok = false; why = "KRC coefficients"; }
    }
    for (int rep = 0; rep < 5 && ok; ++rep) {  // GPC mode vs gradient ascent, 5 points
        Matrix x(5, 2);
        Vector y(5);
        for (int i = 0; i < 5; ++i) {
            y(i) = i % 2 ? 1 : -1;
            x(i, 0) = g(rng);
            x(i, 1) = g(rng);
        }
        Matrix k = rbf(x, 0.8);
        k.diagonal().array() += 1e-10;
        Vector mode = gpc_posterior_mode(k, y);
        // inverse-free oracle: ascent in a with f = K a; fixed point a = t - pi
        Vector t = (y.array() + 1.0) / 2.0;
        Vector a = Vector::Zero(5);
        Vector f = Vector::Zero(5);
        for (int it = 0; it < 200000; ++it) {
            f = k * a;
            Vector pi = (1.0 + (-f.array()).exp()).inverse();
            Vector step = t - pi - a;
            a += 0.1 * step;
            if (step.norm() < 1e-12) break;
        }
        f = k * a;
        if ((mode - f).cwiseAbs().maxCoeff() > 1e-5) { ok = false; why = "GPC posterior mode"; }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    report(3, ok,
           ok ? "SVC/KRC/GPC agree with independent oracles, " + std::to_string(dt) + " s"
              : "oracle mismatch: " + why);
}

// --- criteria 4-9: full pipeline ------------------------------------------

struct Pipeline {
    std::vector<MetaRecord> records;
    std::map<std::string, int> inventory;
    double build_seconds = 0;
    double mv_seconds = 0;
    double loocv_seconds = 0;
};

Pipeline build_pipeline(std::uint64_t seed, double epsilon) {
    Pipeline p;
    auto t0 = Clock::now();
    Manifest m = load_manifest(kRepo + "/data/manifest.json");
    auto circuits = all_circuits();
    for (const auto& spec : m.specs) {
        LabeledDataset d = materialize(spec, m.base_dir);
        d.validate();
        std::uint64_t dseed = mix_seed(seed, std::hash<std::string>{}(d.name));
        MetaRecord rec;
        rec.name = d.name;
        rec.features = compute_all_metrics(d, dseed);
        auto scores = score_circuits(preprocess(d, dseed), circuits);
        rec.best_acc.resize(kNumCircuits);
        for (int c = 0; c < static_cast<int>(kNumCircuits); ++c)
            rec.best_acc(c) = scores[c].best_accuracy;
        rec.single_set = label(scores, LabelMode::SingleBestOut, 0.0, dseed).circuits;
        rec.tied_set = label(scores, LabelMode::TiedBestOut, epsilon, dseed).circuits;
        p.records.push_back(std::move(rec));
        p.inventory[spec_family_name(spec)] += 1;
    }
    p.build_seconds = seconds_since(t0);
    return p;
}

void criterion_4(const Pipeline& p) {
    const std::map<std::string, int> expect = {
        {"Blobs", 42},   {"Circles", 24},        {"Moons", 21}, {"ConcentricRings", 24},
        {"XOR", 18},     {"Spiral", 18},         {"Checkerboard", 27}, {"Real", 26}};
    bool ok = p.records.size() == 200 && p.inventory == expect;
    std::ostringstream os;
    os << p.records.size() << " datasets:";
    for (const auto& [fam, n] : p.inventory) os << " " << fam << "=" << n;
    report(4, ok, os.str());
}

void criterion_5(const Pipeline& p, std::uint64_t seed, double epsilon) {
    int memberships = 0;
    bool contained = true;
    for (const auto& r : p.records) {
        memberships += static_cast<int>(r.tied_set.size());
        contained = contained && r.tied_set.count(*r.single_set.begin()) > 0;
    }
    // epsilon-monotonicity, re-derived from the stored accuracies
    bool monotone = true;
    for (const auto& r : p.records) {
        double best = r.best_acc.maxCoeff();
        std::set<CircuitId> eps_lo, eps_hi;
        for (int c = 0; c < static_cast<int>(kNumCircuits); ++c) {
            if (r.best_acc(c) >= best - epsilon) eps_lo.insert(kCircuitOrder[c]);
            if (r.best_acc(c) >= best - 2 * epsilon) eps_hi.insert(kCircuitOrder[c]);
        }
        for (auto id : eps_lo) monotone = monotone && eps_hi.count(id) > 0;
        for (auto id : r.tied_set) monotone = monotone && eps_lo.count(id) > 0;
        for (auto id : eps_lo) monotone = monotone && r.tied_set.count(id) > 0;
    }
    bool ok = memberships >= 200 && memberships <= 1800 && contained && monotone;
    std::ostringstream os;
    os << "tied memberships " << memberships << " in [200, 1800], single ⊆ tied "
       << (contained ? "holds" : "VIOLATED") << ", ε-monotone "
       << (monotone ? "holds" : "VIOLATED") << " (regenerated distribution; the published "
       << "dataset-specific counts are not reproducible)";
    report(5, ok, os.str());
}

void criterion_6(Pipeline& p, std::uint64_t seed) {
    auto& cc = cost_counters();
    cc.base_trainings = 0;
    auto t0 = Clock::now();
    auto mv = mv_evaluate(p.records, LabelMode::TiedBestOut, FeatureMode::all(), 3, 10, seed);
    p.mv_seconds = seconds_since(t0);
    long mv_count = cc.base_trainings.load();

    cc.base_trainings = 0;
    t0 = Clock::now();
    auto lo = loocv_evaluate(p.records, LabelMode::TiedBestOut, {FeatureMode::all()}, 3, seed);
    p.loocv_seconds = seconds_since(t0);
    long lo_count = cc.base_trainings.load();

    auto ratio = cost_ratio(10, kNumBaseClassifiers, static_cast<int>(p.records.size()));
    bool ok = mv_count == 140 && lo_count == 2800 && std::abs(ratio.ratio - 0.05) < 1e-15 &&
              ratio.mv_trainings == 140 && ratio.loocv_trainings == 2800;
    std::ostringstream os;
    os << "MV trainings " << mv_count << " (=140), LOOCV ALL-IN trainings " << lo_count
       << " (=2800), ratio " << ratio.ratio << " (=1/20); MV hit " << mv.mean_hit_rate
       << ", LOOCV winner " << classifier_name(lo.winner) << " hit " << lo.winner_hit_rate;
    report(6, ok, os.str());
}

void criterion_7(const Pipeline& p, std::uint64_t seed) {
    // (a) top-k hit monotone in k on a trained recommender over all records
    auto rec = train_final(p.records, Strategy::MajorityVote, LabelMode::TiedBestOut,
                           FeatureMode::all(), ClassifierId::DT, seed);
    bool monotone = true;
    int tied_hits = 0, single_hits = 0;
    for (const auto& r : p.records) {
        auto full = rec.rank(r.features);
        bool prev = false;
        for (int k = 1; k <= static_cast<int>(kNumCircuits); ++k) {
            bool h = hit(full, k, r.tied_set);
            if (prev && !h) monotone = false;
            prev = h;
        }
        // (b) TIED vs SINGLE hit on the identical prediction stream
        tied_hits += hit(full, 3, r.tied_set);
        single_hits += hit(full, 3, r.single_set);
    }
    bool tied_ge_single = tied_hits >= single_hits;

    // (c) mean MV accuracy: ALL-IN+TIED > ALL-IN+SINGLE over 10 seeds
    double mean_tied = 0, mean_single = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        mean_tied += mv_evaluate(p.records, LabelMode::TiedBestOut, FeatureMode::all(), 3, 10,
                                 mix_seed(seed, 100 + s))
                         .mean_hit_rate;
        mean_single += mv_evaluate(p.records, LabelMode::SingleBestOut, FeatureMode::all(), 3, 10,
                                   mix_seed(seed, 100 + s))
                           .mean_hit_rate;
    }
    mean_tied /= 10;
    mean_single /= 10;
    bool directional = mean_tied > mean_single;

    bool ok = monotone && tied_ge_single && directional;
    std::ostringstream os;
    os << "hit monotone in k " << (monotone ? "holds" : "VIOLATED") << "; TIED hits " << tied_hits
       << " >= SINGLE hits " << single_hits << "; 10-seed MV mean TIED " << mean_tied
       << " > SINGLE " << mean_single << (directional ? "" : " VIOLATED");
    report(7, ok, os.str());
}

void criterion_8(const Pipeline& p, std::uint64_t seed) {
    auto rec = train_final(p.records, Strategy::MajorityVote, LabelMode::TiedBestOut,
                           FeatureMode::all(), ClassifierId::DT, seed);
    // inference on a fresh dataset: features + ranking only
    auto d = generate_synthetic(SyntheticFamily::Moons, {{"noise", 0.2}}, 120, 999);
    auto before = cost_counters().kernel_evals.load();
    Vector feats = compute_all_metrics(d, seed);
    auto ranked = rec.recommend_topk(feats, 3);
    auto after = cost_counters().kernel_evals.load();
    bool ok = after == before && !ranked.empty();
    std::ostringstream os;
    os << "recommendation of " << ranked.size() << " circuit(s) used " << (after - before)
       << " kernel evaluations";
    report(8, ok, os.str());
}

void criterion_9(const Pipeline& p) {
    double total = p.build_seconds + p.mv_seconds + p.loocv_seconds;
    bool ok = total <= 1800.0;
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << "build-meta " << p.build_seconds << " s + MV "
       << p.mv_seconds << " s + LOOCV ALL-IN " << p.loocv_seconds << " s = " << total
       << " s (limit 1800 s); verify evaluates only the recommended circuits (at most 3 of 9)";
    report(9, ok, os.str());
}

} // namespace

int main() {
    const std::uint64_t seed = 7;
    const double epsilon = 0.01;
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        Pipeline p = build_pipeline(seed, epsilon);
        criterion_4(p);
        criterion_5(p, seed, epsilon);
        criterion_6(p, seed);
        criterion_7(p, seed);
        criterion_8(p, seed);
        criterion_9(p);
    } catch (const std::exception& e) {
        std::cout << "ACCEPTANCE SUITE ABORTED: " << e.what() << std::endl;
        return 2;
    }
    std::cout << (g_failures == 0 ? "all acceptance criteria passed"
                                  : std::to_string(g_failures) + " criteria failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
