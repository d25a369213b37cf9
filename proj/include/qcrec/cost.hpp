#pragma once

#include <atomic>
#include <cstdint>

namespace qcrec {

/// Global instrumentation counters. Contention-safe and exact; used both for
/// the R/N cost-ratio report and to assert that inference never touches the
/// simulator.
struct CostCounters {
    std::atomic<std::uint64_t> kernel_evals{0};
    std::atomic<std::uint64_t> gram_builds{0};
    std::atomic<std::uint64_t> base_trainings{0};
    std::atomic<std::uint64_t> evaluator_fits{0};

    void reset() {
        kernel_evals = 0;
        gram_builds = 0;
        base_trainings = 0;
        evaluator_fits = 0;
    }
};

inline CostCounters& cost_counters() {
    static CostCounters c;
    return c;
}

/// Eq-style cost ratio between the two training strategies: (R*H)/(H*N) = R/N.
struct CostRatio {
    double ratio;
    std::uint64_t mv_trainings;     // R*H
    std::uint64_t loocv_trainings;  // H*N
};

inline CostRatio cost_ratio(int runs, int n_classifiers, int n_meta) {
    return {static_cast<double>(runs) / n_meta,
            static_cast<std::uint64_t>(runs) * n_classifiers,
            static_cast<std::uint64_t>(n_classifiers) * n_meta};
}

} // namespace qcrec
