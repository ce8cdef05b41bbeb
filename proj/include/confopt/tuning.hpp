#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confopt/optimizers.hpp"
#include "confopt/problem.hpp"
#include "confopt/types.hpp"

namespace confopt {

/// Sampling distributions for random hyperparameter search. Methods only
/// draw the parameters they use: CM/NAG fix delta = 0; alpha is RGD-only.
struct SearchSpace {
    double epsilon_lo = 1e-6;       // log-uniform
    double epsilon_hi = 1.0;
    double mu_lo = 0.5;             // uniform
    double mu_hi = 0.9999;
    double delta_lo = 1e-8;         // log-uniform, plus an atom at exactly 0
    double delta_hi = 1e4;
    double delta_zero_prob = 0.1;
    double alpha_lo = 0.0;          // uniform
    double alpha_hi = 1.0;

    void validate() const;
    OptimizerParams sample(Method method, std::uint64_t trial_seed) const;
};

struct TrialRecord {
    OptimizerParams params;
    double score = kInfinity;  // best f reached; +inf sentinel when diverged
    bool diverged = false;
    std::uint64_t seed = 0;
};

struct SearchResult {
    TrialRecord best;
    std::vector<TrialRecord> trials;
    bool all_diverged = false;
};

/// Per-trial seed derived from the master seed so each trial is individually
/// reproducible.
std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t trial_index);

/// Deterministic seeded random search; best = minimum score over converged
/// trials.
SearchResult random_search(const Problem& problem, Method method, std::int64_t budget,
                           std::int64_t iters_per_trial, std::uint64_t seed,
                           const SearchSpace& space = {});

struct Histogram {
    std::vector<std::int64_t> counts;
    std::vector<double> edges;  // counts.size() + 1 entries
    bool empty_flagged = false; // no converged trials
};

/// Histogram over converged trials only; log-spaced bins for the log-uniform
/// parameters (epsilon, delta), linear otherwise.
Histogram histogram(const std::vector<TrialRecord>& trials, const std::string& param,
                    int bins, const SearchSpace& space = {});

}  // namespace confopt
