#include "confopt/tuning.hpp"

#include <cmath>
#include <random>

namespace confopt {

namespace {

// splitmix64; decorrelates consecutive trial indices into independent streams
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

}  // namespace

void SearchSpace::validate() const {
    if (!(epsilon_lo > 0.0 && epsilon_lo < epsilon_hi) ||
        !(mu_lo < mu_hi && mu_lo > 0.0 && mu_hi < 1.0) ||
        !(delta_lo > 0.0 && delta_lo < delta_hi) || !(alpha_lo < alpha_hi) ||
        !(delta_zero_prob >= 0.0 && delta_zero_prob <= 1.0))
        throw ValidationError("SearchSpace: bounds out of order");
}

OptimizerParams SearchSpace::sample(Method method, std::uint64_t seed) const {
    validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    OptimizerParams p;
    p.epsilon = log_uniform(rng, epsilon_lo, epsilon_hi);
    p.mu = mu_lo + (mu_hi - mu_lo) * unit(rng);
    p.delta = 0.0;
    p.alpha = method == Method::NAG ? 0.0 : 1.0;
    if (method == Method::RGD) {
        p.delta = unit(rng) < delta_zero_prob ? 0.0 : log_uniform(rng, delta_lo, delta_hi);
        p.alpha = alpha_lo + (alpha_hi - alpha_lo) * unit(rng);
    }
    p.validate();
    return p;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::int64_t trial_index) {
    return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(trial_index)));
}

SearchResult random_search(const Problem& problem, Method method, std::int64_t budget,
                           std::int64_t iters_per_trial, std::uint64_t seed,
                           const SearchSpace& space) {
    if (budget < 1) throw ValidationError("random_search: budget must be >= 1");
    SearchResult result;
    result.trials.reserve(static_cast<std::size_t>(budget));

    const AlgState init = AlgState::at_rest(problem.init_default);
    StopCriteria stop(iters_per_trial);

    for (std::int64_t i = 0; i < budget; ++i) {
        TrialRecord rec;
        rec.seed = trial_seed(seed, i);
        rec.params = space.sample(method, rec.seed);
        Trace trace = run(method, problem, rec.params, init, stop);
        rec.diverged = trace.diverged;
        rec.score = trace.diverged ? kInfinity : trace.best_f();
        result.trials.push_back(std::move(rec));
    }

    result.best = result.trials.front();
    result.all_diverged = true;
    for (const auto& t : result.trials) {
        if (t.diverged) continue;
        if (result.all_diverged || t.score < result.best.score) result.best = t;
        result.all_diverged = false;
    }
    return result;
}

Histogram histogram(const std::vector<TrialRecord>& trials, const std::string& param,
                    int bins, const SearchSpace& space) {
    if (bins < 2) throw ValidationError("histogram: bins must be >= 2");

    double lo, hi;
    bool log_scale = false;
    auto value_of = [&param](const TrialRecord& t) {
        if (param == "epsilon") return t.params.epsilon;
        if (param == "mu") return t.params.mu;
        if (param == "delta") return t.params.delta;
        if (param == "alpha") return t.params.alpha;
        throw ValidationError("histogram: unknown parameter " + param);
    };
    if (param == "epsilon") {
        lo = space.epsilon_lo; hi = space.epsilon_hi; log_scale = true;
    } else if (param == "mu") {
        lo = space.mu_lo; hi = space.mu_hi;
    } else if (param == "delta") {
        lo = space.delta_lo; hi = space.delta_hi; log_scale = true;
    } else if (param == "alpha") {
        lo = space.alpha_lo; hi = space.alpha_hi;
    } else {
        throw ValidationError("histogram: unknown parameter " + param);
    }

    Histogram h;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (int i = 0; i <= bins; ++i) {
        const double t = static_cast<double>(i) / bins;
        h.edges.push_back(log_scale ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }

    bool any = false;
    for (const auto& rec : trials) {
        if (rec.diverged) continue;  // converged trials only
        any = true;
        const double v = value_of(rec);
        double t;
        if (log_scale)
            t = v <= lo ? 0.0 : std::log(v / lo) / std::log(hi / lo);
        else
            t = (v - lo) / (hi - lo);
        auto bin = static_cast<std::int64_t>(t * bins);
        bin = std::max<std::int64_t>(0, std::min<std::int64_t>(bins - 1, bin));
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    h.empty_flagged = !any;
    return h;
}

}  // namespace confopt
