#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "confopt/types.hpp"

namespace confopt {

using ObjectiveFn = std::function<double(const Vec&)>;
using GradientFn = std::function<Vec(const Vec&)>;
using HessianFn = std::function<Mat(const Vec&)>;

/// Objective contract: value, analytic gradient, optional Hessian, and
/// (when known) the certified minimum.
struct Problem {
    std::string name;
    Eigen::Index dim = 0;
    ObjectiveFn f;
    GradientFn grad;
    HessianFn hess;                                   // empty when unavailable
    std::optional<std::pair<Vec, double>> known_min;  // (x*, f*)
    Vec init_default;
    Vec domain_lo;  // per-coordinate interval hint
    Vec domain_hi;

    bool has_hessian() const { return static_cast<bool>(hess); }
};

/// Wraps a problem's gradient and counts evaluations; used to assert the
/// one-gradient-per-step cost contract.
class CountingGradient {
public:
    explicit CountingGradient(GradientFn g) : g_(std::move(g)) {}

    Vec operator()(const Vec& x) {
        ++calls_;
        return g_(x);
    }

    GradientFn fn() {
        return [this](const Vec& x) { return (*this)(x); };
    }

    std::int64_t calls() const { return calls_; }
    void reset() { calls_ = 0; }

private:
    GradientFn g_;
    std::int64_t calls_ = 0;
};

}  // namespace confopt
