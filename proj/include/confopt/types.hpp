#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace confopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when a constructor or conversion receives out-of-range fields.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default magnitude beyond which an iterate counts as diverged.
constexpr double kDivergenceBound = 1e12;

inline bool diverged(const Vec& x, double bound = kDivergenceBound) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || std::abs(x[i]) > bound) return true;
    }
    return false;
}

/// Algorithmic state (x_k, v_k) of the momentum-method family.
struct AlgState {
    Vec x;
    Vec v;
    std::int64_t k = 0;

    AlgState() = default;
    AlgState(Vec x_, Vec v_, std::int64_t k_ = 0)
        : x(std::move(x_)), v(std::move(v_)), k(k_) {
        if (x.size() != v.size())
            throw ValidationError("AlgState: dim(x) != dim(v)");
        if (k < 0) throw ValidationError("AlgState: negative iteration counter");
    }

    static AlgState at_rest(Vec x_) {
        Vec v = Vec::Zero(x_.size());
        return AlgState(std::move(x_), std::move(v), 0);
    }
};

/// Phase-space state (x, p) at time t = k*h.
struct PhaseState {
    Vec x;
    Vec p;
    double t = 0.0;

    PhaseState() = default;
    PhaseState(Vec x_, Vec p_, double t_ = 0.0)
        : x(std::move(x_)), p(std::move(p_)), t(t_) {
        if (x.size() != p.size())
            throw ValidationError("PhaseState: dim(x) != dim(p)");
    }

    Eigen::Index dim() const { return x.size(); }

    /// Stacked [x; p] vector, the z of the symplectic-form machinery.
    Vec stacked() const {
        Vec z(2 * x.size());
        z << x, p;
        return z;
    }

    static PhaseState from_stacked(const Vec& z, double t = 0.0) {
        const Eigen::Index n = z.size() / 2;
        return PhaseState(z.head(n), z.tail(n), t);
    }
};

/// Algorithmic parameters (epsilon, mu, delta, alpha) of the RGD family.
struct OptimizerParams {
    double epsilon = 1e-3;  // learning rate, > 0
    double mu = 0.9;        // momentum factor, in (0,1)
    double delta = 0.0;     // relativistic normalization strength, >= 0
    double alpha = 1.0;     // symplectic/extra-damped interpolation, in [0,1]

    OptimizerParams() = default;
    OptimizerParams(double eps, double mu_, double delta_ = 0.0, double alpha_ = 1.0)
        : epsilon(eps), mu(mu_), delta(delta_), alpha(alpha_) {
        validate();
    }

    void validate() const {
        if (!(epsilon > 0.0)) throw ValidationError("OptimizerParams: epsilon must be > 0");
        if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("OptimizerParams: mu must be in (0,1)");
        if (!(delta >= 0.0)) throw ValidationError("OptimizerParams: delta must be >= 0");
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("OptimizerParams: alpha must be in [0,1]");
    }
};

/// Continuous-time parameters (h, gamma, m, c). c == +inf selects the
/// classical kinetic energy.
struct PhysicalParams {
    double h = 0.1;
    double gamma = 1.0;
    double m = 1.0;
    double c = kInfinity;

    PhysicalParams() = default;
    PhysicalParams(double h_, double gamma_, double m_ = 1.0, double c_ = kInfinity)
        : h(h_), gamma(gamma_), m(m_), c(c_) {
        validate();
    }

    void validate() const {
        if (!(h > 0.0)) throw ValidationError("PhysicalParams: h must be > 0");
        if (!(gamma >= 0.0)) throw ValidationError("PhysicalParams: gamma must be >= 0");
        if (!(m > 0.0)) throw ValidationError("PhysicalParams: m must be > 0");
        if (!(c > 0.0)) throw ValidationError("PhysicalParams: c must be > 0");
    }

    bool classical() const { return std::isinf(c); }
};

/// Per-iteration record of a run. Sequence lengths are iterations + 1
/// (the initial point is recorded).
struct Trace {
    std::vector<AlgState> states;
    std::vector<double> fvals;
    std::vector<double> gradnorms;
    bool diverged = false;
    double wallclock = 0.0;
    bool grad_tol_hit = false;
    bool f_tol_hit = false;

    std::size_t iterations() const { return states.empty() ? 0 : states.size() - 1; }

    double best_f() const {
        double best = kInfinity;
        for (double f : fvals)
            if (std::isfinite(f) && f < best) best = f;
        return best;
    }
};

/// Stopping rule for a run; whichever criterion fires first ends it.
struct StopCriteria {
    std::int64_t max_iters = 1000;
    double grad_tol = 0.0;
    double f_tol = 0.0;
    double divergence_bound = kDivergenceBound;

    StopCriteria() = default;
    StopCriteria(std::int64_t max_iters_, double grad_tol_ = 0.0, double f_tol_ = 0.0,
                 double divergence_bound_ = kDivergenceBound)
        : max_iters(max_iters_), grad_tol(grad_tol_), f_tol(f_tol_),
          divergence_bound(divergence_bound_) {
        validate();
    }

    void validate() const {
        if (max_iters < 0) throw ValidationError("StopCriteria: max_iters must be >= 0");
        if (grad_tol < 0.0 || f_tol < 0.0)
            throw ValidationError("StopCriteria: tolerances must be >= 0");
        if (!(divergence_bound > 0.0))
            throw ValidationError("StopCriteria: divergence_bound must be > 0");
    }
};

// Parameter correspondences between the algorithmic picture (epsilon, mu,
// delta) and the physical picture (h, gamma, m, c). Each pair of maps is a
// mutual inverse on its domain.

namespace detail {
inline void require_momentum(double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw ValidationError("parameter map: mu must be in (0,1)");
}
}  // namespace detail

/// Heavy-ball correspondence: epsilon = h^2/m, mu = e^{-gamma h}.
inline PhysicalParams cm_params_to_physical(const OptimizerParams& p, double m = 1.0) {
    if (p.delta != 0.0)
        throw ValidationError("cm_params_to_physical: classical map requires delta == 0");
    detail::require_momentum(p.mu);
    if (!(m > 0.0)) throw ValidationError("cm_params_to_physical: m must be > 0");
    const double h = std::sqrt(p.epsilon * m);
    return PhysicalParams(h, -std::log(p.mu) / h, m, kInfinity);
}

inline OptimizerParams cm_physical_to_params(const PhysicalParams& phys) {
    if (!phys.classical())
        throw ValidationError("cm_physical_to_params: requires c == +inf");
    return OptimizerParams(phys.h * phys.h / phys.m, std::exp(-phys.gamma * phys.h), 0.0, 1.0);
}

/// Leapfrog/NAG correspondence: epsilon = h^2/(2m).
inline PhysicalParams nag_params_to_physical(const OptimizerParams& p, double m = 1.0) {
    if (p.delta != 0.0)
        throw ValidationError("nag_params_to_physical: classical map requires delta == 0");
    detail::require_momentum(p.mu);
    if (!(m > 0.0)) throw ValidationError("nag_params_to_physical: m must be > 0");
    const double h = std::sqrt(2.0 * p.epsilon * m);
    return PhysicalParams(h, -std::log(p.mu) / h, m, kInfinity);
}

inline OptimizerParams nag_physical_to_params(const PhysicalParams& phys) {
    if (!phys.classical())
        throw ValidationError("nag_physical_to_params: requires c == +inf");
    return OptimizerParams(phys.h * phys.h / (2.0 * phys.m), std::exp(-phys.gamma * phys.h),
                           0.0, 0.0);
}

/// RGD correspondence: epsilon = h^2/(2m), delta = 4/(c^2 h^2).
inline PhysicalParams rgd_params_to_physical(const OptimizerParams& p, double m = 1.0) {
    detail::require_momentum(p.mu);
    if (!(m > 0.0)) throw ValidationError("rgd_params_to_physical: m must be > 0");
    if (!(p.delta >= 0.0)) throw ValidationError("rgd_params_to_physical: delta must be >= 0");
    const double h = std::sqrt(2.0 * p.epsilon * m);
    const double c = p.delta == 0.0 ? kInfinity : 2.0 / (h * std::sqrt(p.delta));
    return PhysicalParams(h, -std::log(p.mu) / h, m, c);
}

inline OptimizerParams rgd_physical_to_params(const PhysicalParams& phys, double alpha = 1.0) {
    const double h = phys.h;
    const double delta = phys.classical() ? 0.0 : 4.0 / (phys.c * phys.c * h * h);
    return OptimizerParams(h * h / (2.0 * phys.m), std::exp(-phys.gamma * h), delta, alpha);
}

}  // namespace confopt
