#include "confopt/optimizers.hpp"

#include <chrono>
#include <cmath>

namespace confopt {

std::string method_name(Method m) {
    switch (m) {
        case Method::GD: return "gd";
        case Method::CM: return "cm";
        case Method::NAG: return "nag";
        case Method::NAGSeq: return "nag_seq";
        case Method::RGD: return "rgd";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "gd") return Method::GD;
    if (name == "cm") return Method::CM;
    if (name == "nag") return Method::NAG;
    if (name == "nag_seq") return Method::NAGSeq;
    if (name == "rgd") return Method::RGD;
    throw ValidationError("unknown method: " + name);
}

AlgState cm_step(const AlgState& s, const OptimizerParams& p, const Vec& grad) {
    Vec v = p.mu * s.v - p.epsilon * grad;
    Vec x = s.x + v;
    return AlgState(std::move(x), std::move(v), s.k + 1);
}

AlgState nag_step(const AlgState& s, const OptimizerParams& p, const GradientFn& gradfn) {
    Vec v = p.mu * s.v - p.epsilon * gradfn(s.x + p.mu * s.v);
    Vec x = s.x + v;
    return AlgState(std::move(x), std::move(v), s.k + 1);
}

PhaseState nag_phase_step(const PhaseState& z, const PhysicalParams& phys,
                          const GradientFn& gradfn) {
    const double mu = std::exp(-phys.gamma * phys.h);
    Vec x_mid = z.x + (phys.h / phys.m) * mu * z.p;
    Vec p_next = mu * z.p - phys.h * gradfn(x_mid);
    Vec x_next = z.x + (phys.h / phys.m) * p_next;
    return PhaseState(std::move(x_next), std::move(p_next), z.t + phys.h);
}

AlgState nag_sequence_step(const AlgState& s, std::int64_t k, double epsilon,
                           const GradientFn& gradfn) {
    const double mu_k = k >= 1 ? static_cast<double>(k - 1) / static_cast<double>(k + 2) : 0.0;
    Vec y = s.x + mu_k * s.v;
    Vec x = y - epsilon * gradfn(y);
    Vec v = x - s.x;
    return AlgState(std::move(x), std::move(v), k + 1);
}

NesterovSequence::NesterovSequence(Vec x0, double epsilon)
    : x_(x0), x_prev_(x0), y_(std::move(x0)), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("NesterovSequence: epsilon must be > 0");
}

double NesterovSequence::momentum_coefficient() const {
    return static_cast<double>(k_) / static_cast<double>(k_ + 3);
}

void NesterovSequence::step(const GradientFn& gradfn) {
    Vec x_next = y_ - epsilon_ * gradfn(y_);
    y_ = x_next + momentum_coefficient() * (x_next - x_);
    x_prev_ = x_;
    x_ = std::move(x_next);
    ++k_;
}

AlgState rgd_step(const AlgState& s, const OptimizerParams& p, const GradientFn& gradfn) {
    const double sqmu = std::sqrt(p.mu);
    Vec x_mid = s.x + sqmu / std::sqrt(p.mu * p.delta * s.v.squaredNorm() + 1.0) * s.v;
    Vec v_mid = sqmu * s.v - p.epsilon * gradfn(x_mid);
    Vec x = p.alpha * x_mid + (1.0 - p.alpha) * s.x +
            v_mid / std::sqrt(p.delta * v_mid.squaredNorm() + 1.0);
    Vec v = sqmu * v_mid;
    return AlgState(std::move(x), std::move(v), s.k + 1);
}

PhaseState rgd_phase_step(const PhaseState& z, const PhysicalParams& phys, double alpha,
                          const GradientFn& gradfn) {
    const double h = phys.h, m = phys.m, c = phys.c;
    const double d = std::exp(-phys.gamma * h / 2.0);
    Vec p_half = d * z.p;
    Vec x_mid, x_next;
    Vec p_mid;
    auto drift = [&](const Vec& p) -> Vec {
        if (phys.classical()) return (h / (2.0 * m)) * p;
        return (h * c / 2.0) / std::sqrt(p.squaredNorm() + m * m * c * c) * p;
    };
    x_mid = z.x + drift(p_half);
    p_mid = p_half - h * gradfn(x_mid);
    x_next = alpha * x_mid + (1.0 - alpha) * z.x + drift(p_mid);
    Vec p_next = d * p_mid;
    return PhaseState(std::move(x_next), std::move(p_next), z.t + h);
}

PhaseState relativistic_euler_step(const PhaseState& z, const PhysicalParams& phys,
                                   const GradientFn& gradfn) {
    const double h = phys.h, m = phys.m, c = phys.c;
    Vec p_next = std::exp(-phys.gamma * h) * z.p - h * gradfn(z.x);
    Vec x_next;
    if (phys.classical())
        x_next = z.x + (h / m) * p_next;
    else
        x_next = z.x + (h * c) / std::sqrt(p_next.squaredNorm() + m * m * c * c) * p_next;
    return PhaseState(std::move(x_next), std::move(p_next), z.t + phys.h);
}

AlgState gd_step(const AlgState& s, double epsilon, const Vec& grad) {
    Vec x = s.x - epsilon * grad;
    Vec v = x - s.x;
    return AlgState(std::move(x), std::move(v), s.k + 1);
}

AlgState take_step(Method method, const AlgState& s, const OptimizerParams& params,
                   const GradientFn& gradfn, std::int64_t k) {
    switch (method) {
        case Method::GD: return gd_step(s, params.epsilon, gradfn(s.x));
        case Method::CM: return cm_step(s, params, gradfn(s.x));
        case Method::NAG: return nag_step(s, params, gradfn);
        case Method::NAGSeq: return nag_sequence_step(s, k, params.epsilon, gradfn);
        case Method::RGD: return rgd_step(s, params, gradfn);
    }
    throw ValidationError("take_step: unknown method");
}

Trace run(Method method, const Problem& problem, const OptimizerParams& params,
          const AlgState& init, const StopCriteria& stop) {
    if (init.x.size() != problem.dim)
        throw ValidationError("run: init dimension does not match problem");
    stop.validate();

    const auto t0 = std::chrono::steady_clock::now();
    Trace trace;
    AlgState s = init;

    auto record = [&](const AlgState& state, double f, double gnorm) {
        trace.states.push_back(state);
        trace.fvals.push_back(f);
        trace.gradnorms.push_back(gnorm);
    };

    Vec g = problem.grad(s.x);
    record(s, problem.f(s.x), g.norm());

    for (std::int64_t k = 0; k < stop.max_iters; ++k) {
        if (stop.grad_tol > 0.0 && trace.gradnorms.back() <= stop.grad_tol) {
            trace.grad_tol_hit = true;
            break;
        }
        if (stop.f_tol > 0.0 && trace.fvals.back() <= stop.f_tol) {
            trace.f_tol_hit = true;
            break;
        }
        switch (method) {
            case Method::GD: s = gd_step(s, params.epsilon, g); break;
            case Method::CM: s = cm_step(s, params, g); break;
            case Method::NAG: s = nag_step(s, params, problem.grad); break;
            case Method::NAGSeq: s = nag_sequence_step(s, k, params.epsilon, problem.grad); break;
            case Method::RGD: s = rgd_step(s, params, problem.grad); break;
        }
        if (diverged(s.x, stop.divergence_bound) || diverged(s.v, stop.divergence_bound)) {
            trace.diverged = true;
            record(s, std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN());
            break;
        }
        g = problem.grad(s.x);
        record(s, problem.f(s.x), g.norm());
        if (!std::isfinite(trace.fvals.back()) || !std::isfinite(trace.gradnorms.back())) {
            trace.diverged = true;
            break;
        }
    }

    trace.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

}  // namespace confopt
