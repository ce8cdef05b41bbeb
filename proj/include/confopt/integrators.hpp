#pragma once

#include <cmath>

#include "confopt/problem.hpp"
#include "confopt/types.hpp"

namespace confopt {

/// Separable Hamiltonian H(x,p) = T(p) + f(x) with classical kinetic energy
/// ||p||^2/(2m) when c == +inf, relativistic c*sqrt(||p||^2 + m^2 c^2)
/// otherwise. Holds a non-owning reference to the potential.
struct SeparableHamiltonian {
    const Problem* potential = nullptr;
    double m = 1.0;
    double c = kInfinity;

    SeparableHamiltonian(const Problem& problem, double m_ = 1.0, double c_ = kInfinity)
        : potential(&problem), m(m_), c(c_) {
        if (!(m > 0.0)) throw ValidationError("SeparableHamiltonian: m must be > 0");
        if (!(c > 0.0)) throw ValidationError("SeparableHamiltonian: c must be > 0");
    }

    bool classical() const { return std::isinf(c); }

    double kinetic(const Vec& p) const {
        if (classical()) return p.squaredNorm() / (2.0 * m);
        return c * std::sqrt(p.squaredNorm() + m * m * c * c);
    }

    /// dX/dt = grad T(p); bounded by c in the relativistic case.
    Vec kinetic_grad(const Vec& p) const {
        if (classical()) return p / m;
        return (c / std::sqrt(p.squaredNorm() + m * m * c * c)) * p;
    }

    double potential_value(const Vec& x) const { return potential->f(x); }
    Vec potential_grad(const Vec& x) const { return potential->grad(x); }
};

double hamiltonian_value(const SeparableHamiltonian& H, const PhaseState& z);

/// Dissipative symplectic Euler: P = e^{-gamma h} p - h grad f(x),
/// X = x + h grad T(P). First order, conformal symplectic.
PhaseState conformal_euler_step(const SeparableHamiltonian& H, const PhaseState& z,
                                double h, double gamma);

/// Dissipative leapfrog (half-kick splitting of the damping around a
/// symmetric drift-kick-drift core). Second order, conformal symplectic.
PhaseState conformal_leapfrog_step(const SeparableHamiltonian& H, const PhaseState& z,
                                   double h, double gamma);

/// Exact flow of the damping part: x unchanged, p scaled by e^{-gamma h}.
PhaseState dissipative_flow_exact(const PhaseState& z, double h, double gamma);

}  // namespace confopt
