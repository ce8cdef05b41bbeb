#pragma once

#include <functional>
#include <vector>

#include "confopt/integrators.hpp"
#include "confopt/optimizers.hpp"
#include "confopt/problem.hpp"
#include "confopt/types.hpp"

namespace confopt {

/// A map on stacked phase space z = [x; p].
using PhaseMap = std::function<Vec(const Vec&)>;

/// A one-parameter family of phase maps, indexed by the step size.
using PhaseMapFamily = std::function<Vec(const Vec&, double h)>;

/// Autonomous ODE right-hand side on stacked phase space.
using OdeRhs = std::function<Vec(const Vec&)>;

struct JacobianReport {
    Mat J;
    double residual_conformal = 0.0;  // max-norm of J^T Omega J - e^{-gamma h} Omega
    double det_J = 0.0;
    double fd_step = 0.0;
};

struct OrderReport {
    std::vector<double> hs;
    std::vector<double> errors;
    double slope = 0.0;
    int claimed_order = 0;
    bool monotone = true;  // errors decrease with h; false flags a non-asymptotic regime
};

/// Central-difference Jacobian of `map` at z.
Mat numerical_jacobian(const PhaseMap& map, const Vec& z, double fd_step = 1e-5);

/// Max-abs entry of J^T Omega J - e^{-gamma h} Omega; zero for a conformal
/// symplectic map.
double conformal_residual(const Mat& J, double gamma, double h);

/// One-step symplectic-area factor of NAG on f = (lambda/2) x^2:
/// e^{-gamma h}(1 - h^2 lambda / m); equals det(T_NAG).
double nag_contraction_factor(double lambda, double m, double gamma, double h);

JacobianReport jacobian_report(const PhaseMap& map, const Vec& z, double gamma, double h,
                               double fd_step = 1e-5);

/// High-accuracy reference flow: classic RK4 with the substep count doubled
/// until two successive answers agree within tol.
Vec reference_solve(const OdeRhs& rhs, const Vec& z0, double T, double tol = 1e-13);

/// Least-squares log-log slope of the one-step error of the map family
/// against the reference flow of `rhs`, over the given step sizes.
OrderReport estimate_order(const PhaseMapFamily& map, const OdeRhs& rhs, const Vec& z0,
                           const std::vector<double>& hs, int claimed_order = 0);

/// Default ladder {0.1, 0.05, 0.025, 0.0125, 0.00625}.
std::vector<double> default_order_steps();

// ODE right-hand sides on stacked phase space.

/// xdot = p/m, pdot = -grad f(x) - gamma p.
OdeRhs classical_rhs(const Problem& problem, double m, double gamma);

/// xdot = c p / sqrt(||p||^2 + m^2 c^2), pdot = -grad f(x) - gamma p.
OdeRhs relativistic_rhs(const Problem& problem, double m, double c, double gamma);

/// Modified (shadow) system that NAG integrates to second order; needs the
/// problem's Hessian (finite differences of the gradient when absent).
OdeRhs nag_modified_rhs(const Problem& problem, double m, double gamma, double h);

/// Modified system for heavy ball; differs from the NAG one only in the sign
/// of the Hessian term in pdot.
OdeRhs cm_modified_rhs(const Problem& problem, double m, double gamma, double h);

/// One-step error of CM/NAG against their own modified systems; a slope of
/// about 3 confirms second-order shadowing.
OrderReport shadow_order_check(Method method, const PhaseState& z0, const Problem& problem,
                               const PhysicalParams& phys, const std::vector<double>& hs);

/// Shadow energy of the heavy-ball modified system:
/// ||p||^2/(2m) + f - (h gamma/(4m))||p||^2 - (h/(2m)) <grad f, p> + (h gamma/2) f.
double shadow_hamiltonian_value(const PhaseState& z, const Problem& problem,
                                const PhysicalParams& phys);

// Phase-map builders for the steppers, convenient for Jacobian and order tests.
PhaseMap euler_phase_map(const SeparableHamiltonian& H, double h, double gamma);
PhaseMap leapfrog_phase_map(const SeparableHamiltonian& H, double h, double gamma);
PhaseMap nag_phase_map(const Problem& problem, const PhysicalParams& phys);
PhaseMap rgd_phase_map(const Problem& problem, const PhysicalParams& phys, double alpha);
PhaseMap relativistic_euler_phase_map(const Problem& problem, const PhysicalParams& phys);
PhaseMap dissipative_flow_map(double h, double gamma);

/// Algorithmic-form steppers viewed as maps on stacked (x, v); the conformal
/// residual test applies to these as well (the v = const * p change of
/// variables rescales the symplectic form uniformly).
PhaseMap alg_step_map(Method method, const Problem& problem, const OptimizerParams& params);

}  // namespace confopt
