#pragma once

#include <string>

#include "confopt/problem.hpp"
#include "confopt/types.hpp"

namespace confopt {

enum class Method { GD, CM, NAG, NAGSeq, RGD };

std::string method_name(Method m);
Method parse_method(const std::string& name);

/// Heavy ball: v <- mu v - eps grad, x <- x + v.
AlgState cm_step(const AlgState& s, const OptimizerParams& p, const Vec& grad);

/// Nesterov: v <- mu v - eps grad(x + mu v), x <- x + v.
AlgState nag_step(const AlgState& s, const OptimizerParams& p, const GradientFn& gradfn);

/// Nesterov in phase space:
///   x_{k+1/2} = x + (h/m) e^{-gamma h} p
///   p' = e^{-gamma h} p - h grad f(x_{k+1/2})
///   x' = x + (h/m) p'
PhaseState nag_phase_step(const PhaseState& z, const PhysicalParams& phys,
                          const GradientFn& gradfn);

/// One step of the sequence-mu Nesterov recursion in (x, v) form with
/// v_k = x_k - x_{k-1}; the lookahead coefficient at state k is (k-1)/(k+2).
AlgState nag_sequence_step(const AlgState& s, std::int64_t k, double epsilon,
                           const GradientFn& gradfn);

/// Sequence-mu Nesterov in its native (x, y) two-sequence form. Keeps the
/// previous iterate internally so the two forms can be compared directly.
class NesterovSequence {
public:
    NesterovSequence(Vec x0, double epsilon);

    void step(const GradientFn& gradfn);

    const Vec& x() const { return x_; }
    const Vec& y() const { return y_; }
    std::int64_t k() const { return k_; }
    double momentum_coefficient() const;  // mu_{k+1} = k/(k+3)

    AlgState state() const { return AlgState(x_, x_ - x_prev_, k_); }

private:
    Vec x_, x_prev_, y_;
    double epsilon_;
    std::int64_t k_ = 0;
};

/// Relativistic gradient descent, one iteration:
///   x_{k+1/2} = x + sqrt(mu) (mu delta ||v||^2 + 1)^{-1/2} v
///   v_{k+1/2} = sqrt(mu) v - eps grad f(x_{k+1/2})
///   x'        = alpha x_{k+1/2} + (1-alpha) x + (delta ||v_{k+1/2}||^2 + 1)^{-1/2} v_{k+1/2}
///   v'        = sqrt(mu) v_{k+1/2}
AlgState rgd_step(const AlgState& s, const OptimizerParams& p, const GradientFn& gradfn);

/// RGD in phase space (leapfrog on the relativistic Hamiltonian with the
/// alpha interpolation on the final position update).
PhaseState rgd_phase_step(const PhaseState& z, const PhysicalParams& phys, double alpha,
                          const GradientFn& gradfn);

/// Dissipative symplectic Euler on the relativistic Hamiltonian:
///   p' = e^{-gamma h} p - h grad f(x),  x' = x + h c p'/sqrt(||p'||^2 + m^2 c^2).
PhaseState relativistic_euler_step(const PhaseState& z, const PhysicalParams& phys,
                                   const GradientFn& gradfn);

/// Plain gradient descent baseline: x <- x - eps grad.
AlgState gd_step(const AlgState& s, double epsilon, const Vec& grad);

/// Single-step dispatcher used by run() and the alternating-minimization
/// driver; k is the iteration index (needed by the sequence-mu form).
AlgState take_step(Method method, const AlgState& s, const OptimizerParams& params,
                   const GradientFn& gradfn, std::int64_t k);

/// Iterates `method` on `problem` until a stop criterion fires. Divergence
/// is recorded in the trace, never thrown.
Trace run(Method method, const Problem& problem, const OptimizerParams& params,
          const AlgState& init, const StopCriteria& stop);

}  // namespace confopt
