#pragma once

#include <cstdint>
#include <vector>

#include "confopt/optimizers.hpp"
#include "confopt/problem.hpp"

namespace confopt {

/// f(x) = (1/2) x^T Q x with Q_ij = rho^|i-j|; default n=50, rho=0.95.
/// Initial point is seeded Gaussian with variance 10 per coordinate.
Problem make_correlated_quadratic(int n = 50, double rho = 0.95, std::uint64_t seed = 7);

/// f(x) = (1/2) x^T Q x, Q = V^T D V with V a seeded random orthogonal matrix
/// and D uniform in [eig_lo, eig_hi]; default n=500.
Problem make_random_quadratic(int n = 500, double eig_lo = 1e-3, double eig_hi = 10.0,
                              std::uint64_t seed = 11);

/// f(x) = (lambda/2) ||x||^2; the linear-stability model problem.
Problem make_scaled_quadratic(double lambda, int n = 1);

Problem make_rosenbrock(int n = 100);
Problem make_booth();
Problem make_matyas();
Problem make_levi13();
Problem make_sum_squares(int n = 100);
Problem make_beale();
Problem make_chung_reynolds(int n = 50);
Problem make_quartic(int n = 50);
Problem make_schwefel(int n = 20);
Problem make_qing(int n = 100);
Problem make_zakharov(int n = 5);
Problem make_three_hump_camel();

/// The benchmark corpus at its default dimensions and initial points.
std::vector<Problem> corpus();

/// Look up a problem by name; accepts corpus names plus "corr_quad",
/// "random_quad", and "quad1d".
Problem problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

/// Central finite-difference check of the analytic gradient at x.
/// Returns the max relative deviation over coordinates.
double gradient_check(const Problem& problem, const Vec& x);

/// Same check for the Hessian against finite differences of the gradient.
double hessian_check(const Problem& problem, const Vec& x);

// ---- Matrix completion ----------------------------------------------------

/// Rank-r ground truth M = R S^T with a uniformly sampled observation mask.
struct MatCompInstance {
    Mat M;
    Mat mask;  // 0/1 observation indicator
    int n = 0;
    int r = 0;
    double s = 0.0;
    std::uint64_t seed = 0;

    std::int64_t observed() const { return static_cast<std::int64_t>(mask.sum() + 0.5); }
    std::int64_t degrees_of_freedom() const { return static_cast<std::int64_t>(r) * (2 * n - r); }
};

MatCompInstance matcomp_generate(int n, int r, double s, std::uint64_t seed);

struct MatCompGrad {
    double loss;
    Mat gradU;
    Mat gradV;
};

/// loss = ||P_Omega(M - U V^T)||_F^2 with its exact gradients.
MatCompGrad matcomp_loss_grad(const MatCompInstance& inst, const Mat& U, const Mat& V);

/// Alternating minimization: per outer iteration one optimizer step on U
/// (V fixed) then one on V (new U fixed); each factor keeps its own velocity.
Trace alternating_minimize(const MatCompInstance& inst, Method method,
                           const OptimizerParams& params, int iters,
                           std::uint64_t init_seed = 1);

}  // namespace confopt
