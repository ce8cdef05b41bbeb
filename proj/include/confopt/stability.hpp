#pragma once

#include <complex>
#include <utility>

#include "confopt/optimizers.hpp"
#include "confopt/types.hpp"

namespace confopt {

struct StabilityQuery {
    Method method = Method::CM;
    double mu = 0.9;
    double m = 1.0;
    double lambda = 1.0;

    StabilityQuery() = default;
    StabilityQuery(Method method_, double mu_, double m_ = 1.0, double lambda_ = 1.0)
        : method(method_), mu(mu_), m(m_), lambda(lambda_) {
        if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("StabilityQuery: mu must be in (0,1)");
        if (!(m > 0.0 && lambda > 0.0))
            throw ValidationError("StabilityQuery: m and lambda must be > 0");
    }
};

/// One-step transition matrix of the method on f = (lambda/2) x^2; RGD in
/// its classical-limit, alpha = 1 specialization.
Eigen::Matrix2d transition_matrix(Method method, double h, double gamma, double m,
                                  double lambda);

/// Closed-form complex-safe 2x2 spectral radius.
double spectral_radius(const Eigen::Matrix2d& T);

/// Both eigenvalues (closed form; complex pair when the discriminant is
/// negative).
std::pair<std::complex<double>, std::complex<double>> eigenvalues_2x2(const Eigen::Matrix2d& T);

/// Largest stable step size with mu held fixed (gamma = -ln(mu)/h tracks h).
/// Closed forms derived from rho(T) <= 1:
///   h_CM  = sqrt(2 m (1 + mu) / lambda)
///   h_NAG = sqrt(2 m (1 + mu) / (lambda (1 + 2 mu)))
///   h_RGD = 2 sqrt(m / lambda)
double analytic_threshold(const StabilityQuery& q);

/// Bisection on h of the predicate rho(T(h, gamma = -ln(mu)/h)) <= 1.
double empirical_threshold(Method method, double mu, double m, double lambda,
                           double tol = 1e-10);

}  // namespace confopt
