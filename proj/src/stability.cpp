#include "confopt/stability.hpp"

#include <cmath>

namespace confopt {

Eigen::Matrix2d transition_matrix(Method method, double h, double gamma, double m,
                                  double lambda) {
    const double mu = std::exp(-gamma * h);
    Eigen::Matrix2d T;
    switch (method) {
        case Method::CM:
            T << 1.0 - h * h * lambda / m, (h / m) * mu,
                 -h * lambda, mu;
            return T;
        case Method::NAG: {
            const double u = 1.0 - h * h * lambda / m;
            T << u, (h / m) * mu * u,
                 -h * lambda, mu * u;
            return T;
        }
        case Method::RGD: {
            const double u = 1.0 - h * h * lambda / (2.0 * m);
            const double d = std::exp(-gamma * h / 2.0);
            T << u, (h / (2.0 * m)) * d * (2.0 - h * h * lambda / (2.0 * m)),
                 -h * lambda * d, mu * u;
            return T;
        }
        default:
            throw ValidationError("transition_matrix: only CM, NAG, RGD have linear forms");
    }
}

std::pair<std::complex<double>, std::complex<double>> eigenvalues_2x2(const Eigen::Matrix2d& T) {
    const double tr = T(0, 0) + T(1, 1);
    const double det = T(0, 0) * T(1, 1) - T(0, 1) * T(1, 0);
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

double spectral_radius(const Eigen::Matrix2d& T) {
    const auto [e1, e2] = eigenvalues_2x2(T);
    return std::max(std::abs(e1), std::abs(e2));
}

double analytic_threshold(const StabilityQuery& q) {
    switch (q.method) {
        case Method::CM:
            return std::sqrt(2.0 * q.m * (1.0 + q.mu) / q.lambda);
        case Method::NAG:
            return std::sqrt(2.0 * q.m * (1.0 + q.mu) / (q.lambda * (1.0 + 2.0 * q.mu)));
        case Method::RGD:
            return 2.0 * std::sqrt(q.m / q.lambda);
        default:
            throw ValidationError("analytic_threshold: only CM, NAG, RGD");
    }
}

double empirical_threshold(Method method, double mu, double m, double lambda, double tol) {
    if (!(tol > 0.0)) throw ValidationError("empirical_threshold: tol must be > 0");
    StabilityQuery q(method, mu, m, lambda);
    auto stable = [&](double h) {
        const double gamma = -std::log(mu) / h;  // keep mu fixed per candidate h
        return spectral_radius(transition_matrix(method, h, gamma, m, lambda)) <= 1.0;
    };
    double lo = 1e-6;
    double hi = 10.0 * analytic_threshold(StabilityQuery(Method::CM, mu, m, lambda));
    if (!stable(lo) || stable(hi))
        throw std::runtime_error("empirical_threshold: bisection bracket failure");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace confopt
