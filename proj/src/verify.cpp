#include "confopt/verify.hpp"

#include <Eigen/LU>
#include <cmath>
#include <random>
#include <sstream>

#include "confopt/diagnostics.hpp"
#include "confopt/problems.hpp"
#include "confopt/stability.hpp"

namespace confopt {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Vec random_phase_point(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec z(2 * n);
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = gauss(rng);
    return z;
}

CheckResult check_conformal_symplecticity() {
    const double h = 0.1, gamma = 1.0, m = 1.0, c = 2.0;
    const double fd = 1e-5, tol = 1e-5;
    std::mt19937_64 rng(20201215);

    std::vector<Problem> problems;
    problems.push_back(make_correlated_quadratic(2));
    problems.push_back(make_correlated_quadratic(10));
    problems.push_back(make_rosenbrock(2));

    double worst = 0.0;
    for (const auto& problem : problems) {
        SeparableHamiltonian Hc(problem, m, kInfinity);
        SeparableHamiltonian Hr(problem, m, c);
        PhysicalParams rel(h, gamma, m, c);
        std::vector<PhaseMap> maps{
            euler_phase_map(Hc, h, gamma),            // heavy ball in phase space
            leapfrog_phase_map(Hc, h, gamma),
            rgd_phase_map(problem, rel, 1.0),
            relativistic_euler_phase_map(problem, rel),
        };
        for (const auto& map : maps) {
            for (int trial = 0; trial < 20; ++trial) {
                const Vec z = random_phase_point(rng, problem.dim);
                const Mat J = numerical_jacobian(map, z, fd);
                worst = std::max(worst, conformal_residual(J, gamma, h));
            }
        }
    }
    return {"conformal symplecticity (CM, leapfrog, RGD a=1, relativistic Euler)", worst <= tol,
            "max residual " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

CheckResult check_nag_contraction() {
    const double lambda = 1.0, m = 1.0, gamma = 1.0, h = 0.1;
    Problem quad = make_scaled_quadratic(lambda, 1);
    PhysicalParams phys(h, gamma, m);
    const Vec z = (Vec(2) << 1.0, 0.5).finished();
    const Mat J = numerical_jacobian(nag_phase_map(quad, phys), z, 1e-5);
    const double det = J.determinant();
    const double expected = nag_contraction_factor(lambda, m, gamma, h);
    const double rel_err = std::abs(det - expected) / std::abs(expected);
    const double residual = conformal_residual(J, gamma, h);
    const bool ok = rel_err <= 1e-6 && residual >= 5e-3;
    return {"NAG non-symplecticity and contraction factor", ok,
            "det rel err " + fmt(rel_err) + ", residual " + fmt(residual)};
}

CheckResult check_order_of_accuracy() {
    const double gamma = 1.0, m = 1.0, c = 2.0;
    Problem quad = make_scaled_quadratic(1.0, 1);
    const Vec z0 = (Vec(2) << 0.8, 0.5).finished();
    const auto hs = default_order_steps();

    SeparableHamiltonian Hc(quad, m, kInfinity);
    SeparableHamiltonian Hr(quad, m, c);
    const OdeRhs classical = classical_rhs(quad, m, gamma);
    const OdeRhs relativistic = relativistic_rhs(quad, m, c, gamma);

    auto euler_family = [&](const Vec& z, double h) {
        return euler_phase_map(Hc, h, gamma)(z);
    };
    auto leap_family = [&](const Vec& z, double h) {
        return leapfrog_phase_map(Hc, h, gamma)(z);
    };
    auto nag_family = [&](const Vec& z, double h) {
        return nag_phase_map(quad, PhysicalParams(h, gamma, m))(z);
    };
    auto rgd_family = [&](const Vec& z, double h) {
        return rgd_phase_map(quad, PhysicalParams(h, gamma, m, c), 1.0)(z);
    };

    const double euler_slope = estimate_order(euler_family, classical, z0, hs, 1).slope;
    const double nag_slope = estimate_order(nag_family, classical, z0, hs, 1).slope;
    const double leap_slope = estimate_order(leap_family, classical, z0, hs, 2).slope;
    const double rgd_slope = estimate_order(rgd_family, relativistic, z0, hs, 2).slope;

    const bool ok = std::abs(euler_slope - 2.0) <= 0.15 && std::abs(nag_slope - 2.0) <= 0.15 &&
                    std::abs(leap_slope - 3.0) <= 0.15 && std::abs(rgd_slope - 3.0) <= 0.15;
    return {"order of accuracy (Euler 2, NAG 2, leapfrog 3, RGD 3)", ok,
            "slopes: euler " + fmt(euler_slope) + ", nag " + fmt(nag_slope) + ", leapfrog " +
                fmt(leap_slope) + ", rgd " + fmt(rgd_slope)};
}

CheckResult check_shadow_systems() {
    const double gamma = 1.0, m = 1.0;
    Problem quad = make_scaled_quadratic(1.0, 1);
    const PhaseState z0((Vec(1) << 0.8).finished(), (Vec(1) << 0.5).finished());
    const auto hs = default_order_steps();
    PhysicalParams phys(0.1, gamma, m);

    const double nag_slope = shadow_order_check(Method::NAG, z0, quad, phys, hs).slope;
    const double cm_slope = shadow_order_check(Method::CM, z0, quad, phys, hs).slope;

    // The shadow Hamiltonian must generate the heavy-ball modified system
    // through the damped Hamilton equations, checked by finite differences.
    double worst_gen = 0.0;
    Problem booth = make_booth();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        const Vec z = random_phase_point(rng, booth.dim);
        const PhaseState state = PhaseState::from_stacked(z);
        const PhysicalParams ph(0.05, gamma, m);
        const Eigen::Index n = booth.dim;
        Vec grad_H(2 * n);
        for (Eigen::Index i = 0; i < 2 * n; ++i) {
            Vec zp = z, zm = z;
            const double step = 1e-4;  // quadratic energy: FD exact, step limits roundoff
            zp[i] += step;
            zm[i] -= step;
            grad_H[i] = (shadow_hamiltonian_value(PhaseState::from_stacked(zp), booth, ph) -
                         shadow_hamiltonian_value(PhaseState::from_stacked(zm), booth, ph)) /
                        (2.0 * step);
        }
        Vec rhs_from_shadow(2 * n);
        rhs_from_shadow.head(n) = grad_H.tail(n);                         // dx/dt =  dH/dp
        rhs_from_shadow.tail(n) = -grad_H.head(n) - gamma * state.p;      // dp/dt = -dH/dx - gamma p
        const Vec rhs_direct = cm_modified_rhs(booth, m, gamma, ph.h)(z);
        worst_gen = std::max(worst_gen, (rhs_from_shadow - rhs_direct).cwiseAbs().maxCoeff());
    }

    const bool ok = std::abs(nag_slope - 3.0) <= 0.2 && std::abs(cm_slope - 3.0) <= 0.2 &&
                    worst_gen <= 1e-8;
    return {"shadow systems (NAG and CM slopes 3, shadow Hamiltonian generates the flow)", ok,
            "slopes: nag " + fmt(nag_slope) + ", cm " + fmt(cm_slope) + "; generator residual " +
                fmt(worst_gen)};
}

CheckResult check_stability_thresholds() {
    const double m = 1.0, lambda = 1.0;
    double worst_rel = 0.0;
    for (Method method : {Method::CM, Method::NAG, Method::RGD}) {
        for (double mu : {0.5, 0.9, 0.99}) {
            const double analytic = analytic_threshold(StabilityQuery(method, mu, m, lambda));
            const double empirical = empirical_threshold(method, mu, m, lambda, 1e-8);
            worst_rel = std::max(worst_rel, std::abs(empirical - analytic) / analytic);
        }
    }

    bool ordered = true;
    for (int i = 0; i < 100; ++i) {
        const double mu = 0.005 + 0.989 * i / 99.0;
        const double cm = analytic_threshold(StabilityQuery(Method::CM, mu, m, lambda));
        const double nag = analytic_threshold(StabilityQuery(Method::NAG, mu, m, lambda));
        const double rgd = analytic_threshold(StabilityQuery(Method::RGD, mu, m, lambda));
        if (!(nag < cm && cm < rgd)) ordered = false;
    }

    double worst_det = 0.0;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> hdist(0.01, 1.5), gdist(0.1, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double h = hdist(rng), gamma = gdist(rng);
        const double mu = std::exp(-gamma * h);
        const double dcm = transition_matrix(Method::CM, h, gamma, m, lambda).determinant();
        const double dnag = transition_matrix(Method::NAG, h, gamma, m, lambda).determinant();
        const double drgd = transition_matrix(Method::RGD, h, gamma, m, lambda).determinant();
        worst_det = std::max({worst_det, std::abs(dcm - mu),
                              std::abs(dnag - mu * (1.0 - h * h * lambda / m)),
                              std::abs(drgd - mu)});
    }

    const bool ok = worst_rel <= 1e-3 && ordered && worst_det <= 1e-12;
    return {"stability thresholds, ordering, determinant identities", ok,
            "max rel threshold err " + fmt(worst_rel) + ", ordered " +
                (ordered ? "yes" : "no") + ", max det err " + fmt(worst_det)};
}

CheckResult check_eigenvalue_geometry() {
    const double gamma = 1.0, m = 1.0, lambda = 1.0;
    double worst = 0.0;
    int complex_count = 0;
    for (int i = 0; i < 50; ++i) {
        const double h = 0.3 + 0.69 * i / 49.0;  // stays below h = 1 where NAG degenerates
        const double mu = std::exp(-gamma * h);

        const auto [c1, c2] = eigenvalues_2x2(transition_matrix(Method::CM, h, gamma, m, lambda));
        const auto [n1, n2] = eigenvalues_2x2(transition_matrix(Method::NAG, h, gamma, m, lambda));
        const auto [r1, r2] = eigenvalues_2x2(transition_matrix(Method::RGD, h, gamma, m, lambda));
        if (std::abs(c1.imag()) == 0.0 || std::abs(n1.imag()) == 0.0) continue;
        ++complex_count;

        const double radius_sym = std::exp(-gamma * h / 2.0);  // sqrt(mu)
        worst = std::max({worst, std::abs(std::abs(c1) - radius_sym),
                          std::abs(std::abs(c2) - radius_sym)});
        if (std::abs(r1.imag()) != 0.0)
            worst = std::max({worst, std::abs(std::abs(r1) - radius_sym),
                              std::abs(std::abs(r2) - radius_sym)});

        const double c0 = 1.0 / (std::exp(gamma * h) + 1.0);  // mu/(1+mu)
        worst = std::max({worst, std::abs(std::abs(n1 - c0) - c0),
                          std::abs(std::abs(n2 - c0) - c0)});
        (void)mu;
    }
    const bool ok = worst <= 1e-10 && complex_count >= 50;
    return {"eigenvalue geometry (symplectic circle, NAG displaced circle)", ok,
            "max deviation " + fmt(worst) + " over " + std::to_string(complex_count) +
                " complex-spectrum step sizes"};
}

}  // namespace

std::vector<CheckResult> verify_structural() {
    return {check_conformal_symplecticity(), check_nag_contraction(), check_order_of_accuracy(),
            check_shadow_systems(), check_stability_thresholds(), check_eigenvalue_geometry()};
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace confopt
