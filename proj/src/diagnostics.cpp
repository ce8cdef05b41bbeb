#include "confopt/diagnostics.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace confopt {

namespace {

Mat omega_matrix(Eigen::Index two_n) {
    const Eigen::Index n = two_n / 2;
    Mat O = Mat::Zero(two_n, two_n);
    O.block(0, n, n, n) = Mat::Identity(n, n);
    O.block(n, 0, n, n) = -Mat::Identity(n, n);
    return O;
}

double fit_slope(const std::vector<double>& hs, const std::vector<double>& errors) {
    const auto n = static_cast<double>(hs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        mx += std::log(hs[i]);
        my += std::log(errors[i]);
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double dx = std::log(hs[i]) - mx;
        num += dx * (std::log(errors[i]) - my);
        den += dx * dx;
    }
    return num / den;
}

Vec rk4_integrate(const OdeRhs& rhs, Vec z, double T, std::int64_t substeps) {
    const double h = T / static_cast<double>(substeps);
    for (std::int64_t i = 0; i < substeps; ++i) {
        Vec k1 = rhs(z);
        Vec k2 = rhs(z + (h / 2.0) * k1);
        Vec k3 = rhs(z + (h / 2.0) * k2);
        Vec k4 = rhs(z + h * k3);
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return z;
}

Mat hessian_of(const Problem& problem, const Vec& x) {
    if (problem.has_hessian()) return problem.hess(x);
    const Eigen::Index n = x.size();
    Mat H(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double step = 1e-6 * (1.0 + std::abs(x[i]));
        Vec xp = x, xm = x;
        xp[i] += step;
        xm[i] -= step;
        H.col(i) = (problem.grad(xp) - problem.grad(xm)) / (2.0 * step);
    }
    return 0.5 * (H + H.transpose()).eval();
}

}  // namespace

Mat numerical_jacobian(const PhaseMap& map, const Vec& z, double fd_step) {
    if (!(fd_step > 0.0)) throw ValidationError("numerical_jacobian: fd_step must be > 0");
    const Eigen::Index n = z.size();
    Mat J(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Vec zp = z, zm = z;
        zp[j] += fd_step;
        zm[j] -= fd_step;
        J.col(j) = (map(zp) - map(zm)) / (2.0 * fd_step);
    }
    if (!J.allFinite()) throw ValidationError("numerical_jacobian: non-finite entries");
    return J;
}

double conformal_residual(const Mat& J, double gamma, double h) {
    if (J.rows() != J.cols() || J.rows() % 2 != 0)
        throw ValidationError("conformal_residual: matrix must be square with even dimension");
    const Mat O = omega_matrix(J.rows());
    return (J.transpose() * O * J - std::exp(-gamma * h) * O).cwiseAbs().maxCoeff();
}

double nag_contraction_factor(double lambda, double m, double gamma, double h) {
    return std::exp(-gamma * h) * (1.0 - h * h * lambda / m);
}

JacobianReport jacobian_report(const PhaseMap& map, const Vec& z, double gamma, double h,
                               double fd_step) {
    JacobianReport report;
    report.J = numerical_jacobian(map, z, fd_step);
    report.residual_conformal = conformal_residual(report.J, gamma, h);
    report.det_J = report.J.determinant();
    report.fd_step = fd_step;
    return report;
}

Vec reference_solve(const OdeRhs& rhs, const Vec& z0, double T, double tol) {
    if (!(tol >= 1e-15)) throw ValidationError("reference_solve: tol too small");
    std::int64_t substeps = 8;
    Vec prev = rk4_integrate(rhs, z0, T, substeps);
    for (int iter = 0; iter < 20; ++iter) {
        substeps *= 2;
        Vec next = rk4_integrate(rhs, z0, T, substeps);
        if ((next - prev).norm() <= tol) return next;
        prev = std::move(next);
    }
    throw std::runtime_error("reference_solve: tolerance not met within substep budget");
}

std::vector<double> default_order_steps() { return {0.1, 0.05, 0.025, 0.0125, 0.00625}; }

OrderReport estimate_order(const PhaseMapFamily& map, const OdeRhs& rhs, const Vec& z0,
                           const std::vector<double>& hs, int claimed_order) {
    OrderReport report;
    report.hs = hs;
    report.claimed_order = claimed_order;
    for (double h : hs) {
        const Vec approx = map(z0, h);
        const Vec exact = reference_solve(rhs, z0, h, 1e-13);
        report.errors.push_back((approx - exact).norm());
    }
    for (std::size_t i = 1; i < report.errors.size(); ++i)
        if (report.errors[i] >= report.errors[i - 1]) report.monotone = false;
    report.slope = fit_slope(report.hs, report.errors);
    return report;
}

OdeRhs classical_rhs(const Problem& problem, double m, double gamma) {
    return [&problem, m, gamma](const Vec& z) -> Vec {
        const Eigen::Index n = z.size() / 2;
        Vec dz(z.size());
        dz.head(n) = z.tail(n) / m;
        dz.tail(n) = -problem.grad(z.head(n)) - gamma * z.tail(n);
        return dz;
    };
}

OdeRhs relativistic_rhs(const Problem& problem, double m, double c, double gamma) {
    return [&problem, m, c, gamma](const Vec& z) -> Vec {
        const Eigen::Index n = z.size() / 2;
        Vec dz(z.size());
        const Vec p = z.tail(n);
        dz.head(n) = c * p / std::sqrt(p.squaredNorm() + m * m * c * c);
        dz.tail(n) = -problem.grad(z.head(n)) - gamma * p;
        return dz;
    };
}

namespace {
OdeRhs modified_rhs(const Problem& problem, double m, double gamma, double h,
                    double hessian_sign) {
    return [&problem, m, gamma, h, hessian_sign](const Vec& z) -> Vec {
        const Eigen::Index n = z.size() / 2;
        const Vec x = z.head(n), p = z.tail(n);
        const Vec g = problem.grad(x);
        const Mat H = hessian_of(problem, x);
        Vec dz(z.size());
        dz.head(n) = p / m - (gamma * h / (2.0 * m)) * p - (h / (2.0 * m)) * g;
        dz.tail(n) = -g - gamma * p - (h * gamma / 2.0) * g + hessian_sign * (h / (2.0 * m)) * (H * p);
        return dz;
    };
}
}  // namespace

OdeRhs nag_modified_rhs(const Problem& problem, double m, double gamma, double h) {
    return modified_rhs(problem, m, gamma, h, -1.0);
}

OdeRhs cm_modified_rhs(const Problem& problem, double m, double gamma, double h) {
    return modified_rhs(problem, m, gamma, h, +1.0);
}

OrderReport shadow_order_check(Method method, const PhaseState& z0, const Problem& problem,
                               const PhysicalParams& phys, const std::vector<double>& hs) {
    if (method != Method::CM && method != Method::NAG)
        throw ValidationError("shadow_order_check: only CM and NAG have shadow systems here");
    OrderReport report;
    report.hs = hs;
    report.claimed_order = 2;
    SeparableHamiltonian H(problem, phys.m, kInfinity);
    for (double h : hs) {
        PhysicalParams ph(h, phys.gamma, phys.m, kInfinity);
        Vec approx;
        if (method == Method::CM)
            approx = conformal_euler_step(H, z0, h, phys.gamma).stacked();
        else
            approx = nag_phase_step(z0, ph, problem.grad).stacked();
        const OdeRhs rhs = method == Method::CM ? cm_modified_rhs(problem, phys.m, phys.gamma, h)
                                                : nag_modified_rhs(problem, phys.m, phys.gamma, h);
        const Vec exact = reference_solve(rhs, z0.stacked(), h, 1e-13);
        report.errors.push_back((approx - exact).norm());
    }
    for (std::size_t i = 1; i < report.errors.size(); ++i)
        if (report.errors[i] >= report.errors[i - 1]) report.monotone = false;
    report.slope = fit_slope(report.hs, report.errors);
    return report;
}

double shadow_hamiltonian_value(const PhaseState& z, const Problem& problem,
                                const PhysicalParams& phys) {
    const double h = phys.h, gamma = phys.gamma, m = phys.m;
    const double f = problem.f(z.x);
    const Vec g = problem.grad(z.x);
    return z.p.squaredNorm() / (2.0 * m) + f - (h * gamma / (4.0 * m)) * z.p.squaredNorm() -
           (h / (2.0 * m)) * g.dot(z.p) + (h * gamma / 2.0) * f;
}

PhaseMap euler_phase_map(const SeparableHamiltonian& H, double h, double gamma) {
    return [H, h, gamma](const Vec& z) -> Vec {
        return conformal_euler_step(H, PhaseState::from_stacked(z), h, gamma).stacked();
    };
}

PhaseMap leapfrog_phase_map(const SeparableHamiltonian& H, double h, double gamma) {
    return [H, h, gamma](const Vec& z) -> Vec {
        return conformal_leapfrog_step(H, PhaseState::from_stacked(z), h, gamma).stacked();
    };
}

PhaseMap nag_phase_map(const Problem& problem, const PhysicalParams& phys) {
    return [&problem, phys](const Vec& z) -> Vec {
        return nag_phase_step(PhaseState::from_stacked(z), phys, problem.grad).stacked();
    };
}

PhaseMap rgd_phase_map(const Problem& problem, const PhysicalParams& phys, double alpha) {
    return [&problem, phys, alpha](const Vec& z) -> Vec {
        return rgd_phase_step(PhaseState::from_stacked(z), phys, alpha, problem.grad).stacked();
    };
}

PhaseMap relativistic_euler_phase_map(const Problem& problem, const PhysicalParams& phys) {
    return [&problem, phys](const Vec& z) -> Vec {
        return relativistic_euler_step(PhaseState::from_stacked(z), phys, problem.grad).stacked();
    };
}

PhaseMap dissipative_flow_map(double h, double gamma) {
    return [h, gamma](const Vec& z) -> Vec {
        return dissipative_flow_exact(PhaseState::from_stacked(z), h, gamma).stacked();
    };
}

PhaseMap alg_step_map(Method method, const Problem& problem, const OptimizerParams& params) {
    if (method == Method::NAGSeq)
        throw ValidationError("alg_step_map: sequence-mu stepper is iteration dependent");
    return [method, &problem, params](const Vec& z) -> Vec {
        const Eigen::Index n = z.size() / 2;
        AlgState s(z.head(n), z.tail(n), 0);
        AlgState next = take_step(method, s, params, problem.grad, 0);
        Vec out(z.size());
        out << next.x, next.v;
        return out;
    };
}

}  // namespace confopt
