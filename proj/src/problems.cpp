#include "confopt/problems.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

namespace confopt {

namespace {

constexpr double kPi = std::numbers::pi;

Vec constant_vec(int n, double value) { return Vec::Constant(n, value); }

Problem quadratic_from_matrix(std::string name, Mat Q, Vec init) {
    Problem p;
    p.name = std::move(name);
    p.dim = Q.rows();
    auto Qs = std::make_shared<Mat>(std::move(Q));
    p.f = [Qs](const Vec& x) { return 0.5 * x.dot(*Qs * x); };
    p.grad = [Qs](const Vec& x) -> Vec { return *Qs * x; };
    p.hess = [Qs](const Vec&) -> Mat { return *Qs; };
    p.known_min = std::make_pair(Vec::Zero(p.dim).eval(), 0.0);
    p.init_default = std::move(init);
    p.domain_lo = constant_vec(static_cast<int>(p.dim), -100.0);
    p.domain_hi = constant_vec(static_cast<int>(p.dim), 100.0);
    return p;
}

}  // namespace

Problem make_correlated_quadratic(int n, double rho, std::uint64_t seed) {
    if (!(rho > 0.0 && rho < 1.0))
        throw ValidationError("make_correlated_quadratic: rho must be in (0,1)");
    Mat Q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Q(i, j) = std::pow(rho, std::abs(i - j));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(10.0));
    Vec init(n);
    for (int i = 0; i < n; ++i) init[i] = gauss(rng);
    return quadratic_from_matrix("corr_quad", std::move(Q), std::move(init));
}

Problem make_random_quadratic(int n, double eig_lo, double eig_hi, std::uint64_t seed) {
    if (!(eig_lo > 0.0 && eig_lo < eig_hi))
        throw ValidationError("make_random_quadratic: need 0 < eig_lo < eig_hi");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = gauss(rng);
    Eigen::HouseholderQR<Mat> qr(G);
    Mat V = qr.householderQ();
    std::uniform_real_distribution<double> unif(eig_lo, eig_hi);
    Vec d(n);
    for (int i = 0; i < n; ++i) d[i] = unif(rng);
    Mat Q = V.transpose() * d.asDiagonal() * V;
    Q = 0.5 * (Q + Q.transpose()).eval();  // enforce exact symmetry
    Vec init(n);
    for (int i = 0; i < n; ++i) init[i] = gauss(rng);
    return quadratic_from_matrix("random_quad", std::move(Q), std::move(init));
}

Problem make_scaled_quadratic(double lambda, int n) {
    Mat Q = lambda * Mat::Identity(n, n);
    return quadratic_from_matrix("quad1d", std::move(Q), constant_vec(n, 1.0));
}

Problem make_rosenbrock(int n) {
    Problem p;
    p.name = "rosenbrock";
    p.dim = n;
    p.f = [n](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            const double b = 1.0 - x[i];
            s += 100.0 * a * a + b * b;
        }
        return s;
    };
    p.grad = [n](const Vec& x) -> Vec {
        Vec g = Vec::Zero(n);
        for (int i = 0; i + 1 < n; ++i) {
            const double a = x[i + 1] - x[i] * x[i];
            g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
            g[i + 1] += 200.0 * a;
        }
        return g;
    };
    p.known_min = std::make_pair(constant_vec(n, 1.0), 0.0);
    Vec init(n);
    for (int i = 0; i < n; ++i) init[i] = (i % 2 == 0) ? 2.0 : -2.0;
    p.init_default = std::move(init);
    p.domain_lo = constant_vec(n, -2.048);
    p.domain_hi = constant_vec(n, 2.048);
    return p;
}

Problem make_booth() {
    Problem p;
    p.name = "booth";
    p.dim = 2;
    p.f = [](const Vec& v) {
        const double a = v[0] + 2.0 * v[1] - 7.0;
        const double b = 2.0 * v[0] + v[1] - 5.0;
        return a * a + b * b;
    };
    p.grad = [](const Vec& v) -> Vec {
        const double a = v[0] + 2.0 * v[1] - 7.0;
        const double b = 2.0 * v[0] + v[1] - 5.0;
        Vec g(2);
        g << 2.0 * a + 4.0 * b, 4.0 * a + 2.0 * b;
        return g;
    };
    p.hess = [](const Vec&) -> Mat {
        Mat H(2, 2);
        H << 10.0, 8.0, 8.0, 10.0;
        return H;
    };
    p.known_min = std::make_pair((Vec(2) << 1.0, 3.0).finished(), 0.0);
    p.init_default = (Vec(2) << 10.0, 10.0).finished();
    p.domain_lo = constant_vec(2, -10.0);
    p.domain_hi = constant_vec(2, 10.0);
    return p;
}

Problem make_matyas() {
    Mat Q(2, 2);
    Q << 0.52, -0.48, -0.48, 0.52;
    Problem p = quadratic_from_matrix("matyas", std::move(Q), (Vec(2) << 10.0, -7.0).finished());
    p.domain_lo = constant_vec(2, -10.0);
    p.domain_hi = constant_vec(2, 10.0);
    return p;
}

Problem make_levi13() {
    Problem p;
    p.name = "levi13";
    p.dim = 2;
    p.f = [](const Vec& v) {
        const double x = v[0], y = v[1];
        const double s3x = std::sin(3.0 * kPi * x);
        const double s3y = std::sin(3.0 * kPi * y);
        const double s2y = std::sin(2.0 * kPi * y);
        return s3x * s3x + (x - 1.0) * (x - 1.0) * (1.0 + s3y * s3y) +
               (y - 1.0) * (y - 1.0) * (1.0 + s2y * s2y);
    };
    p.grad = [](const Vec& v) -> Vec {
        const double x = v[0], y = v[1];
        const double s3y = std::sin(3.0 * kPi * y);
        const double s2y = std::sin(2.0 * kPi * y);
        Vec g(2);
        g[0] = 3.0 * kPi * std::sin(6.0 * kPi * x) + 2.0 * (x - 1.0) * (1.0 + s3y * s3y);
        g[1] = (x - 1.0) * (x - 1.0) * 3.0 * kPi * std::sin(6.0 * kPi * y) +
               2.0 * (y - 1.0) * (1.0 + s2y * s2y) +
               (y - 1.0) * (y - 1.0) * 2.0 * kPi * std::sin(4.0 * kPi * y);
        return g;
    };
    p.known_min = std::make_pair(constant_vec(2, 1.0), 0.0);
    p.init_default = (Vec(2) << 10.0, -10.0).finished();
    p.domain_lo = constant_vec(2, -10.0);
    p.domain_hi = constant_vec(2, 10.0);
    return p;
}

Problem make_sum_squares(int n) {
    Problem p;
    p.name = "sum_squares";
    p.dim = n;
    p.f = [n](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += (i + 1) * x[i] * x[i];
        return s;
    };
    p.grad = [n](const Vec& x) -> Vec {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = 2.0 * (i + 1) * x[i];
        return g;
    };
    p.hess = [n](const Vec&) -> Mat {
        Vec d(n);
        for (int i = 0; i < n; ++i) d[i] = 2.0 * (i + 1);
        return d.asDiagonal();
    };
    p.known_min = std::make_pair(Vec::Zero(n).eval(), 0.0);
    p.init_default = constant_vec(n, 10.0);
    p.domain_lo = constant_vec(n, -10.0);
    p.domain_hi = constant_vec(n, 10.0);
    return p;
}

Problem make_beale() {
    Problem p;
    p.name = "beale";
    p.dim = 2;
    p.f = [](const Vec& v) {
        const double x = v[0], y = v[1];
        const double a = 1.5 - x + x * y;
        const double b = 2.25 - x + x * y * y;
        const double c = 2.625 - x + x * y * y * y;
        return a * a + b * b + c * c;
    };
    p.grad = [](const Vec& v) -> Vec {
        const double x = v[0], y = v[1];
        const double a = 1.5 - x + x * y;
        const double b = 2.25 - x + x * y * y;
        const double c = 2.625 - x + x * y * y * y;
        Vec g(2);
        g[0] = 2.0 * a * (y - 1.0) + 2.0 * b * (y * y - 1.0) + 2.0 * c * (y * y * y - 1.0);
        g[1] = 2.0 * a * x + 2.0 * b * 2.0 * x * y + 2.0 * c * 3.0 * x * y * y;
        return g;
    };
    p.known_min = std::make_pair((Vec(2) << 3.0, 0.5).finished(), 0.0);
    p.init_default = (Vec(2) << -3.0, -3.0).finished();
    p.domain_lo = constant_vec(2, -4.5);
    p.domain_hi = constant_vec(2, 4.5);
    return p;
}

Problem make_chung_reynolds(int n) {
    Problem p;
    p.name = "chung_reynolds";
    p.dim = n;
    p.f = [](const Vec& x) {
        const double s = x.squaredNorm();
        return s * s;
    };
    p.grad = [](const Vec& x) -> Vec { return 4.0 * x.squaredNorm() * x; };
    p.known_min = std::make_pair(Vec::Zero(n).eval(), 0.0);
    p.init_default = constant_vec(n, 50.0);
    p.domain_lo = constant_vec(n, -100.0);
    p.domain_hi = constant_vec(n, 100.0);
    return p;
}

Problem make_quartic(int n) {
    Problem p;
    p.name = "quartic";
    p.dim = n;
    p.f = [n](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += (i + 1) * std::pow(x[i], 4);
        return s;
    };
    p.grad = [n](const Vec& x) -> Vec {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = 4.0 * (i + 1) * std::pow(x[i], 3);
        return g;
    };
    p.known_min = std::make_pair(Vec::Zero(n).eval(), 0.0);
    p.init_default = constant_vec(n, 2.0);
    p.domain_lo = constant_vec(n, -1.28);
    p.domain_hi = constant_vec(n, 1.28);
    return p;
}

Problem make_schwefel(int n) {
    Problem p;
    p.name = "schwefel";
    p.dim = n;
    p.f = [n](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::pow(x[i], 10);
        return s;
    };
    p.grad = [n](const Vec& x) -> Vec {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = 10.0 * std::pow(x[i], 9);
        return g;
    };
    p.known_min = std::make_pair(Vec::Zero(n).eval(), 0.0);
    p.init_default = constant_vec(n, 2.0);
    p.domain_lo = constant_vec(n, -10.0);
    p.domain_hi = constant_vec(n, 10.0);
    return p;
}

Problem make_qing(int n) {
    Problem p;
    p.name = "qing";
    p.dim = n;
    p.f = [n](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = x[i] * x[i] - (i + 1);
            s += d * d;
        }
        return s;
    };
    p.grad = [n](const Vec& x) -> Vec {
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = 4.0 * x[i] * (x[i] * x[i] - (i + 1));
        return g;
    };
    Vec xstar(n);
    for (int i = 0; i < n; ++i) xstar[i] = std::sqrt(static_cast<double>(i + 1));
    p.known_min = std::make_pair(std::move(xstar), 0.0);
    p.init_default = constant_vec(n, 50.0);
    p.domain_lo = constant_vec(n, -500.0);
    p.domain_hi = constant_vec(n, 500.0);
    return p;
}

Problem make_zakharov(int n) {
    Problem p;
    p.name = "zakharov";
    p.dim = n;
    auto weighted_sum = [n](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += 0.5 * (i + 1) * x[i];
        return s;
    };
    p.f = [weighted_sum](const Vec& x) {
        const double s = weighted_sum(x);
        return x.squaredNorm() + s * s + s * s * s * s;
    };
    p.grad = [n, weighted_sum](const Vec& x) -> Vec {
        const double s = weighted_sum(x);
        const double w = 2.0 * s + 4.0 * s * s * s;
        Vec g(n);
        for (int i = 0; i < n; ++i) g[i] = 2.0 * x[i] + w * 0.5 * (i + 1);
        return g;
    };
    p.known_min = std::make_pair(Vec::Zero(n).eval(), 0.0);
    p.init_default = constant_vec(n, 1.0);
    p.domain_lo = constant_vec(n, -5.0);
    p.domain_hi = constant_vec(n, 10.0);
    return p;
}

Problem make_three_hump_camel() {
    Problem p;
    p.name = "camel3";
    p.dim = 2;
    p.f = [](const Vec& v) {
        const double x = v[0], y = v[1];
        return 2.0 * x * x - 1.05 * std::pow(x, 4) + std::pow(x, 6) / 6.0 + x * y + y * y;
    };
    p.grad = [](const Vec& v) -> Vec {
        const double x = v[0], y = v[1];
        Vec g(2);
        g[0] = 4.0 * x - 4.2 * std::pow(x, 3) + std::pow(x, 5) + y;
        g[1] = x + 2.0 * y;
        return g;
    };
    p.known_min = std::make_pair(Vec::Zero(2).eval(), 0.0);
    p.init_default = constant_vec(2, 5.0);
    p.domain_lo = constant_vec(2, -5.0);
    p.domain_hi = constant_vec(2, 5.0);
    return p;
}

std::vector<Problem> corpus() {
    return {make_rosenbrock(),      make_booth(),    make_matyas(),  make_levi13(),
            make_sum_squares(),     make_beale(),    make_chung_reynolds(),
            make_quartic(),         make_schwefel(), make_qing(),    make_zakharov(),
            make_three_hump_camel()};
}

Problem problem_by_name(const std::string& name) {
    if (name == "corr_quad") return make_correlated_quadratic();
    if (name == "random_quad") return make_random_quadratic();
    if (name == "quad1d") return make_scaled_quadratic(1.0, 1);
    for (auto& p : corpus())
        if (p.name == name) return p;
    throw ValidationError("unknown problem: " + name);
}

std::vector<std::string> problem_names() {
    std::vector<std::string> names{"corr_quad", "random_quad", "quad1d"};
    for (const auto& p : corpus()) names.push_back(p.name);
    return names;
}

double gradient_check(const Problem& problem, const Vec& x) {
    const Vec g = problem.grad(x);
    const double scale = std::max(1.0, g.norm());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double step = 1e-6 * (1.0 + std::abs(x[i]));
        Vec xp = x, xm = x;
        xp[i] += step;
        xm[i] -= step;
        const double fd = (problem.f(xp) - problem.f(xm)) / (2.0 * step);
        worst = std::max(worst, std::abs(fd - g[i]) / scale);
    }
    return worst;
}

double hessian_check(const Problem& problem, const Vec& x) {
    const Mat H = problem.hess(x);
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double step = 1e-6 * (1.0 + std::abs(x[i]));
        Vec xp = x, xm = x;
        xp[i] += step;
        xm[i] -= step;
        Vec col = (problem.grad(xp) - problem.grad(xm)) / (2.0 * step);
        worst = std::max(worst, (col - H.col(i)).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

MatCompInstance matcomp_generate(int n, int r, double s, std::uint64_t seed) {
    if (!(r < n)) throw ValidationError("matcomp_generate: need r < n");
    if (!(s > 0.0 && s < 1.0)) throw ValidationError("matcomp_generate: need 0 < s < 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> entry(1.0, std::sqrt(2.0));  // N(1,2): variance 2
    Mat R(n, r), S(n, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) R(i, j) = entry(rng);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) S(i, j) = entry(rng);

    const auto count = static_cast<std::int64_t>(std::llround(s * n * n));
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int64_t>(i);
    std::shuffle(idx.begin(), idx.end(), rng);

    MatCompInstance inst;
    inst.M = R * S.transpose();
    inst.mask = Mat::Zero(n, n);
    for (std::int64_t k = 0; k < count; ++k)
        inst.mask(idx[static_cast<std::size_t>(k)] / n, idx[static_cast<std::size_t>(k)] % n) = 1.0;
    inst.n = n;
    inst.r = r;
    inst.s = s;
    inst.seed = seed;
    return inst;
}

MatCompGrad matcomp_loss_grad(const MatCompInstance& inst, const Mat& U, const Mat& V) {
    if (U.rows() != inst.n || U.cols() != inst.r || V.rows() != inst.n || V.cols() != inst.r)
        throw ValidationError("matcomp_loss_grad: factor shape mismatch");
    Mat residual = inst.mask.cwiseProduct(inst.M - U * V.transpose());
    MatCompGrad out;
    out.loss = residual.squaredNorm();
    out.gradU = -2.0 * residual * V;
    out.gradV = -2.0 * residual.transpose() * U;
    return out;
}

Trace alternating_minimize(const MatCompInstance& inst, Method method,
                           const OptimizerParams& params, int iters, std::uint64_t init_seed) {
    std::mt19937_64 rng(init_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = inst.n, r = inst.r;
    Mat U(n, r), V(n, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) U(i, j) = gauss(rng);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) V(i, j) = gauss(rng);

    auto flatten = [](const Mat& A) -> Vec { return Eigen::Map<const Vec>(A.data(), A.size()); };
    auto unflatten = [n, r](const Vec& v) -> Mat { return Eigen::Map<const Mat>(v.data(), n, r); };

    AlgState su = AlgState::at_rest(flatten(U));
    AlgState sv = AlgState::at_rest(flatten(V));

    const auto t0 = std::chrono::steady_clock::now();
    Trace trace;
    auto record = [&](double loss, double gnorm) {
        AlgState snapshot(su.x, su.v, su.k);
        trace.states.push_back(std::move(snapshot));
        trace.fvals.push_back(loss);
        trace.gradnorms.push_back(gnorm);
    };

    {
        auto g0 = matcomp_loss_grad(inst, U, V);
        record(g0.loss, std::hypot(g0.gradU.norm(), g0.gradV.norm()));
    }

    for (int it = 0; it < iters; ++it) {
        GradientFn gradU_fn = [&](const Vec& u) -> Vec {
            Mat Um = unflatten(u);
            Mat residual = inst.mask.cwiseProduct(inst.M - Um * V.transpose());
            Mat g = -2.0 * residual * V;
            return flatten(g);
        };
        su = take_step(method, su, params, gradU_fn, it);
        U = unflatten(su.x);

        GradientFn gradV_fn = [&](const Vec& v) -> Vec {
            Mat Vm = unflatten(v);
            Mat residual = inst.mask.cwiseProduct(inst.M - U * Vm.transpose());
            Mat g = -2.0 * residual.transpose() * U;
            return flatten(g);
        };
        sv = take_step(method, sv, params, gradV_fn, it);
        V = unflatten(sv.x);

        if (diverged(su.x) || diverged(sv.x)) {
            trace.diverged = true;
            record(std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN());
            break;
        }
        auto g = matcomp_loss_grad(inst, U, V);
        record(g.loss, std::hypot(g.gradU.norm(), g.gradV.norm()));
        if (!std::isfinite(g.loss)) {
            trace.diverged = true;
            break;
        }
    }

    trace.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return trace;
}

}  // namespace confopt
