#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "confopt/problems.hpp"

using namespace confopt;

namespace {
Vec random_point_in(const Problem& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec x(p.dim);
    for (Eigen::Index i = 0; i < p.dim; ++i) {
        // Stay near the middle of the domain to avoid overflow in x^10 terms.
        const double lo = p.domain_lo[i] / 4.0, hi = p.domain_hi[i] / 4.0;
        x[i] = lo + (hi - lo) * unit(rng);
    }
    return x;
}
}  // namespace

TEST_CASE("every corpus gradient passes finite-difference validation") {
    std::mt19937_64 rng(123);
    for (const Problem& p : corpus()) {
        INFO("problem: " << p.name);
        CHECK(gradient_check(p, p.init_default) <= 1e-5);
        for (int t = 0; t < 5; ++t) CHECK(gradient_check(p, random_point_in(p, rng)) <= 1e-5);
    }
}

TEST_CASE("declared minima are stationary") {
    for (const Problem& p : corpus()) {
        INFO("problem: " << p.name);
        REQUIRE(p.known_min.has_value());
        CHECK(p.grad(p.known_min->first).norm() <= 1e-8);
        CHECK(std::abs(p.f(p.known_min->first) - p.known_min->second) <= 1e-10);
    }
}

TEST_CASE("Hessians match finite differences of the gradient where declared") {
    std::mt19937_64 rng(321);
    for (const Problem& p : corpus()) {
        if (!p.has_hessian()) continue;
        INFO("problem: " << p.name);
        CHECK(hessian_check(p, random_point_in(p, rng)) <= 1e-4);
    }
}

TEST_CASE("correlated quadratic: explicit 2x2 structure") {
    Problem q = make_correlated_quadratic(2);
    // Q = [[1, 0.95], [0.95, 1]]
    CHECK(q.grad((Vec(2) << 1.0, 0.0).finished())[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.grad((Vec(2) << 1.0, 0.0).finished())[1] == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(q.f((Vec(2) << 1.0, 1.0).finished()) == doctest::Approx(1.95).epsilon(1e-15));
    CHECK_THROWS_AS(make_correlated_quadratic(2, 1.5), ValidationError);
}

TEST_CASE("random quadratic: spectrum inside the declared range, seeded") {
    Problem q = make_random_quadratic(40, 1e-3, 10.0, 11);
    const Mat H = q.hess(Vec::Zero(40));
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    CHECK(es.eigenvalues().minCoeff() >= 1e-3 - 1e-9);
    CHECK(es.eigenvalues().maxCoeff() <= 10.0 + 1e-9);

    Problem again = make_random_quadratic(40, 1e-3, 10.0, 11);
    CHECK((again.init_default - q.init_default).cwiseAbs().maxCoeff() == 0.0);
    CHECK((again.hess(Vec::Zero(40)) - H).cwiseAbs().maxCoeff() == 0.0);

    Problem other = make_random_quadratic(40, 1e-3, 10.0, 12);
    CHECK((other.init_default - q.init_default).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("hand values for individual corpus members") {
    Problem rosen = make_rosenbrock(2);
    CHECK(rosen.f((Vec(2) << 0.0, 0.0).finished()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rosen.init_default[0] == 2.0);
    CHECK(rosen.init_default[1] == -2.0);

    Problem booth = make_booth();
    CHECK(booth.f((Vec(2) << 0.0, 0.0).finished()) == doctest::Approx(74.0).epsilon(1e-15));

    Problem qing = make_qing(3);
    Vec xstar(3);
    xstar << 1.0, std::sqrt(2.0), std::sqrt(3.0);
    CHECK(qing.f(xstar) <= 1e-25);

    Problem zak = make_zakharov(2);
    // x = (1,1): ||x||^2 = 2, s = 0.5 + 1 = 1.5 -> 2 + 2.25 + 5.0625
    CHECK(zak.f((Vec(2) << 1.0, 1.0).finished()) == doctest::Approx(9.3125).epsilon(1e-15));

    Problem schwefel = make_schwefel(1);
    CHECK(schwefel.f((Vec(1) << 2.0).finished()) == doctest::Approx(1024.0).epsilon(1e-15));
    CHECK(schwefel.grad((Vec(1) << 2.0).finished())[0] ==
          doctest::Approx(5120.0).epsilon(1e-15));
}

TEST_CASE("problem lookup by name") {
    for (const std::string& name : problem_names()) CHECK(problem_by_name(name).name == name);
    CHECK(problem_names().size() == 15);
    CHECK_THROWS_AS(problem_by_name("nope"), ValidationError);
}

TEST_CASE("matrix completion instance: counting identities") {
    MatCompInstance inst = matcomp_generate(100, 5, 0.3, 7);
    CHECK(inst.observed() == 3000);
    CHECK(inst.degrees_of_freedom() == 975);
    CHECK(static_cast<double>(inst.degrees_of_freedom()) / inst.observed() ==
          doctest::Approx(0.325).epsilon(1e-15));

    Eigen::JacobiSVD<Mat> svd(inst.M);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-8 * svd.singularValues()[0]) ++rank;
    CHECK(rank == 5);

    MatCompInstance again = matcomp_generate(100, 5, 0.3, 7);
    CHECK((again.M - inst.M).cwiseAbs().maxCoeff() == 0.0);
    CHECK((again.mask - inst.mask).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(matcomp_generate(10, 10, 0.3, 1), ValidationError);
    CHECK_THROWS_AS(matcomp_generate(10, 2, 1.5, 1), ValidationError);
}

TEST_CASE("matrix completion gradients match finite differences") {
    MatCompInstance inst = matcomp_generate(12, 2, 0.4, 3);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat U(12, 2), V(12, 2);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 2; ++j) {
            U(i, j) = gauss(rng);
            V(i, j) = gauss(rng);
        }
    const MatCompGrad g = matcomp_loss_grad(inst, U, V);
    const double step = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat Up = U, Um = U;
            Up(i, j) += step;
            Um(i, j) -= step;
            const double fd = (matcomp_loss_grad(inst, Up, V).loss -
                               matcomp_loss_grad(inst, Um, V).loss) /
                              (2.0 * step);
            worst = std::max(worst, std::abs(fd - g.gradU(i, j)));
            Mat Vp = V, Vm = V;
            Vp(i, j) += step;
            Vm(i, j) -= step;
            const double fdv = (matcomp_loss_grad(inst, U, Vp).loss -
                                matcomp_loss_grad(inst, U, Vm).loss) /
                               (2.0 * step);
            worst = std::max(worst, std::abs(fdv - g.gradV(i, j)));
        }
    CHECK(worst <= 1e-5);
}

TEST_CASE("zero factors are a stationary saddle of the completion loss") {
    MatCompInstance inst = matcomp_generate(12, 2, 0.4, 3);
    const MatCompGrad g = matcomp_loss_grad(inst, Mat::Zero(12, 2), Mat::Zero(12, 2));
    CHECK(g.gradU.cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.gradV.cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.loss > 0.0);
}

TEST_CASE("alternating minimization decreases the loss and is deterministic") {
    MatCompInstance inst = matcomp_generate(30, 3, 0.35, 9);
    OptimizerParams params(1e-4, 0.9);
    Trace a = alternating_minimize(inst, Method::CM, params, 100, 1);
    Trace b = alternating_minimize(inst, Method::CM, params, 100, 1);
    REQUIRE(a.fvals.size() == 101);
    CHECK_FALSE(a.diverged);
    CHECK(a.fvals.back() < 0.1 * a.fvals.front());
    for (std::size_t i = 0; i < a.fvals.size(); ++i) CHECK(a.fvals[i] == b.fvals[i]);

    Trace c = alternating_minimize(inst, Method::CM, params, 100, 2);
    CHECK(c.fvals.front() != a.fvals.front());
}
