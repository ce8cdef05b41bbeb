#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "confopt/integrators.hpp"
#include "confopt/optimizers.hpp"
#include "confopt/problems.hpp"

using namespace confopt;

namespace {
AlgState rest1d(double x) { return AlgState::at_rest((Vec(1) << x).finished()); }
}  // namespace

TEST_CASE("heavy ball hand iterates on f = x^2/2") {
    Problem quad = make_scaled_quadratic(1.0, 1);
    OptimizerParams p(0.1, 0.9);
    AlgState s = rest1d(1.0);

    s = cm_step(s, p, quad.grad(s.x));
    CHECK(s.v[0] == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(s.x[0] == doctest::Approx(0.9).epsilon(1e-15));

    s = cm_step(s, p, quad.grad(s.x));
    CHECK(s.v[0] == doctest::Approx(-0.18).epsilon(1e-15));
    CHECK(s.x[0] == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(s.k == 2);
}

TEST_CASE("Nesterov hand iterates on f = x^2/2") {
    Problem quad = make_scaled_quadratic(1.0, 1);
    OptimizerParams p(0.1, 0.9);
    AlgState s = rest1d(1.0);

    s = nag_step(s, p, quad.grad);
    CHECK(s.x[0] == doctest::Approx(0.9).epsilon(1e-15));

    // Lookahead 0.9 + 0.9*(-0.1) = 0.81 feeds the second gradient.
    s = nag_step(s, p, quad.grad);
    CHECK(s.v[0] == doctest::Approx(-0.171).epsilon(1e-15));
    CHECK(s.x[0] == doctest::Approx(0.729).epsilon(1e-15));
}

TEST_CASE("sequence-momentum Nesterov: recursion forms agree and match hand values") {
    Problem quad = make_scaled_quadratic(1.0, 1);
    const double eps = 0.1;

    NesterovSequence seq((Vec(1) << 1.0).finished(), eps);
    seq.step(quad.grad);
    CHECK(seq.x()[0] == doctest::Approx(0.9).epsilon(1e-15));
    seq.step(quad.grad);
    CHECK(seq.x()[0] == doctest::Approx(0.81).epsilon(1e-15));
    CHECK(seq.y()[0] == doctest::Approx(0.7875).epsilon(1e-15));
    seq.step(quad.grad);
    CHECK(seq.x()[0] == doctest::Approx(0.70875).epsilon(1e-15));

    // Single-state form reproduces the same x-sequence.
    AlgState s = rest1d(1.0);
    std::vector<double> xs;
    for (std::int64_t k = 0; k < 25; ++k) {
        s = nag_sequence_step(s, k, eps, quad.grad);
        xs.push_back(s.x[0]);
    }
    NesterovSequence ref((Vec(1) << 1.0).finished(), eps);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ref.step(quad.grad);
        CHECK(xs[i] == doctest::Approx(ref.x()[0]).epsilon(1e-14));
    }
    CHECK(ref.momentum_coefficient() == doctest::Approx(25.0 / 28.0).epsilon(1e-15));
}

TEST_CASE("RGD with delta = 0, alpha = 0 reproduces Nesterov iterates") {
    Problem quad = make_correlated_quadratic(6);
    OptimizerParams rgd(0.01, 0.9, 0.0, 0.0);
    OptimizerParams nag(0.01, 0.9);
    AlgState a = AlgState::at_rest(quad.init_default);
    AlgState b = a;
    for (int i = 0; i < 100; ++i) {
        a = rgd_step(a, rgd, quad.grad);
        b = nag_step(b, nag, quad.grad);
        CHECK((a.x - b.x).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("RGD with delta = 0, alpha = 1 is classical conformal leapfrog") {
    Problem quad = make_correlated_quadratic(6);
    OptimizerParams params(0.01, 0.9, 0.0, 1.0);
    const PhysicalParams phys = rgd_params_to_physical(params, 1.0);
    SeparableHamiltonian H(quad, phys.m);

    AlgState s = AlgState::at_rest(quad.init_default);
    PhaseState z(s.x, Vec::Zero(6));
    const double scale = phys.h / (2.0 * phys.m);  // v = (h/2m) p
    for (int i = 0; i < 100; ++i) {
        s = rgd_step(s, params, quad.grad);
        z = conformal_leapfrog_step(H, z, phys.h, phys.gamma);
        CHECK((s.x - z.x).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((s.v - scale * z.p).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("relativistic Euler at huge c matches the classical update") {
    Problem quad = make_correlated_quadratic(4);
    PhysicalParams classical(0.1, 1.0, 1.0);
    PhysicalParams nearly(0.1, 1.0, 1.0, 1e8);
    PhaseState z(quad.init_default, 0.5 * Vec::Ones(4));
    for (int i = 0; i < 50; ++i) {
        PhaseState a = relativistic_euler_step(z, nearly, quad.grad);
        PhaseState b = relativistic_euler_step(z, classical, quad.grad);
        CHECK((a.x - b.x).norm() / std::max(1.0, b.x.norm()) <= 1e-6);
        z = b;
    }
}

TEST_CASE("each momentum step costs exactly one gradient evaluation") {
    Problem quad = make_correlated_quadratic(3);
    CountingGradient counter(quad.grad);
    AlgState s = AlgState::at_rest(quad.init_default);
    OptimizerParams p(0.01, 0.9, 1.0, 0.5);

    nag_step(s, OptimizerParams(0.01, 0.9), counter.fn());
    CHECK(counter.calls() == 1);
    counter.reset();

    rgd_step(s, p, counter.fn());
    CHECK(counter.calls() == 1);
    counter.reset();

    nag_sequence_step(s, 0, 0.01, counter.fn());
    CHECK(counter.calls() == 1);
}

TEST_CASE("RGD first step from rest is a normalized gradient step") {
    Problem quad = make_scaled_quadratic(1.0, 2);
    const double eps = 0.5, delta = 4.0;
    OptimizerParams p(eps, 0.9, delta, 1.0);
    AlgState s = AlgState::at_rest((Vec(2) << 3.0, -4.0).finished());  // grad norm 5
    AlgState next = rgd_step(s, p, quad.grad);
    const Vec g = quad.grad(s.x);
    const Vec expected = s.x - eps * g / std::sqrt(delta * eps * eps * g.squaredNorm() + 1.0);
    CHECK((next.x - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("RGD position updates are bounded by delta^{-1/2}") {
    const double delta = 0.25;
    OptimizerParams p(1.0, 0.9, delta, 0.7);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double bound = 1.0 / std::sqrt(delta);

    Vec huge(3);
    AlgState s(Vec::Zero(3), Vec::Zero(3));
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < 3; ++j) huge[j] = 1e6 * gauss(rng);
        AlgState next = rgd_step(s, p, [&](const Vec&) { return huge; });
        // Separate the bounded kinetic move from the deterministic lookahead.
        const double sqmu = std::sqrt(p.mu);
        const Vec x_mid = s.x + sqmu / std::sqrt(p.mu * delta * s.v.squaredNorm() + 1.0) * s.v;
        const Vec y = p.alpha * x_mid + (1.0 - p.alpha) * s.x;
        CHECK((next.x - y).norm() <= bound * (1.0 + 1e-12));
        s = next;
    }
}

TEST_CASE("run: stopping rules and trace shape") {
    Problem quad = make_scaled_quadratic(1.0, 1);
    OptimizerParams p(0.1, 0.9);

    Trace empty = run(Method::CM, quad, p, rest1d(1.0), StopCriteria(0));
    CHECK(empty.states.size() == 1);
    CHECK(empty.fvals[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(empty.gradnorms[0] == doctest::Approx(1.0).epsilon(1e-15));

    Trace fixed = run(Method::CM, quad, p, rest1d(1.0), StopCriteria(50));
    CHECK(fixed.states.size() == 51);
    CHECK(fixed.best_f() < fixed.fvals[0]);
    CHECK_FALSE(fixed.diverged);

    Trace tol = run(Method::CM, quad, p, rest1d(1.0), StopCriteria(100000, 1e-6));
    CHECK(tol.grad_tol_hit);
    CHECK(tol.gradnorms.back() <= 1e-6);
    CHECK(tol.states.size() < 100001);
}

TEST_CASE("run records divergence instead of throwing") {
    Problem quad = make_scaled_quadratic(1.0, 1);
    // Far beyond the heavy-ball stability threshold: epsilon = h^2 >> 2(1+mu).
    Trace t = run(Method::CM, quad, OptimizerParams(10.0, 0.9), rest1d(1.0), StopCriteria(5000));
    CHECK(t.diverged);
    CHECK(t.states.size() < 5001);
}

TEST_CASE("run rejects dimension mismatch") {
    Problem quad = make_scaled_quadratic(1.0, 2);
    CHECK_THROWS_AS(run(Method::CM, quad, OptimizerParams(0.1, 0.9), rest1d(1.0),
                        StopCriteria(10)),
                    ValidationError);
}

TEST_CASE("method names round-trip") {
    for (Method m : {Method::GD, Method::CM, Method::NAG, Method::NAGSeq, Method::RGD})
        CHECK(parse_method(method_name(m)) == m);
    CHECK_THROWS_AS(parse_method("adam"), ValidationError);
}

TEST_CASE("gradient descent baseline step") {
    Problem quad = make_scaled_quadratic(2.0, 1);
    AlgState s = rest1d(1.0);
    AlgState next = gd_step(s, 0.1, quad.grad(s.x));
    CHECK(next.x[0] == doctest::Approx(0.8).epsilon(1e-15));
}
