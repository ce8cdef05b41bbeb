#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "confopt/diagnostics.hpp"
#include "confopt/integrators.hpp"
#include "confopt/optimizers.hpp"
#include "confopt/problems.hpp"
#include "confopt/stability.hpp"
#include "confopt/tuning.hpp"
#include "confopt/types.hpp"
#include "confopt/verify.hpp"

namespace py = pybind11;
using namespace confopt;

PYBIND11_MODULE(_confopt, mod) {
    mod.doc() = "Conformal symplectic optimization toolkit";

    py::register_exception<ValidationError>(mod, "ValidationError", PyExc_ValueError);

    py::enum_<Method>(mod, "Method")
        .value("GD", Method::GD)
        .value("CM", Method::CM)
        .value("NAG", Method::NAG)
        .value("NAGSeq", Method::NAGSeq)
        .value("RGD", Method::RGD);
    mod.def("parse_method", &parse_method, py::arg("name"));
    mod.def("method_name", &method_name, py::arg("method"));

    py::class_<AlgState>(mod, "AlgState")
        .def(py::init<Vec, Vec, std::int64_t>(), py::arg("x"), py::arg("v"), py::arg("k") = 0)
        .def_static("at_rest", &AlgState::at_rest, py::arg("x"))
        .def_readwrite("x", &AlgState::x)
        .def_readwrite("v", &AlgState::v)
        .def_readwrite("k", &AlgState::k);

    py::class_<PhaseState>(mod, "PhaseState")
        .def(py::init<Vec, Vec, double>(), py::arg("x"), py::arg("p"), py::arg("t") = 0.0)
        .def_readwrite("x", &PhaseState::x)
        .def_readwrite("p", &PhaseState::p)
        .def_readwrite("t", &PhaseState::t);

    py::class_<OptimizerParams>(mod, "OptimizerParams")
        .def(py::init<double, double, double, double>(), py::arg("epsilon"), py::arg("mu"),
             py::arg("delta") = 0.0, py::arg("alpha") = 1.0)
        .def_readonly("epsilon", &OptimizerParams::epsilon)
        .def_readonly("mu", &OptimizerParams::mu)
        .def_readonly("delta", &OptimizerParams::delta)
        .def_readonly("alpha", &OptimizerParams::alpha);

    py::class_<PhysicalParams>(mod, "PhysicalParams")
        .def(py::init<double, double, double, double>(), py::arg("h"), py::arg("gamma"),
             py::arg("m") = 1.0, py::arg("c") = kInfinity)
        .def_readonly("h", &PhysicalParams::h)
        .def_readonly("gamma", &PhysicalParams::gamma)
        .def_readonly("m", &PhysicalParams::m)
        .def_readonly("c", &PhysicalParams::c)
        .def("classical", &PhysicalParams::classical);

    mod.def("cm_params_to_physical", &cm_params_to_physical, py::arg("params"),
            py::arg("m") = 1.0);
    mod.def("cm_physical_to_params", &cm_physical_to_params, py::arg("phys"));
    mod.def("nag_params_to_physical", &nag_params_to_physical, py::arg("params"),
            py::arg("m") = 1.0);
    mod.def("nag_physical_to_params", &nag_physical_to_params, py::arg("phys"));
    mod.def("rgd_params_to_physical", &rgd_params_to_physical, py::arg("params"),
            py::arg("m") = 1.0);
    mod.def("rgd_physical_to_params", &rgd_physical_to_params, py::arg("phys"),
            py::arg("alpha") = 1.0);

    py::class_<StopCriteria>(mod, "StopCriteria")
        .def(py::init<std::int64_t, double, double, double>(), py::arg("max_iters"),
             py::arg("grad_tol") = 0.0, py::arg("f_tol") = 0.0,
             py::arg("divergence_bound") = kDivergenceBound);

    py::class_<Trace>(mod, "Trace")
        .def_readonly("fvals", &Trace::fvals)
        .def_readonly("gradnorms", &Trace::gradnorms)
        .def_readonly("diverged", &Trace::diverged)
        .def_readonly("grad_tol_hit", &Trace::grad_tol_hit)
        .def_readonly("f_tol_hit", &Trace::f_tol_hit)
        .def("best_f", &Trace::best_f)
        .def("iterations", &Trace::iterations)
        .def("xs", [](const Trace& t) {
            std::vector<Vec> out;
            out.reserve(t.states.size());
            for (const auto& s : t.states) out.push_back(s.x);
            return out;
        });

    py::class_<Problem>(mod, "Problem")
        .def_readonly("name", &Problem::name)
        .def_readonly("dim", &Problem::dim)
        .def_readonly("init_default", &Problem::init_default)
        .def("f", [](const Problem& p, const Vec& x) { return p.f(x); }, py::arg("x"))
        .def("grad", [](const Problem& p, const Vec& x) { return p.grad(x); }, py::arg("x"))
        .def("has_hessian", &Problem::has_hessian);

    mod.def("problem_by_name", &problem_by_name, py::arg("name"));
    mod.def("problem_names", &problem_names);
    mod.def("gradient_check", &gradient_check, py::arg("problem"), py::arg("x"));

    mod.def("cm_step",
            [](const AlgState& s, const OptimizerParams& p, const Vec& grad) {
                return cm_step(s, p, grad);
            },
            py::arg("state"), py::arg("params"), py::arg("grad"));
    mod.def("rgd_step", &rgd_step, py::arg("state"), py::arg("params"), py::arg("gradfn"));
    mod.def("nag_step", &nag_step, py::arg("state"), py::arg("params"), py::arg("gradfn"));
    mod.def("take_step", &take_step, py::arg("method"), py::arg("state"), py::arg("params"),
            py::arg("gradfn"), py::arg("k"));

    mod.def(
        "run",
        [](Method method, const Problem& problem, const OptimizerParams& params,
           const StopCriteria& stop) {
            return run(method, problem, params, AlgState::at_rest(problem.init_default), stop);
        },
        py::arg("method"), py::arg("problem"), py::arg("params"), py::arg("stop"));
    mod.def("run_from", &run, py::arg("method"), py::arg("problem"), py::arg("params"),
            py::arg("init"), py::arg("stop"));

    mod.def(
        "transition_matrix",
        [](Method method, double h, double gamma, double m, double lambda) -> Mat {
            return transition_matrix(method, h, gamma, m, lambda);
        },
        py::arg("method"), py::arg("h"), py::arg("gamma"), py::arg("m"), py::arg("lam"));
    mod.def(
        "analytic_threshold",
        [](Method method, double mu, double m, double lambda) {
            return analytic_threshold(StabilityQuery(method, mu, m, lambda));
        },
        py::arg("method"), py::arg("mu"), py::arg("m") = 1.0, py::arg("lam") = 1.0);
    mod.def("empirical_threshold", &empirical_threshold, py::arg("method"), py::arg("mu"),
            py::arg("m") = 1.0, py::arg("lam") = 1.0, py::arg("tol") = 1e-10);
    mod.def(
        "eigenvalues",
        [](Method method, double h, double gamma, double m, double lambda) {
            return eigenvalues_2x2(transition_matrix(method, h, gamma, m, lambda));
        },
        py::arg("method"), py::arg("h"), py::arg("gamma"), py::arg("m") = 1.0,
        py::arg("lam") = 1.0);

    py::class_<SearchResult>(mod, "SearchResult")
        .def_property_readonly("best_params",
                               [](const SearchResult& r) { return r.best.params; })
        .def_property_readonly("best_score", [](const SearchResult& r) { return r.best.score; })
        .def_readonly("all_diverged", &SearchResult::all_diverged)
        .def("num_trials", [](const SearchResult& r) { return r.trials.size(); });
    mod.def(
        "random_search",
        [](const Problem& problem, Method method, std::int64_t budget, std::int64_t iters,
           std::uint64_t seed) { return random_search(problem, method, budget, iters, seed); },
        py::arg("problem"), py::arg("method"), py::arg("budget"), py::arg("iters"),
        py::arg("seed"));

    py::class_<CheckResult>(mod, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("detail", &CheckResult::detail);
    mod.def("verify_structural", &verify_structural);
    mod.def("all_passed", &all_passed, py::arg("results"));
}
