// confopt: command-line front end. Subcommands emit plot-ready CSV/JSON
// artifacts; all randomness is seeded so every invocation is reproducible
// from its flags (or config file) alone.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "confopt/diagnostics.hpp"
#include "confopt/io.hpp"
#include "confopt/optimizers.hpp"
#include "confopt/problems.hpp"
#include "confopt/stability.hpp"
#include "confopt/tuning.hpp"
#include "confopt/types.hpp"
#include "confopt/verify.hpp"

namespace {

using namespace confopt;
using nlohmann::json;

constexpr int kExitUsage = 2;

std::uint64_t env_seed_default() {
    if (const char* s = std::getenv("CONFOPT_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            // fall through to the built-in default
        }
    }
    return 42;
}

json params_to_json(const OptimizerParams& p) {
    return json{{"epsilon", p.epsilon}, {"mu", p.mu}, {"delta", p.delta}, {"alpha", p.alpha}};
}

std::vector<std::string> histogram_params_for(Method method) {
    if (method == Method::RGD) return {"epsilon", "mu", "delta", "alpha"};
    if (method == Method::GD) return {"epsilon"};
    return {"epsilon", "mu"};
}

void write_histogram_csv(const std::string& path, const Histogram& h) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        rows.push_back({format_double(h.edges[i]), format_double(h.edges[i + 1]),
                        std::to_string(h.counts[i])});
    write_csv(path, {"bin_lo", "bin_hi", "count"}, rows);
}

int cmd_run(const std::string& problem_name, const std::string& method_name_,
            const OptimizerParams& params, std::int64_t iters, double grad_tol, double f_tol,
            const std::string& out) {
    const Method method = parse_method(method_name_);
    const Problem problem = problem_by_name(problem_name);
    const StopCriteria stop(iters, grad_tol, f_tol);
    const Trace trace =
        run(method, problem, params, AlgState::at_rest(problem.init_default), stop);
    write_trace_csv(out, trace);
    std::cout << "wrote " << out << " (" << trace.states.size() << " rows, best f "
              << format_double(trace.best_f()) << (trace.diverged ? ", diverged" : "") << ")\n";
    return 0;
}

int cmd_tune(const std::string& problem_name, const std::string& method_name_,
             std::int64_t budget, std::int64_t iters, std::uint64_t seed,
             const std::string& out_dir) {
    const Method method = parse_method(method_name_);
    const Problem problem = problem_by_name(problem_name);
    const SearchResult result = random_search(problem, method, budget, iters, seed);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        const TrialRecord& t = result.trials[i];
        rows.push_back({std::to_string(i), format_double(t.params.epsilon),
                        format_double(t.params.mu), format_double(t.params.delta),
                        format_double(t.params.alpha), format_double(t.score),
                        t.diverged ? "1" : "0", std::to_string(t.seed)});
    }
    write_csv(out_dir + "/trials.csv",
              {"trial", "epsilon", "mu", "delta", "alpha", "score", "diverged", "seed"}, rows);

    json best{{"problem", problem.name},
              {"method", method_name_},
              {"budget", budget},
              {"iters_per_trial", iters},
              {"seed", seed},
              {"all_diverged", result.all_diverged},
              {"best_score", result.best.score},
              {"best_params", params_to_json(result.best.params)}};
    write_text_file(out_dir + "/best.json", best.dump(2) + "\n");

    for (const std::string& param : histogram_params_for(method))
        write_histogram_csv(out_dir + "/hist_" + param + ".csv",
                            histogram(result.trials, param, 20));

    std::cout << "wrote " << out_dir << "/{trials.csv,best.json,hist_*.csv}; best score "
              << format_double(result.best.score) << "\n";
    return 0;
}

int cmd_stability(double mass, double lambda, double h_max, int grid,
                  std::vector<double> mus, const std::string& out_dir) {
    if (mus.empty()) mus = {0.5, 0.9, 0.99};
    const double gamma = 1.0;

    std::vector<std::vector<std::string>> locus;
    for (Method method : {Method::CM, Method::NAG, Method::RGD}) {
        for (int i = 1; i <= grid; ++i) {
            const double h = h_max * i / grid;
            const Eigen::Matrix2d T = transition_matrix(method, h, gamma, mass, lambda);
            const auto [e1, e2] = eigenvalues_2x2(T);
            locus.push_back({method_name(method), format_double(h), format_double(e1.real()),
                             format_double(e1.imag()), format_double(e2.real()),
                             format_double(e2.imag()), format_double(spectral_radius(T))});
        }
    }
    write_csv(out_dir + "/eigenvalues.csv", {"method", "h", "re1", "im1", "re2", "im2", "rho"},
              locus);

    std::vector<std::vector<std::string>> thresholds;
    for (double mu : mus) {
        for (Method method : {Method::CM, Method::NAG, Method::RGD}) {
            const double ha = analytic_threshold(StabilityQuery(method, mu, mass, lambda));
            const double he = empirical_threshold(method, mu, mass, lambda);
            thresholds.push_back({format_double(mu), method_name(method), format_double(ha),
                                  format_double(he)});
        }
    }
    write_csv(out_dir + "/thresholds.csv", {"mu", "method", "h_analytic", "h_empirical"},
              thresholds);

    std::cout << "wrote " << out_dir << "/{eigenvalues.csv,thresholds.csv}\n";
    return 0;
}

int cmd_diagnose(const std::string& out) {
    const auto results = verify_structural();
    json report = json::array();
    for (const auto& r : results) {
        report.push_back({{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        std::cout << (r.passed ? "pass" : "FAIL") << "  " << r.name << " — " << r.detail << "\n";
    }
    if (!out.empty()) {
        write_text_file(out, json{{"all_passed", all_passed(results)},
                                  {"checks", report}}.dump(2) + "\n");
        std::cout << "wrote " << out << "\n";
    }
    return all_passed(results) ? 0 : 1;
}

int cmd_matcomp(int n, int r, double s, std::uint64_t seed, int iters,
                std::int64_t tune_budget, std::int64_t tune_iters, const std::string& out) {
    const MatCompInstance inst = matcomp_generate(n, r, s, seed);

    // The tuning objective: alternating minimization on the instance itself
    // from the seeded factor initialization.
    const std::vector<Method> methods{Method::GD, Method::CM, Method::NAG, Method::RGD};
    std::vector<Trace> traces;
    for (Method method : methods) {
        OptimizerParams best(1e-4, 0.9, method == Method::RGD ? 1.0 : 0.0);
        if (tune_budget > 0) {
            SearchSpace space;
            double best_score = kInfinity;
            for (std::int64_t t = 0; t < tune_budget; ++t) {
                const OptimizerParams cand = space.sample(method, trial_seed(seed, t));
                const Trace probe = alternating_minimize(inst, method, cand,
                                                         static_cast<int>(tune_iters), seed);
                if (!probe.diverged && probe.best_f() < best_score) {
                    best_score = probe.best_f();
                    best = cand;
                }
            }
        }
        traces.push_back(alternating_minimize(inst, method, best, iters, seed));
    }

    std::vector<std::vector<std::string>> rows;
    const std::size_t nrows = traces[0].fvals.size();
    for (std::size_t i = 0; i < nrows; ++i) {
        std::vector<std::string> row{std::to_string(i)};
        for (const Trace& t : traces)
            row.push_back(format_double(i < t.fvals.size() ? t.fvals[i] : kInfinity));
        rows.push_back(std::move(row));
    }
    write_csv(out, {"iter", "gd", "cm", "nag", "rgd"}, rows);
    std::cout << "wrote " << out << " (observed " << inst.observed() << " entries, d/p "
              << format_double(static_cast<double>(inst.degrees_of_freedom()) /
                               static_cast<double>(inst.observed()))
              << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal symplectic optimization toolkit"};
    app.set_config("--config", "", "Config file (key = value lines, # comments)");
    app.require_subcommand(1);

    // run ---------------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "Run one optimizer and write a trace CSV");
    run_cmd->configurable();
    std::string run_problem = "corr_quad", run_method = "rgd", run_out = "trace.csv";
    double run_eps = 1e-3, run_mu = 0.9, run_delta = 0.0, run_alpha = 1.0;
    double run_grad_tol = 0.0, run_f_tol = 0.0;
    std::int64_t run_iters = 1000;
    run_cmd->add_option("--problem", run_problem, "Problem name (see `problems`)");
    run_cmd->add_option("--method", run_method, "gd|cm|nag|nag_seq|rgd");
    run_cmd->add_option("--epsilon", run_eps, "Learning rate");
    run_cmd->add_option("--mu", run_mu, "Momentum factor in (0,1)");
    auto* delta_opt = run_cmd->add_option("--delta", run_delta, "Relativistic strength (rgd only)");
    auto* alpha_opt = run_cmd->add_option("--alpha", run_alpha, "Interpolation in [0,1] (rgd only)");
    run_cmd->add_option("--iters", run_iters, "Iteration budget");
    run_cmd->add_option("--grad-tol", run_grad_tol, "Stop when ||grad|| <= tol (0 disables)");
    run_cmd->add_option("--f-tol", run_f_tol, "Stop when f <= tol (0 disables)");
    run_cmd->add_option("--out", run_out, "Trace CSV path");

    // tune --------------------------------------------------------------
    auto* tune_cmd = app.add_subcommand("tune", "Seeded random hyperparameter search");
    tune_cmd->configurable();
    std::string tune_problem = "corr_quad", tune_method = "rgd", tune_out = ".";
    std::int64_t tune_budget = 300, tune_iters = 500;
    std::uint64_t tune_seed = env_seed_default();
    tune_cmd->add_option("--problem", tune_problem, "Problem name");
    tune_cmd->add_option("--method", tune_method, "gd|cm|nag|rgd");
    tune_cmd->add_option("--budget", tune_budget, "Number of trials");
    tune_cmd->add_option("--iters", tune_iters, "Iterations per trial");
    tune_cmd->add_option("--seed", tune_seed, "Master seed (default: CONFOPT_SEED or 42)");
    tune_cmd->add_option("--out-dir", tune_out, "Output directory");

    // stability ----------------------------------------------------------
    auto* stab_cmd = app.add_subcommand("stability", "Eigenvalue loci and stability thresholds");
    stab_cmd->configurable();
    double stab_m = 1.0, stab_lambda = 1.0, stab_hmax = 2.5;
    int stab_grid = 200;
    std::vector<double> stab_mus;
    std::string stab_out = ".";
    stab_cmd->add_option("--mass", stab_m, "Mass m");
    stab_cmd->add_option("--lambda", stab_lambda, "Quadratic curvature");
    stab_cmd->add_option("--h-max", stab_hmax, "Largest step size in the locus sweep");
    stab_cmd->add_option("--grid", stab_grid, "Locus grid points");
    stab_cmd->add_option("--mu", stab_mus, "Momentum values for the threshold table");
    stab_cmd->add_option("--out-dir", stab_out, "Output directory");

    // diagnose -----------------------------------------------------------
    auto* diag_cmd = app.add_subcommand("diagnose", "Structural invariant checks (CI gate)");
    std::string diag_out;
    diag_cmd->add_option("--out", diag_out, "JSON report path (optional)");

    // matcomp ------------------------------------------------------------
    auto* mc_cmd = app.add_subcommand("matcomp", "Matrix-completion benchmark");
    mc_cmd->configurable();
    int mc_n = 100, mc_r = 5, mc_iters = 500;
    double mc_s = 0.3;
    std::uint64_t mc_seed = env_seed_default();
    std::int64_t mc_tune_budget = 0, mc_tune_iters = 100;
    std::string mc_out = "matcomp.csv";
    mc_cmd->add_option("--n", mc_n, "Matrix side");
    mc_cmd->add_option("--rank", mc_r, "Ground-truth rank");
    mc_cmd->add_option("--sampling", mc_s, "Observation fraction");
    mc_cmd->add_option("--seed", mc_seed, "Instance/init seed (default: CONFOPT_SEED or 42)");
    mc_cmd->add_option("--iters", mc_iters, "Outer iterations");
    mc_cmd->add_option("--tune-budget", mc_tune_budget,
                       "Random-search trials per method (0 = use built-in params)");
    mc_cmd->add_option("--tune-iters", mc_tune_iters, "Outer iterations per tuning trial");
    mc_cmd->add_option("--out", mc_out, "Loss CSV path");

    // problems -----------------------------------------------------------
    auto* prob_cmd = app.add_subcommand("problems", "List available problem names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) {
            const Method method = parse_method(run_method);
            if (method != Method::RGD && (delta_opt->count() > 0 || alpha_opt->count() > 0)) {
                std::cerr << "error: --delta/--alpha apply to rgd only\n";
                return kExitUsage;
            }
            return cmd_run(run_problem, run_method,
                           OptimizerParams(run_eps, run_mu, run_delta, run_alpha), run_iters,
                           run_grad_tol, run_f_tol, run_out);
        }
        if (tune_cmd->parsed())
            return cmd_tune(tune_problem, tune_method, tune_budget, tune_iters, tune_seed,
                            tune_out);
        if (stab_cmd->parsed())
            return cmd_stability(stab_m, stab_lambda, stab_hmax, stab_grid, stab_mus, stab_out);
        if (diag_cmd->parsed()) return cmd_diagnose(diag_out);
        if (mc_cmd->parsed())
            return cmd_matcomp(mc_n, mc_r, mc_s, mc_seed, mc_iters, mc_tune_budget,
                               mc_tune_iters, mc_out);
        if (prob_cmd->parsed()) {
            for (const auto& name : problem_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
