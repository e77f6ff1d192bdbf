// trunclap: eigenvalues, explicit solutions and asymptotic classification for
// radial equations driven by the truncated Laplacians with singular potentials.
//
// Subcommands: eigen, solve, classify, verify, sweep. Result files are
// deterministic (no timestamps); run metadata goes to a .meta.json sidecar.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trunclap/closed_form.hpp"
#include "trunclap/eigen.hpp"
#include "trunclap/profile_io.hpp"
#include "trunclap/superlinear.hpp"
#include "trunclap/verify.hpp"

using nlohmann::json;
using namespace trunclap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;

struct OutputConfig {
    std::string dir = ".";
    std::string format = "json";
    bool inline_profile = false;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    out << text;
}

void write_sidecar(const std::filesystem::path& target, int argc, char** argv) {
    json meta;
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    meta["invocation"] = cmd.str();
    const auto now = std::chrono::system_clock::now();
    meta["written_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    meta["tool"] = "trunclap";
    write_text(target, meta.dump(2) + "\n");
}

json params_json(const ProblemParams& params) {
    json j;
    j["N"] = params.N;
    j["k"] = params.k;
    j["gamma"] = params.gamma;
    if (params.mu) j["mu"] = *params.mu;
    if (params.p) j["p"] = *params.p;
    return j;
}

json report_json(const CheckReport& report) {
    json j;
    j["name"] = report.name;
    j["passed"] = report.passed;
    j["applicable"] = report.applicable;
    j["worst_violation"] = report.worst_violation;
    j["location_r"] = report.location_r;
    j["tolerance"] = report.tolerance;
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

RadialProfile load_profile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read profile " + path);
    return read_profile_csv(in);
}

void emit_profile(const RadialProfile& profile, const OutputConfig& out,
                  const std::string& stem, json& payload) {
    const std::filesystem::path dir(out.dir);
    std::filesystem::create_directories(dir);
    if (out.inline_profile) {
        payload["profile"] = profile_to_csv(profile);
    } else if (out.format == "json") {
        const std::string name = stem + "_profile.json";
        write_text(dir / name, profile_to_json(profile) + "\n");
        payload["profile"] = name;
    } else {
        const std::string name = stem + "_profile.csv";
        write_text(dir / name, profile_to_csv(profile));
        payload["profile"] = name;
    }
}

int thread_pool_size(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("TRUNCLAP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(n)) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// ---------------------------------------------------------------- eigen ----

struct EigenConfig {
    ProblemParams params;
    std::string method = "fem";
    int n_elems = 2000;
    double r_min = 0.0;  // 0: default per gamma
    double grading = 0.85;
    bool allow_supercritical = false;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    OutputConfig out;
};

double default_r_min(double gamma) { return gamma < 2.0 ? 1e-8 : 1e-6; }

int run_eigen(const EigenConfig& cfg, int argc, char** argv) {
    ProblemParams params = cfg.params;
    if (params.N == 0) params.N = params.k + 1;
    validate(params);

    EigenResult result;
    if (cfg.method == "fem") {
        const double r_min = cfg.r_min > 0.0 ? cfg.r_min : default_r_min(params.gamma);
        const GradedMesh mesh = build_mesh(r_min, cfg.n_elems, cfg.grading);
        FemOptions options;
        options.allow_gamma_ge2 = cfg.allow_supercritical;
        result = solve_eigen_fem(params, mesh, options);
    } else {
        std::pair<double, double> bracket{cfg.bracket_lo, cfg.bracket_hi};
        if (bracket.second <= bracket.first)
            throw std::invalid_argument("shooting requires --bracket-lo < --bracket-hi");
        result = solve_eigen_shooting(params, bracket);
    }

    json payload;
    payload["lambda"] = result.lambda;
    payload["method"] = method_name(result.method);
    payload["residual_sup"] = result.residual_sup;
    payload["iterations"] = result.iterations;
    payload["converged"] = result.converged;
    payload["params"] = params_json(params);
    emit_profile(result.eigenfunction, cfg.out, "eigen", payload);

    const std::filesystem::path dir(cfg.out.dir);
    write_text(dir / "eigen_result.json", payload.dump(2) + "\n");
    write_sidecar(dir / "eigen_result.meta.json", argc, argv);
    std::cout << "lambda = " << format_double(result.lambda) << " (" << method_name(result.method)
              << ", " << result.iterations << " iterations)\n";
    return kExitOk;
}

// ---------------------------------------------------------------- solve ----

struct SolveConfig {
    ProblemParams params;
    std::string op = "pkm";  // pkm | pkp-scaling | pkp | picard
    double r0 = 0.5;
    std::string u0 = "auto-c0";
    bool has_c = false;
    double c = 0.0;
    std::string recipe = "scaling";
    double du0 = 0.0;
    bool has_du0 = false;
    double r_end = 1e-4;
    double amplitude = 1e-4;
    double mu_solve = 0.0;
    double b = 0.0;
    double f_const = -1.0;
    int n_elems = 1500;
    double r_min = 1e-6;
    double grading = 0.85;
    OutputConfig out;
};

json events_json(const std::vector<IntegrationEvent>& events) {
    json arr = json::array();
    for (const auto& ev : events) {
        json e;
        e["type"] = event_name(ev.type);
        e["r"] = ev.r;
        e["detail"] = ev.detail;
        arr.push_back(e);
    }
    return arr;
}

int run_solve(const SolveConfig& cfg, int argc, char** argv) {
    ProblemParams params = cfg.params;
    if (params.N == 0) params.N = params.k + 1;
    validate(params);
    const std::filesystem::path dir(cfg.out.dir);
    std::filesystem::create_directories(dir);
    json payload;
    payload["op"] = cfg.op;
    payload["params"] = params_json(params);

    if (cfg.op == "pkm") {
        ClosedFormSolution sol;
        if (cfg.has_c) {
            sol = make_pkm_closed_form(params, cfg.c);
        } else if (cfg.u0 == "auto-c0") {
            sol = make_pkm_closed_form(params, 0.0, cfg.r0);
        } else {
            sol = pkm_solution_from_data(params, cfg.r0, parse_double(cfg.u0));
        }
        payload["family"] = family_name(sol.family);
        payload["c"] = sol.c;
        payload["valid_radius"] = sol.valid_radius;
        const LimitData lim = pkm_limit_constant(sol);
        payload["limit"] = {{"exponent", lim.exponent},
                            {"log_power", lim.log_power},
                            {"constant", lim.constant}};
        const double hi = std::min(sol.valid_radius * 0.999, cfg.r0);
        const RadialProfile profile = sample_closed_form(sol, log_spaced(cfg.r_end, hi, 400));
        emit_profile(profile, cfg.out, "solution", payload);
        payload["events"] = json::array();
    } else if (cfg.op == "pkp-scaling") {
        const ClosedFormSolution sol = make_pkp_scaling(params);
        payload["family"] = family_name(sol.family);
        payload["c"] = 0.0;
        payload["valid_radius"] = sol.valid_radius;
        const RadialProfile profile = sample_closed_form(sol, log_spaced(cfg.r_end, cfg.r0, 400));
        emit_profile(profile, cfg.out, "solution", payload);
        payload["events"] = json::array();
    } else if (cfg.op == "pkp") {
        InitialData data;
        if (cfg.has_du0) {
            data.r0 = cfg.r0;
            data.u0 = parse_double(cfg.u0);
            data.du0 = cfg.du0;
        } else {
            DataRecipe recipe;
            if (cfg.recipe == "scaling")
                recipe = DataRecipe::scaling;
            else if (cfg.recipe == "tau-minus")
                recipe = DataRecipe::tau_minus;
            else if (cfg.recipe == "tau-plus")
                recipe = DataRecipe::tau_plus;
            else
                throw std::invalid_argument("unknown recipe '" + cfg.recipe + "'");
            data = pkp_initial_data(params, recipe, cfg.r0, cfg.amplitude);
        }
        const IntegrationResult res =
            integrate_pkp_superlinear(params, data.r0, data.u0, data.du0, cfg.r_end);
        payload["completed"] = res.completed;
        payload["initial"] = {{"r0", data.r0}, {"u0", data.u0}, {"du0", data.du0}};
        payload["events"] = events_json(res.events);
        emit_profile(res.profile, cfg.out, "solution", payload);
        // report (not assert) the realized asymptotic class when reachable
        if (res.completed && res.profile.mesh.r_min() <= 1e-4) {
            try {
                const AsymptoticClass cls = classify_asymptotics(res.profile, params);
                payload["realized_class"] = {{"tag", tag_name(cls.tag)},
                                             {"exponent", cls.exponent},
                                             {"log_power", cls.log_power},
                                             {"leading_constant", cls.leading_constant},
                                             {"fit_r2", cls.fit_r2}};
            } catch (const std::exception& e) {
                payload["realized_class"] = std::string("unclassified: ") + e.what();
            }
        }
    } else {  // picard
        const GradedMesh mesh = build_mesh(cfg.r_min, cfg.n_elems, cfg.grading);
        RadialProfile f;
        f.mesh = mesh;
        f.values.assign(mesh.n_nodes(), cfg.f_const);
        const PicardResult res = picard_solve(params, cfg.mu_solve, f, cfg.b);
        payload["status"] = res.status == PicardResult::Status::converged   ? "converged"
                            : res.status == PicardResult::Status::diverged ? "diverged"
                                                                            : "max_iter";
        payload["iterations"] = res.iterations;
        payload["last_delta"] = res.last_delta;
        payload["sup_norm"] = res.sup_norm;
        payload["events"] = json::array();
        emit_profile(res.u, cfg.out, "solution", payload);
    }

    write_text(dir / "solution.json", payload.dump(2) + "\n");
    write_sidecar(dir / "solution.meta.json", argc, argv);
    std::cout << "solve " << cfg.op << " done\n";
    return kExitOk;
}

// -------------------------------------------------------------- classify ----

int run_classify(const std::string& input, const ProblemParams& params_in,
                 const OutputConfig& out, int argc, char** argv) {
    ProblemParams params = params_in;
    if (params.N == 0) params.N = params.k + 1;
    validate(params);
    const RadialProfile profile = load_profile(input);
    const AsymptoticClass cls = classify_asymptotics(profile, params);
    json payload;
    payload["tag"] = tag_name(cls.tag);
    payload["exponent"] = cls.exponent;
    payload["log_power"] = cls.log_power;
    payload["leading_constant"] = cls.leading_constant;
    payload["fit_r2"] = cls.fit_r2;
    payload["window"] = {cls.window_lo, cls.window_hi};
    const std::filesystem::path dir(out.dir);
    std::filesystem::create_directories(dir);
    write_text(dir / "classification.json", payload.dump(2) + "\n");
    write_sidecar(dir / "classification.meta.json", argc, argv);
    std::cout << payload.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- verify ----

struct VerifyConfig {
    std::string input;
    std::string against;
    ProblemParams params;
    std::vector<std::string> checks{"convexity"};
    std::string sign = "plus";
    std::string context = "supersolution";
    double r0 = 0.5;
    double c1 = 0.0, c2 = 0.0;
    OutputConfig out;
};

int run_verify(const VerifyConfig& cfg, int argc, char** argv) {
    ProblemParams params = cfg.params;
    if (params.N == 0) params.N = params.k + 1;
    validate(params);
    const RadialProfile profile = load_profile(cfg.input);
    const PkSign sign = cfg.sign == "minus" ? PkSign::minus : PkSign::plus;
    const SolutionContext context = cfg.context == "subsolution"
                                        ? SolutionContext::subsolution
                                        : SolutionContext::supersolution;

    std::vector<CheckReport> reports;
    for (const std::string& check : cfg.checks) {
        if (check == "convexity") {
            reports.push_back(check_convexity_structure(profile));
        } else if (check == "sign") {
            reports.push_back(check_sign_lemma(profile, params, sign, context));
        } else if (check == "comparison") {
            if (cfg.against.empty())
                throw std::invalid_argument("comparison check needs --against PROFILE");
            const RadialProfile other = load_profile(cfg.against);
            reports.push_back(
                check_comparison(profile, other, params, sign, cfg.r0, cfg.c1, cfg.c2));
        } else {
            throw std::invalid_argument("unknown check '" + check + "'");
        }
    }

    json payload = json::array();
    bool all_passed = true;
    std::printf("%-24s %-8s %-12s %-14s %s\n", "check", "passed", "applicable", "worst",
                "location_r");
    for (const CheckReport& rep : reports) {
        payload.push_back(report_json(rep));
        std::printf("%-24s %-8s %-12s %-14.3e %.6g\n", rep.name.c_str(),
                    rep.passed ? "yes" : "NO", rep.applicable ? "yes" : "NO",
                    rep.worst_violation, rep.location_r);
        all_passed = all_passed && rep.passed && rep.applicable;
    }
    const std::filesystem::path dir(cfg.out.dir);
    std::filesystem::create_directories(dir);
    write_text(dir / "verify_report.json", payload.dump(2) + "\n");
    write_sidecar(dir / "verify_report.meta.json", argc, argv);
    return all_passed ? kExitOk : kExitVerifyFailed;
}

// ----------------------------------------------------------------- sweep ----

struct SweepConfig {
    std::vector<int> k_list{3};
    std::vector<double> gamma_list{0.0};
    std::vector<double> rmin_list;
    int N = 0;
    int n_elems = 2000;
    double grading = 0.85;
    bool allow_supercritical = false;
    OutputConfig out;
};

int run_sweep(const SweepConfig& cfg, int argc, char** argv) {
    struct Point {
        int k;
        double gamma;
        double r_min;
    };
    std::vector<Point> grid;
    for (int k : cfg.k_list)
        for (double gamma : cfg.gamma_list) {
            if (cfg.rmin_list.empty()) {
                grid.push_back({k, gamma, default_r_min(gamma)});
            } else {
                for (double r_min : cfg.rmin_list) grid.push_back({k, gamma, r_min});
            }
        }

    struct Row {
        Point point{};
        double lambda = 0.0;
        int iterations = 0;
        bool converged = false;
        double residual = 0.0;
        std::string error;
    };
    std::vector<Row> rows(grid.size());
    std::atomic<std::size_t> next{0};
    const int workers = thread_pool_size(grid.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= grid.size()) return;
                Row& row = rows[i];
                row.point = grid[i];
                try {
                    ProblemParams params;
                    params.k = grid[i].k;
                    params.N = cfg.N > 0 ? cfg.N : grid[i].k + 1;
                    params.gamma = grid[i].gamma;
                    FemOptions options;
                    options.allow_gamma_ge2 = cfg.allow_supercritical;
                    const EigenResult res = solve_eigen_fem(
                        params, build_mesh(grid[i].r_min, cfg.n_elems, cfg.grading), options);
                    row.lambda = res.lambda;
                    row.iterations = res.iterations;
                    row.converged = res.converged;
                    row.residual = res.residual_sup;
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
        });
    for (auto& t : pool) t.join();

    const std::filesystem::path dir(cfg.out.dir);
    std::filesystem::create_directories(dir);
    if (cfg.out.format == "json") {
        json arr = json::array();
        for (const Row& row : rows) {
            json j;
            j["k"] = row.point.k;
            j["gamma"] = row.point.gamma;
            j["r_min"] = row.point.r_min;
            j["n_elems"] = cfg.n_elems;
            j["grading"] = cfg.grading;
            if (row.error.empty()) {
                j["lambda"] = row.lambda;
                j["iterations"] = row.iterations;
                j["converged"] = row.converged;
                j["residual_sup"] = row.residual;
            } else {
                j["error"] = row.error;
            }
            arr.push_back(j);
        }
        write_text(dir / "sweep.json", arr.dump(2) + "\n");
        write_sidecar(dir / "sweep.meta.json", argc, argv);
    } else {
        std::ostringstream csv;
        csv << "k,gamma,r_min,n_elems,grading,lambda,iterations,converged,residual_sup,error\n";
        for (const Row& row : rows) {
            csv << row.point.k << ',' << format_double(row.point.gamma) << ','
                << format_double(row.point.r_min) << ',' << cfg.n_elems << ','
                << format_double(cfg.grading) << ',';
            if (row.error.empty())
                csv << format_double(row.lambda) << ',' << row.iterations << ','
                    << (row.converged ? 1 : 0) << ',' << format_double(row.residual) << ',';
            else
                csv << ",,,," << row.error;
            csv << "\n";
        }
        write_text(dir / "sweep.csv", csv.str());
        write_sidecar(dir / "sweep.csv.meta.json", argc, argv);
    }
    std::cout << "sweep: " << grid.size() << " points, " << workers << " workers\n";
    return kExitOk;
}

void add_output_options(CLI::App* cmd, OutputConfig& out) {
    cmd->add_option("--out", out.dir, "output directory")->capture_default_str();
    cmd->add_option("--format", out.format, "profile format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_flag("--inline-profile", out.inline_profile,
                  "embed the profile in the result JSON instead of a file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial solvers for truncated-Laplacian equations in the punctured ball"};
    app.require_subcommand(1);

    EigenConfig eigen_cfg;
    CLI::App* eigen_cmd = app.add_subcommand("eigen", "principal eigenvalue solve");
    eigen_cmd->add_option("--k", eigen_cfg.params.k, "truncation index")->required();
    eigen_cmd->add_option("--N", eigen_cfg.params.N, "ambient dimension (default k+1)");
    eigen_cmd->add_option("--gamma", eigen_cfg.params.gamma, "potential exponent")->required();
    eigen_cmd->add_option("--method", eigen_cfg.method, "fem or shooting")
        ->check(CLI::IsMember({"fem", "shooting"}))
        ->capture_default_str();
    eigen_cmd->add_option("--n", eigen_cfg.n_elems, "number of elements")->capture_default_str();
    eigen_cmd->add_option("--r-min", eigen_cfg.r_min, "truncation radius (default per gamma)");
    eigen_cmd->add_option("--grading", eigen_cfg.grading, "mesh grading in (0,1]")
        ->capture_default_str();
    eigen_cmd->add_flag("--allow-supercritical", eigen_cfg.allow_supercritical,
                        "permit gamma >= 2 demonstration solves");
    eigen_cmd->add_option("--bracket-lo", eigen_cfg.bracket_lo, "shooting bracket lower end");
    eigen_cmd->add_option("--bracket-hi", eigen_cfg.bracket_hi, "shooting bracket upper end");
    add_output_options(eigen_cmd, eigen_cfg.out);

    SolveConfig solve_cfg;
    CLI::App* solve_cmd = app.add_subcommand("solve", "explicit or integrated solutions");
    solve_cmd->add_option("--op", solve_cfg.op, "pkm | pkp-scaling | pkp | picard")
        ->check(CLI::IsMember({"pkm", "pkp-scaling", "pkp", "picard"}))
        ->capture_default_str();
    solve_cmd->add_option("--k", solve_cfg.params.k, "truncation index")->required();
    solve_cmd->add_option("--N", solve_cfg.params.N, "ambient dimension (default k+1)");
    solve_cmd->add_option("--gamma", solve_cfg.params.gamma, "potential exponent (pkm: 2)")
        ->capture_default_str();
    double mu_opt = 0.0, p_opt = 0.0;
    auto* mu_flag = solve_cmd->add_option("--mu", mu_opt, "potential strength");
    auto* p_flag = solve_cmd->add_option("--p", p_opt, "superlinear exponent");
    solve_cmd->add_option("--r0", solve_cfg.r0, "data radius")->capture_default_str();
    solve_cmd->add_option("--u0", solve_cfg.u0, "data value or 'auto-c0'")->capture_default_str();
    auto* c_flag = solve_cmd->add_option("--c", solve_cfg.c, "family constant (pkm)");
    auto* du0_flag = solve_cmd->add_option("--du0", solve_cfg.du0, "data slope (pkp)");
    solve_cmd->add_option("--recipe", solve_cfg.recipe, "scaling | tau-minus | tau-plus")
        ->capture_default_str();
    solve_cmd->add_option("--r-end", solve_cfg.r_end, "integration target radius")
        ->capture_default_str();
    solve_cmd->add_option("--amplitude", solve_cfg.amplitude, "tau recipe amplitude")
        ->capture_default_str();
    solve_cmd->add_option("--mu-solve", solve_cfg.mu_solve, "picard: mu coefficient");
    solve_cmd->add_option("--b", solve_cfg.b, "picard: boundary value")->capture_default_str();
    solve_cmd->add_option("--f-const", solve_cfg.f_const, "picard: constant right-hand side")
        ->capture_default_str();
    solve_cmd->add_option("--n", solve_cfg.n_elems, "picard mesh elements")->capture_default_str();
    solve_cmd->add_option("--r-min", solve_cfg.r_min, "picard mesh r_min")->capture_default_str();
    solve_cmd->add_option("--grading", solve_cfg.grading, "picard mesh grading")
        ->capture_default_str();
    add_output_options(solve_cmd, solve_cfg.out);

    std::string classify_input;
    ProblemParams classify_params;
    double cl_mu = 0.0, cl_p = 0.0;
    OutputConfig classify_out;
    CLI::App* classify_cmd = app.add_subcommand("classify", "asymptotic class of a profile CSV");
    classify_cmd->add_option("--in", classify_input, "profile CSV")->required();
    classify_cmd->add_option("--k", classify_params.k, "truncation index")->required();
    classify_cmd->add_option("--N", classify_params.N, "ambient dimension (default k+1)");
    auto* cl_mu_flag = classify_cmd->add_option("--mu", cl_mu, "potential strength");
    auto* cl_p_flag = classify_cmd->add_option("--p", cl_p, "superlinear exponent");
    add_output_options(classify_cmd, classify_out);

    VerifyConfig verify_cfg;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run lemma checkers on a profile");
    verify_cmd->add_option("--in", verify_cfg.input, "profile CSV")->required();
    verify_cmd->add_option("--against", verify_cfg.against, "second profile (comparison)");
    verify_cmd->add_option("--k", verify_cfg.params.k, "truncation index")->required();
    verify_cmd->add_option("--N", verify_cfg.params.N, "ambient dimension (default k+1)");
    verify_cmd->add_option("--gamma", verify_cfg.params.gamma, "potential exponent")
        ->capture_default_str();
    double vf_mu = 0.0, vf_p = 0.0;
    auto* vf_mu_flag = verify_cmd->add_option("--mu", vf_mu, "potential strength");
    auto* vf_p_flag = verify_cmd->add_option("--p", vf_p, "superlinear exponent");
    verify_cmd->add_option("--checks", verify_cfg.checks, "convexity, sign, comparison")
        ->delimiter(',')
        ->capture_default_str();
    verify_cmd->add_option("--sign", verify_cfg.sign, "plus or minus")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    verify_cmd->add_option("--context", verify_cfg.context, "supersolution or subsolution")
        ->check(CLI::IsMember({"supersolution", "subsolution"}))
        ->capture_default_str();
    verify_cmd->add_option("--r0", verify_cfg.r0, "comparison radius")->capture_default_str();
    verify_cmd->add_option("--c1", verify_cfg.c1, "comparison lower growth constant");
    verify_cmd->add_option("--c2", verify_cfg.c2, "comparison upper growth constant");
    add_output_options(verify_cmd, verify_cfg.out);

    SweepConfig sweep_cfg;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "eigenvalue sweep over a parameter grid");
    sweep_cmd->add_option("--k-list", sweep_cfg.k_list, "k values")->delimiter(',');
    sweep_cmd->add_option("--gamma-list", sweep_cfg.gamma_list, "gamma values")->delimiter(',');
    sweep_cmd->add_option("--rmin-list", sweep_cfg.rmin_list, "r_min values")->delimiter(',');
    sweep_cmd->add_option("--N", sweep_cfg.N, "ambient dimension (default k+1)");
    sweep_cmd->add_option("--n", sweep_cfg.n_elems, "elements per solve")->capture_default_str();
    sweep_cmd->add_option("--grading", sweep_cfg.grading, "mesh grading")->capture_default_str();
    sweep_cmd->add_flag("--allow-supercritical", sweep_cfg.allow_supercritical,
                        "permit gamma >= 2 demonstration solves");
    add_output_options(sweep_cmd, sweep_cfg.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (eigen_cmd->parsed()) return run_eigen(eigen_cfg, argc, argv);
        if (solve_cmd->parsed()) {
            if (*mu_flag) solve_cfg.params.mu = mu_opt;
            if (*p_flag) solve_cfg.params.p = p_opt;
            solve_cfg.has_c = c_flag->count() > 0;
            solve_cfg.has_du0 = du0_flag->count() > 0;
            return run_solve(solve_cfg, argc, argv);
        }
        if (classify_cmd->parsed()) {
            if (*cl_mu_flag) classify_params.mu = cl_mu;
            if (*cl_p_flag) classify_params.p = cl_p;
            return run_classify(classify_input, classify_params, classify_out, argc, argv);
        }
        if (verify_cmd->parsed()) {
            if (*vf_mu_flag) verify_cfg.params.mu = vf_mu;
            if (*vf_p_flag) verify_cfg.params.p = vf_p;
            return run_verify(verify_cfg, argc, argv);
        }
        if (sweep_cmd->parsed()) return run_sweep(sweep_cfg, argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitConfigError;
}
