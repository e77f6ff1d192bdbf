// Acceptance suite: one self-contained criterion per function, one PASS/FAIL
// line each. Usage: acceptance [N ...] runs the selected criteria (all when
// none are given); the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trunclap/closed_form.hpp"
#include "trunclap/eigen.hpp"
#include "trunclap/superlinear.hpp"
#include "trunclap/verify.hpp"

using namespace trunclap;

namespace {

const double kPi = std::acos(-1.0);

struct Outcome {
    bool passed = false;
    std::string detail;
};

// 1. Hardy-type eigenvalue at gamma = 2: residual of the closed-form pair
//    (lambda = (k-2)^2/4, u = -ln r / r^{(k-2)/2}) below 1e-10 at 200
//    log-spaced radii in (1e-6, 1), k in {3,4,5,8}.
Outcome criterion_1() {
    double worst = 0.0;
    for (int k : {3, 4, 5, 8}) {
        const Gamma2Eigenpair pair = closed_form_eigen_gamma2(k);
        for (int i = 0; i < 200; ++i) {
            const double r = 1e-6 * std::pow(1e6, i / 200.0);
            const RadialJet jet = eval_closed_form(pair.eigenfunction, r);
            const double res = std::abs(residual_eigen_scaled(
                pair.eigenfunction.params, jet, pair.lambda, PkSign::plus));
            worst = std::max(worst, res);
        }
    }
    std::ostringstream detail;
    detail << "max scaled residual " << worst << " (tol 1e-10, k in {3,4,5,8}, 200 radii)";
    return {worst < 1e-10, detail.str()};
}

// 2. gamma -> 2^- convergence: k = 4, lambda_fem monotone decreasing over
//    gamma in {1.5, 1.9, 1.99} and lambda_fem(1.99) in [1.0, 1.15].
Outcome criterion_2() {
    const GradedMesh mesh = build_mesh(1e-8, 4000, 0.85);
    std::vector<double> lambdas;
    for (double gamma : {1.5, 1.9, 1.99})
        lambdas.push_back(solve_eigen_fem(ProblemParams{5, 4, gamma, {}, {}}, mesh).lambda);
    const bool monotone = lambdas[0] > lambdas[1] && lambdas[1] > lambdas[2];
    const bool window = lambdas[2] >= 1.0 && lambdas[2] <= 1.15;
    std::ostringstream detail;
    detail << "lambda(1.5) = " << lambdas[0] << " > lambda(1.9) = " << lambdas[1]
           << " > lambda(1.99) = " << lambdas[2] << " in [1.0, 1.15]";
    return {monotone && window, detail.str()};
}

// 3. Classical limits: k=3, gamma=0 within 1e-3 of pi^2 (fem, n=4000) and
//    1e-6 (shooting); k=1, gamma=0 within 1e-4 of pi^2/4 and >= 2.
Outcome criterion_3() {
    const GradedMesh mesh = build_mesh(1e-8, 4000, 0.85);
    const double fem3 = solve_eigen_fem(ProblemParams{4, 3, 0.0, {}, {}}, mesh).lambda;
    const double shoot3 =
        solve_eigen_shooting(ProblemParams{4, 3, 0.0, {}, {}}, {5.0, 15.0}).lambda;
    const double fem1 = solve_eigen_fem(ProblemParams{3, 1, 0.0, {}, {}}, mesh).lambda;
    const bool ok = std::abs(fem3 - kPi * kPi) < 1e-3 &&
                    std::abs(shoot3 - kPi * kPi) < 1e-6 &&
                    std::abs(fem1 - kPi * kPi / 4.0) < 1e-4 && fem1 >= 2.0;
    std::ostringstream detail;
    detail << "fem k=3: " << fem3 << " (pi^2 = " << kPi * kPi << "), shooting: " << shoot3
           << ", fem k=1: " << fem1 << " (pi^2/4 = " << kPi * kPi / 4.0 << ", bound 2)";
    return {ok, detail.str()};
}

// 4. Degeneration lambda -> 0: (k, gamma) = (3, 2.5) and (1, 1.5),
//    lambda_fem strictly decreasing over r_min in {1e-2, 1e-4, 1e-6} with
//    lambda(1e-6) < 0.5 lambda(1e-2).
Outcome criterion_4() {
    FemOptions demo;
    demo.allow_gamma_ge2 = true;
    bool ok = true;
    std::ostringstream detail;
    for (auto [k, gamma] : {std::pair<int, double>{3, 2.5}, {1, 1.5}}) {
        std::vector<double> lambdas;
        for (double r_min : {1e-2, 1e-4, 1e-6})
            lambdas.push_back(solve_eigen_fem(ProblemParams{k + 1, k, gamma, {}, {}},
                                              build_mesh(r_min, 2000, 0.85), demo)
                                  .lambda);
        const bool strict = lambdas[0] > lambdas[1] && lambdas[1] > lambdas[2];
        const bool halved = lambdas[2] < 0.5 * lambdas[0];
        ok = ok && strict && halved;
        detail << "(k=" << k << ", gamma=" << gamma << "): " << lambdas[0] << " > " << lambdas[1]
               << " > " << lambdas[2] << "; ";
    }
    return {ok, detail.str()};
}

// 5. lambda = +infinity for P_k^-: supersolutions for (gamma, mu) in
//    {0,1,2,3} x {0.5,5,50}, k=2, N=3: scaled residual < 1e-10 at 100 radii
//    and the branch/sign structure holds.
Outcome criterion_5() {
    double worst = 0.0;
    bool structure = true;
    for (double gamma : {0.0, 1.0, 2.0, 3.0}) {
        for (double mu : {0.5, 5.0, 50.0}) {
            const ProblemParams params{3, 2, gamma, {}, {}};
            const ClosedFormSolution sol = pkm_supersolution(params, mu);
            // keep exp(mu/(k(gamma-2)) r^{2-gamma}) representable
            double r_lo = 1e-3;
            if (gamma > 2.0)
                r_lo = std::max(r_lo,
                                std::pow(mu / (params.k * (gamma - 2.0) * 600.0),
                                         1.0 / (gamma - 2.0)));
            const RadialProfile prof = sample_closed_form(sol, log_spaced(r_lo, 1.0, 100));
            for (std::size_t i = 0; i < prof.size(); ++i) {
                const RadialJet jet = jet_at(prof, i);
                worst = std::max(worst, std::abs(residual_eigen_scaled(sol.params, jet, mu,
                                                                       PkSign::minus)));
            }
            structure = structure && check_convexity_structure(prof).passed;
        }
    }
    std::ostringstream detail;
    detail << "max scaled residual " << worst << " (tol 1e-10), branch/sign structure "
           << (structure ? "holds" : "FAILS");
    return {worst < 1e-10 && structure, detail.str()};
}

// 6. Picard dichotomy: k=3, gamma=0, f = -1, b = 0: convergence in <= 200
//    iterations at mu = 0.9 pi^2 with equation residual < 1e-6 and sign
//    structure; divergence report at mu = 1.1 pi^2.
Outcome criterion_6() {
    const ProblemParams params{4, 3, 0.0, {}, {}};
    const GradedMesh mesh = build_mesh(1e-6, 1500, 0.85);
    RadialProfile f;
    f.mesh = mesh;
    f.values.assign(mesh.n_nodes(), -1.0);

    const PicardResult low = picard_solve(params, 0.9 * kPi * kPi, f, 0.0);
    const PicardResult high = picard_solve(params, 1.1 * kPi * kPi, f, 0.0);

    double residual = 0.0;
    bool signs = true;
    if (low.status == PicardResult::Status::converged) {
        for (std::size_t i = 0; i < low.u.size(); ++i) {
            const RadialJet jet = jet_at(low.u, i);
            const double r = jet.r;
            const double res = eval_pk_plus(params, jet) +
                               0.9 * kPi * kPi * jet.u * std::pow(r, -params.gamma) +
                               std::pow(r, -params.gamma);
            residual = std::max(residual, std::abs(res));
            signs = signs && jet.du <= 1e-8 && jet.d2u - jet.du / r >= -1e-8;
        }
    }
    const bool ok = low.status == PicardResult::Status::converged && low.iterations <= 200 &&
                    residual < 1e-6 && signs &&
                    high.status == PicardResult::Status::diverged;
    std::ostringstream detail;
    detail << "0.9 pi^2: " << (low.status == PicardResult::Status::converged ? "converged" : "?")
           << " in " << low.iterations << " iters, residual " << residual
           << "; 1.1 pi^2: "
           << (high.status == PicardResult::Status::diverged ? "diverged" : "NOT diverged");
    return {ok, detail.str()};
}

// 7. Closed-form P_k^- families: 20 random admissible members per family:
//    residual < 1e-10 (scaled), c round trip < 1e-10 relative, limit data
//    matches the classifier within 1% / 2%.
Outcome criterion_7() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_res = 0.0, worst_c = 0.0, worst_exp = 0.0, worst_const = 0.0;
    bool tags_ok = true;

    for (int family = 0; family < 3; ++family) {
        for (int trial = 0; trial < 20; ++trial) {
            const int k = 2 + trial % 3;
            double p, mu, c;
            // classification needs the asymptote established by r = 3e-3:
            // keep the correction exponent |2 - mu(p-1)/k| >= 1 away from 0
            // and the constants moderate.
            if (family == 0) {
                p = 1.6 + 1.4 * unif(rng);
                const double A = 0.15 + 0.85 * unif(rng);
                mu = A * k / (p - 1.0);
                c = 0.5 + 1.5 * unif(rng);
            } else if (family == 1) {
                p = 1.8 + 1.4 * unif(rng);
                mu = 2.0 * k / (p - 1.0);
                c = -0.05 + 0.1 * unif(rng);
            } else {
                p = 2.0 + 2.0 * unif(rng);
                const double A = 3.0 + 1.0 * unif(rng);
                mu = A * k / (p - 1.0);
                const double B = mu - 2.0 * k / (p - 1.0);
                c = (-0.3 + 0.6 * unif(rng)) / B;
            }
            const ProblemParams params{k + 1, k, 2.0, mu, p};
            const ClosedFormSolution sol = make_pkm_closed_form(params, c);

            // residual on (1e-6, valid_radius)
            const double hi = std::min(sol.valid_radius * 0.999, 0.5);
            const RadialProfile res_prof = sample_closed_form(sol, log_spaced(1e-6, hi, 100));
            for (std::size_t i = 0; i < res_prof.size(); ++i)
                worst_res = std::max(
                    worst_res, std::abs(residual_superlinear_scaled(
                                   params, jet_at(res_prof, i), PkSign::minus)));

            // c round trip through (r0, u0)
            const double r0 = 0.7 * hi;
            const ClosedFormSolution back =
                pkm_solution_from_data(params, r0, eval_closed_form(sol, r0).u);
            worst_c = std::max(worst_c,
                               std::abs(back.c - sol.c) / std::max(1.0, std::abs(sol.c)));

            // classifier vs analytic limit on a profile sampled to 1e-5
            const LimitData lim = pkm_limit_constant(sol);
            const RadialProfile cls_prof = sample_closed_form(sol, log_spaced(1e-5, hi, 400));
            const AsymptoticClass cls = classify_asymptotics(cls_prof, params);
            worst_exp = std::max(worst_exp,
                                 std::abs(cls.exponent - lim.exponent) / lim.exponent);
            worst_const = std::max(
                worst_const, std::abs(cls.leading_constant - lim.constant) / lim.constant);
            const bool tag_ok =
                (family == 0 && cls.tag == AsymptoticClass::Tag::exp_mu_over_k) ||
                (family == 1 && cls.tag == AsymptoticClass::Tag::log_corrected &&
                 std::abs(cls.log_power - lim.log_power) < 1e-12) ||
                (family == 2 && cls.tag == AsymptoticClass::Tag::exp_scaling);
            tags_ok = tags_ok && tag_ok;
        }
    }
    const bool ok = worst_res < 1e-10 && worst_c < 1e-10 && worst_exp <= 0.01 &&
                    worst_const <= 0.02 && tags_ok;
    std::ostringstream detail;
    detail << "residual " << worst_res << ", c round-trip " << worst_c << ", exponent err "
           << worst_exp << " (tol 1%), constant err " << worst_const << " (tol 2%), tags "
           << (tags_ok ? "ok" : "WRONG");
    return {ok, detail.str()};
}

// 8. Exact scaling solution for P_k^+: (k, mu) = (4, 0.75), p in {2, 6}:
//    residual < 1e-10, inward integration from r0 = 0.5 tracks K r^{-2/(p-1)}
//    to r = 1e-4 within rel 1e-6, no branch-crossing event.
Outcome criterion_8() {
    double worst_res = 0.0, worst_track = 0.0;
    bool no_events = true;
    for (double p : {2.0, 6.0}) {
        const ProblemParams params{5, 4, 2.0, 0.75, p};
        const ClosedFormSolution sol = make_pkp_scaling(params);
        const double s = 2.0 / (p - 1.0);
        const ExponentData exps = compute_exponents(params);

        const RadialProfile prof = sample_closed_form(sol, log_spaced(1e-6, 1.0, 100));
        for (std::size_t i = 0; i < prof.size(); ++i)
            worst_res = std::max(worst_res, std::abs(residual_superlinear_scaled(
                                                params, jet_at(prof, i), PkSign::plus)));

        const InitialData data = pkp_initial_data(params, DataRecipe::scaling, 0.5);
        IntegrateOptions opts;
        opts.rtol = 1e-12;
        opts.atol = 1e-14;
        const IntegrationResult res =
            integrate_pkp_superlinear(params, data.r0, data.u0, data.du0, 1e-4, opts);
        no_events = no_events && res.completed && res.events.empty();
        for (std::size_t i = 0; i < res.profile.size(); ++i) {
            const double r = res.profile.mesh.nodes[i];
            const double exact = *exps.K * std::pow(r, -s);
            worst_track =
                std::max(worst_track, std::abs(res.profile.values[i] - exact) / exact);
        }
    }
    const bool ok = worst_res < 1e-10 && worst_track <= 1e-6 && no_events;
    std::ostringstream detail;
    detail << "residual " << worst_res << ", tracking rel err " << worst_track
           << " (tol 1e-6), events " << (no_events ? "none" : "FIRED");
    return {ok, detail.str()};
}

// 9. tau^- realization: k=4, mu=0.75, p=3 (p* <= p < p**): the tau^- data
//    recipe from r0 = 0.5 to 1e-4 classifies with exponent within 1% of 0.5.
Outcome criterion_9() {
    const ProblemParams params{5, 4, 2.0, 0.75, 3.0};
    const InitialData data = pkp_initial_data(params, DataRecipe::tau_minus, 0.5);
    const IntegrationResult res =
        integrate_pkp_superlinear(params, data.r0, data.u0, data.du0, 1e-4);
    if (!res.completed) return {false, "integration did not reach r = 1e-4"};
    const AsymptoticClass cls = classify_asymptotics(res.profile, params);
    const double err = std::abs(cls.exponent - 0.5) / 0.5;
    std::ostringstream detail;
    detail << "tag " << tag_name(cls.tag) << ", exponent " << cls.exponent
           << " vs tau^- = 0.5 (rel err " << err << ", tol 1%)";
    return {err <= 0.01 && cls.tag == AsymptoticClass::Tag::exp_tau_minus, detail.str()};
}

// 10. Comparison ordering: the c-ordered case-3 pair and an ordered pair of
//     integrated P_k^+ profiles pass check_comparison; single-node mutations
//     are detected by the checker battery.
Outcome criterion_10() {
    std::ostringstream detail;

    // (a) c-ordered case-3 members, k=2, mu=8, p=3
    const ProblemParams pkm{3, 2, 2.0, 8.0, 3.0};
    const auto v_sol = make_pkm_closed_form(pkm, 0.0);
    const auto u_sol = make_pkm_closed_form(pkm, 1.0);
    const auto radii = log_spaced(1e-4, 0.3, 160);
    const RadialProfile v = sample_closed_form(v_sol, radii);
    const RadialProfile u = sample_closed_form(u_sol, radii);
    const double K3 = std::sqrt(6.0);
    const CheckReport closed =
        check_comparison(u, v, pkm, PkSign::minus, 0.3, 0.95 * K3, 1.05 * K3);
    detail << "case-3 pair: " << (closed.passed ? "ordered" : "NOT ordered");

    // (b) ordered integrated P_k^+ profiles, k=4, mu=0.75, p=6
    const ProblemParams pkp{5, 4, 2.0, 0.75, 6.0};
    const ExponentData exps = compute_exponents(pkp);
    IntegrateOptions opts;
    opts.sample_at = log_spaced(0.05, 0.5, 100);
    const InitialData top = pkp_initial_data(pkp, DataRecipe::scaling, 0.5);
    const IntegrationResult v_res =
        integrate_pkp_superlinear(pkp, 0.5, top.u0, top.du0, 0.05, opts);
    const IntegrationResult u_res =
        integrate_pkp_superlinear(pkp, 0.5, 0.99 * top.u0, 0.99 * top.du0, 0.05, opts);
    RadialProfile ui, vi;
    const auto extract = [&](const IntegrationResult& res, RadialProfile& out) {
        for (std::size_t i = 0; i < res.profile.size(); ++i) {
            const double r = res.profile.mesh.nodes[i];
            for (double w : opts.sample_at)
                if (std::abs(r - w) < 1e-13 * w) {
                    if (!out.mesh.nodes.empty() && out.mesh.nodes.back() >= r) break;
                    out.mesh.nodes.push_back(r);
                    out.values.push_back(res.profile.values[i]);
                    out.deriv.push_back(res.profile.deriv[i]);
                    out.deriv2.push_back(res.profile.deriv2[i]);
                    break;
                }
        }
    };
    extract(u_res, ui);
    extract(v_res, vi);
    CheckReport integrated;
    if (ui.size() == vi.size() && ui.size() > 10) {
        integrated =
            check_comparison(ui, vi, pkp, PkSign::plus, 0.5, 0.5 * *exps.K, 1.5 * *exps.K);
    }
    detail << "; integrated pair: " << (integrated.passed ? "ordered" : "NOT ordered");

    // (c) mutation detection over every node, both corruption signs
    int total = 0, caught = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (double bump : {1e-3, -1e-3}) {
            RadialProfile mutated = u;
            mutated.values[i] *= 1.0 + bump;
            ++total;
            const CheckReport as_sub =
                check_comparison(mutated, u, pkm, PkSign::minus, 0.3, 0.9 * K3, 1.1 * K3);
            const CheckReport as_super =
                check_comparison(u, mutated, pkm, PkSign::minus, 0.3, 0.9 * K3, 1.1 * K3);
            const CheckReport cvx = check_convexity_structure(mutated);
            if (!(as_sub.passed && as_sub.applicable) ||
                !(as_super.passed && as_super.applicable) || !cvx.passed)
                ++caught;
        }
    }
    detail << "; mutations caught " << caught << "/" << total;
    const bool ok = closed.passed && closed.applicable && integrated.passed &&
                    integrated.applicable && caught == total;
    return {ok, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    using Criterion = std::function<Outcome()>;
    const std::vector<std::pair<std::string, Criterion>> criteria = {
        {"hardy-eigenvalue-gamma2", criterion_1},
        {"gamma-to-2-convergence", criterion_2},
        {"classical-limits", criterion_3},
        {"degeneration-lambda-to-0", criterion_4},
        {"pkm-supersolutions", criterion_5},
        {"picard-dichotomy", criterion_6},
        {"pkm-closed-form-families", criterion_7},
        {"pkp-scaling-solution", criterion_8},
        {"tau-minus-realization", criterion_9},
        {"comparison-ordering", criterion_10},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(int(i));

    int failures = 0;
    for (int index : selected) {
        if (index < 1 || index > static_cast<int>(criteria.size())) {
            std::printf("[FAIL] %02d unknown criterion\n", index);
            ++failures;
            continue;
        }
        const auto& [name, run] = criteria[index - 1];
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %02d %-26s %s (%.2fs)\n", outcome.passed ? "PASS" : "FAIL", index,
                    name.c_str(), outcome.detail.c_str(), secs);
        if (!outcome.passed) ++failures;
    }
    return failures;
}
