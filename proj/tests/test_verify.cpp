#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "trunclap/closed_form.hpp"
#include "trunclap/eigen.hpp"
#include "trunclap/superlinear.hpp"
#include "trunclap/verify.hpp"

using namespace trunclap;

namespace {

// v(r) = 1 - r^beta is an operator supersolution of P_k^+ for beta <= 2-gamma
RadialProfile one_minus_power(double beta, const std::vector<double>& radii) {
    RadialProfile p;
    p.mesh = mesh_from_nodes(radii);
    for (double r : radii) {
        p.values.push_back(1.0 - std::pow(r, beta));
        p.deriv.push_back(-beta * std::pow(r, beta - 1.0));
        p.deriv2.push_back(-beta * (beta - 1.0) * std::pow(r, beta - 2.0));
    }
    return p;
}

}  // namespace

TEST_CASE("sign lemma: P_k^+ supersolutions are non-increasing") {
    const ProblemParams params{3, 2, 1.0, {}, {}};
    const RadialProfile v = one_minus_power(0.5, log_spaced(1e-6, 1.0, 200));
    const CheckReport rep =
        check_sign_lemma(v, params, PkSign::plus, SolutionContext::supersolution);
    CHECK(rep.applicable);
    CHECK(rep.passed);
}

TEST_CASE("sign lemma: constant profiles pass trivially") {
    const ProblemParams params{3, 2, 0.0, {}, {}};
    RadialProfile c;
    c.mesh = mesh_from_nodes(log_spaced(1e-4, 1.0, 50));
    c.values.assign(50, 2.0);
    c.deriv.assign(50, 0.0);
    c.deriv2.assign(50, 0.0);
    for (auto context : {SolutionContext::supersolution, SolutionContext::subsolution})
        for (auto sign : {PkSign::plus, PkSign::minus}) {
            const CheckReport rep = check_sign_lemma(c, params, sign, context);
            CHECK(rep.applicable);
            CHECK(rep.passed);
        }
}

TEST_CASE("sign lemma: corrupted profile is detected") {
    const ProblemParams params{3, 2, 1.0, {}, {}};
    RadialProfile v = one_minus_power(0.5, log_spaced(1e-6, 1.0, 200));
    v.deriv[120] = 0.1;  // u' > 0 injected at one node
    const CheckReport rep =
        check_sign_lemma(v, params, PkSign::plus, SolutionContext::supersolution);
    // detected either as a conclusion failure or as a broken hypothesis
    CHECK(!(rep.passed && rep.applicable));
}

TEST_CASE("sign lemma: neighborhood variant for P_k^-") {
    // v = e^{-r^2}: P_2^-(D^2 v) <= 0, v' <= 0 near zero
    const ProblemParams params{3, 2, 0.0, {}, {}};
    const ClosedFormSolution sol = pkm_supersolution(params, 4.0);
    const RadialProfile prof = sample_closed_form(sol, log_spaced(1e-5, 1.0, 200));
    const CheckReport rep =
        check_sign_lemma(prof, params, PkSign::minus, SolutionContext::supersolution);
    CHECK(rep.applicable);
    CHECK(rep.passed);
    CHECK(rep.note.find("neighborhood") != std::string::npos);
}

TEST_CASE("convexity structure checker") {
    // gamma = 2 closed form, k = 4
    {
        const Gamma2Eigenpair pair = closed_form_eigen_gamma2(4);
        const RadialProfile prof =
            sample_closed_form(pair.eigenfunction, log_spaced(1e-6, 1.0, 300));
        CHECK(check_convexity_structure(prof).passed);
    }
    // pkm case 1 on (0, valid_radius)
    {
        const auto sol = make_pkm_closed_form(ProblemParams{3, 2, 2.0, 1.0, 2.0}, 1.0);
        const RadialProfile prof =
            sample_closed_form(sol, log_spaced(1e-6, 0.999 * sol.valid_radius, 300));
        CHECK(check_convexity_structure(prof).passed);
    }
    // u = +ln r increases: fails, with a location
    {
        RadialProfile bad;
        const auto radii = log_spaced(1e-3, 1.0, 80);
        bad.mesh = mesh_from_nodes(radii);
        for (double r : radii) {
            bad.values.push_back(std::log(r));
            bad.deriv.push_back(1.0 / r);
            bad.deriv2.push_back(-1.0 / (r * r));
        }
        const CheckReport rep = check_convexity_structure(bad);
        CHECK(!rep.passed);
        CHECK(rep.worst_violation > rep.tolerance);
    }
}

TEST_CASE("comparison principle checker on c-ordered case-3 members") {
    const ProblemParams params{3, 2, 2.0, 8.0, 3.0};
    const auto v_sol = make_pkm_closed_form(params, 0.0);   // scaling member
    const auto u_sol = make_pkm_closed_form(params, 1.0);   // smaller near zero
    const auto radii = log_spaced(1e-4, 0.3, 200);
    const RadialProfile v = sample_closed_form(v_sol, radii);
    const RadialProfile u = sample_closed_form(u_sol, radii);
    const double K3 = std::sqrt(6.0);
    const CheckReport rep =
        check_comparison(u, v, params, PkSign::minus, 0.3, 0.95 * K3, 1.05 * K3);
    CHECK(rep.applicable);
    CHECK(rep.passed);

    // u = v passes with zero violation
    const CheckReport same =
        check_comparison(v, v, params, PkSign::minus, 0.3, 0.95 * K3, 1.05 * K3);
    CHECK(same.applicable);
    CHECK(same.passed);
    CHECK(same.worst_violation == doctest::Approx(0.0));

    // hypothesis failure is inapplicable, not failed: c1 above v
    const CheckReport inapp =
        check_comparison(u, v, params, PkSign::minus, 0.3, 2.0 * K3, 2.5 * K3);
    CHECK(!inapp.applicable);

    // ordering hypothesis violated at r0: u > v there
    const CheckReport flipped =
        check_comparison(v, u, params, PkSign::minus, 0.3, 0.9 * K3, 1.1 * K3);
    CHECK(!flipped.applicable);
}

TEST_CASE("comparison of ordered integrated P_k^+ profiles") {
    const ProblemParams params{5, 4, 2.0, 0.75, 6.0};
    const ExponentData e = compute_exponents(params);
    REQUIRE(e.K);
    const double r0 = 0.5, r_end = 0.05;
    const double s = 0.4;
    IntegrateOptions opts;
    opts.sample_at = log_spaced(r_end, r0, 120);
    const InitialData top = pkp_initial_data(params, DataRecipe::scaling, r0);
    const IntegrationResult v_res =
        integrate_pkp_superlinear(params, r0, top.u0, top.du0, r_end, opts);
    const IntegrationResult u_res = integrate_pkp_superlinear(
        params, r0, 0.99 * top.u0, 0.99 * top.du0, r_end, opts);
    REQUIRE(v_res.completed);
    REQUIRE(u_res.completed);

    // common mesh via the shared sample grid
    RadialProfile u, v;
    auto extract = [&](const IntegrationResult& res, RadialProfile& out) {
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
    extract(v_res, v);
    extract(u_res, u);
    REQUIRE(u.size() == v.size());

    const CheckReport rep = check_comparison(u, v, params, PkSign::plus, r0, 0.5 * *e.K,
                                             1.5 * *e.K);
    CHECK(rep.applicable);
    CHECK(rep.passed);
    (void)s;
}

TEST_CASE("mutation detection: single-node corruption is caught") {
    const ProblemParams params{3, 2, 2.0, 8.0, 3.0};
    const auto u_sol = make_pkm_closed_form(params, 1.0);
    const auto radii = log_spaced(1e-4, 0.3, 120);
    const RadialProfile u0 = sample_closed_form(u_sol, radii);
    const double K3 = std::sqrt(6.0);

    // sanity: the pristine profile passes the whole battery
    CHECK(check_comparison(u0, u0, params, PkSign::minus, 0.3, 0.9 * K3, 1.1 * K3).passed);
    CHECK(check_convexity_structure(u0).passed);

    int detected = 0, total = 0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        for (double bump : {1e-3, -1e-3}) {
            RadialProfile u = u0;
            u.values[i] *= 1.0 + bump;
            ++total;
            // run the corrupted profile through both comparison slots plus
            // the structure checks
            const CheckReport as_sub =
                check_comparison(u, u0, params, PkSign::minus, 0.3, 0.9 * K3, 1.1 * K3);
            const CheckReport as_super =
                check_comparison(u0, u, params, PkSign::minus, 0.3, 0.9 * K3, 1.1 * K3);
            const CheckReport cvx = check_convexity_structure(u);
            const CheckReport sgn =
                check_sign_lemma(u, params, PkSign::minus, SolutionContext::supersolution);
            const bool caught = !(as_sub.passed && as_sub.applicable) ||
                                !(as_super.passed && as_super.applicable) ||
                                !cvx.passed || !(sgn.passed && sgn.applicable);
            if (caught) ++detected;
        }
    }
    CHECK(detected == total);
}
