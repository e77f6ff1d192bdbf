#include "trunclap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trunclap {

namespace {

double operator_scale(const ProblemParams& params, const RadialJet& jet) {
    const double tangential = jet.du / jet.r;
    double s = std::max(std::abs(jet.d2u), std::abs((params.k - 1) * tangential));
    s = std::max(s, std::abs(params.k * tangential));
    return std::max(1.0, s);
}

}  // namespace

CheckReport check_sign_lemma(const RadialProfile& profile, const ProblemParams& params,
                             PkSign sign, SolutionContext context, double tol) {
    validate(profile);
    validate(params);
    if (!profile.has_deriv() || !profile.has_deriv2())
        throw std::invalid_argument("check_sign_lemma: profile needs derivatives");

    CheckReport report;
    report.name = std::string("sign_lemma_") + (sign == PkSign::plus ? "plus_" : "minus_") +
                  (context == SolutionContext::supersolution ? "supersolution" : "subsolution");
    report.tolerance = tol;

    // hypothesis: P_k(D^2 u) <= 0 (supersolution) or >= 0 (subsolution)
    double hyp_violation = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const RadialJet jet = jet_at(profile, i);
        const double pk = eval_pk(params, jet, sign).value / operator_scale(params, jet);
        hyp_violation = std::max(
            hyp_violation, context == SolutionContext::supersolution ? pk : -pk);
    }
    if (hyp_violation > tol) {
        report.applicable = false;
        report.note = "differential inequality hypothesis fails (scaled violation " +
                      std::to_string(hyp_violation) + ")";
        return report;
    }

    double dscale = 1.0;
    for (double d : profile.deriv) dscale = std::max(dscale, std::abs(d));

    const bool global_conclusion =
        (sign == PkSign::plus && context == SolutionContext::supersolution) ||
        (sign == PkSign::minus && context == SolutionContext::subsolution);

    if (global_conclusion) {
        // u' <= 0 (plus/supersolution) resp. u' >= 0 (minus/subsolution)
        const double dir = (sign == PkSign::plus) ? 1.0 : -1.0;
        report.worst_violation = 0.0;
        for (std::size_t i = 0; i < profile.size(); ++i) {
            const double viol = dir * profile.deriv[i] / dscale;
            if (viol > report.worst_violation) {
                report.worst_violation = viol;
                report.location_r = profile.mesh.nodes[i];
            }
        }
        report.passed = report.worst_violation <= tol;
        return report;
    }

    // u' has constant sign in a neighborhood of zero, checked on the smallest
    // resolved decade (r_min, 10 r_min].
    const double r_hi = 10.0 * profile.mesh.r_min();
    double worst_pos = 0.0, worst_neg = 0.0;
    double loc_pos = profile.mesh.r_min(), loc_neg = profile.mesh.r_min();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile.mesh.nodes[i] > r_hi) break;
        const double d = profile.deriv[i] / dscale;
        if (-d > worst_pos) {
            worst_pos = -d;  // how badly "u' >= 0" fails
            loc_pos = profile.mesh.nodes[i];
        }
        if (d > worst_neg) {
            worst_neg = d;  // how badly "u' <= 0" fails
            loc_neg = profile.mesh.nodes[i];
        }
    }
    if (worst_neg <= worst_pos) {
        report.worst_violation = worst_neg;
        report.location_r = loc_neg;
    } else {
        report.worst_violation = worst_pos;
        report.location_r = loc_pos;
    }
    report.passed = report.worst_violation <= tol;
    report.note = "neighborhood statement checked on (r_min, 10 r_min]";
    return report;
}

CheckReport check_comparison(const RadialProfile& u, const RadialProfile& v,
                             const ProblemParams& params, PkSign sign, double r0,
                             double c1, double c2, double tol) {
    validate(u);
    validate(v);
    validate(params);
    const double p = require_p(params);
    require_mu(params);
    if (!u.has_deriv() || !u.has_deriv2() || !v.has_deriv() || !v.has_deriv2())
        throw std::invalid_argument("check_comparison: profiles need derivatives");
    if (u.size() != v.size())
        throw std::invalid_argument("check_comparison: profiles must share the mesh");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(u.mesh.nodes[i] - v.mesh.nodes[i]) > 1e-12 * u.mesh.nodes[i])
            throw std::invalid_argument("check_comparison: profiles must share the mesh");
    if (!(c1 > 0.0 && c2 >= c1))
        throw std::invalid_argument("check_comparison: need 0 < c1 <= c2");

    CheckReport report;
    report.name = "comparison";
    report.tolerance = tol;

    std::size_t top = u.size();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u.mesh.nodes[i] <= r0 * (1.0 + 1e-12)) top = i;
    if (top == u.size()) {
        report.applicable = false;
        report.note = "no nodes below r0";
        return report;
    }

    const double s = 2.0 / (p - 1.0);
    const auto fail = [&](const std::string& why) {
        report.applicable = false;
        report.note = "hypothesis fails: " + why;
        return report;
    };

    double sub_viol = 0.0, super_viol = 0.0, growth_viol = 0.0;
    for (std::size_t i = 0; i <= top; ++i) {
        const double r = u.mesh.nodes[i];
        sub_viol = std::max(
            sub_viol, -residual_superlinear_scaled(params, jet_at(u, i), sign));
        super_viol = std::max(
            super_viol, residual_superlinear_scaled(params, jet_at(v, i), sign));
        const double bound = std::pow(r, -s);
        const double lo = c1 * bound, hi = c2 * bound;
        growth_viol = std::max(growth_viol, (lo - v.values[i]) / std::max(1.0, lo));
        growth_viol = std::max(growth_viol, (u.values[i] - hi) / std::max(1.0, hi));
        growth_viol = std::max(growth_viol, (v.values[i] - hi) / std::max(1.0, hi));
    }
    if (sub_viol > tol) return fail("u is not a subsolution (scaled " + std::to_string(sub_viol) + ")");
    if (super_viol > tol)
        return fail("v is not a supersolution (scaled " + std::to_string(super_viol) + ")");
    if (growth_viol > tol)
        return fail("two-sided growth bounds c1 r^{-2/(p-1)} <= v, u,v <= c2 r^{-2/(p-1)}");
    if (u.values[top] > v.values[top] + tol * std::max(1.0, std::abs(v.values[top])))
        return fail("ordering at r0: u(r0) > v(r0)");

    report.worst_violation = 0.0;
    report.location_r = u.mesh.nodes[top];
    for (std::size_t i = 0; i <= top; ++i) {
        const double viol = (u.values[i] - v.values[i]) / std::max(1.0, std::abs(v.values[i]));
        if (viol > report.worst_violation) {
            report.worst_violation = viol;
            report.location_r = u.mesh.nodes[i];
        }
    }
    report.passed = report.worst_violation <= tol;
    return report;
}

CheckReport check_convexity_structure(const RadialProfile& profile, double tol) {
    validate(profile);
    if (!profile.has_deriv() || !profile.has_deriv2())
        throw std::invalid_argument("check_convexity_structure: profile needs derivatives");

    CheckReport report;
    report.name = "convexity_structure";
    report.tolerance = tol;
    report.worst_violation = 0.0;
    report.location_r = profile.mesh.r_min();
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double r = profile.mesh.nodes[i];
        const double du = profile.deriv[i];
        const double d2u = profile.deriv2[i];
        const double scale =
            std::max({1.0, std::abs(du), std::abs(d2u), std::abs(du / r)});
        // u' <= 0 and u'' - u'/r >= 0
        const double viol = std::max(du, du / r - d2u) / scale;
        if (viol > report.worst_violation) {
            report.worst_violation = viol;
            report.location_r = r;
        }
    }
    report.passed = report.worst_violation <= tol;
    return report;
}

}  // namespace trunclap
