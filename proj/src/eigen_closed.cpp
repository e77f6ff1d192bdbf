#include <cmath>
#include <stdexcept>

#include "trunclap/eigen.hpp"

namespace trunclap {

Gamma2Eigenpair closed_form_eigen_gamma2(int k) {
    if (k < 3)
        throw std::invalid_argument("closed_form_eigen_gamma2: requires k >= 3");
    Gamma2Eigenpair pair;
    pair.lambda = (k - 2) * (k - 2) / 4.0;
    pair.eigenfunction.family = ClosedFormFamily::eigen_gamma2;
    pair.eigenfunction.params = ProblemParams{k + 1, k, 2.0, {}, {}};
    pair.eigenfunction.valid_radius = 1.0;
    return pair;
}

ClosedFormSolution pkm_supersolution(const ProblemParams& params, double mu) {
    validate(params);
    require_strict_degeneracy(params);
    if (!(mu > 0.0)) throw std::invalid_argument("pkm_supersolution: requires mu > 0");
    ClosedFormSolution sol;
    sol.family = ClosedFormFamily::pkm_supersolution;
    sol.params = params;
    sol.params.mu = mu;
    sol.valid_radius = 1.0;
    return sol;
}

CheckReport check_max_principle_pkm(const ProblemParams& params, double mu,
                                    const RadialProfile& profile,
                                    const GrowthCertificate& certificate, double tol) {
    validate(params);
    validate(profile);
    if (!(mu > 0.0)) throw std::invalid_argument("check_max_principle_pkm: requires mu > 0");
    if (!profile.has_deriv() || !profile.has_deriv2())
        throw std::invalid_argument("check_max_principle_pkm: profile needs derivatives");

    const double gamma = params.gamma;
    using Kind = GrowthCertificate::Kind;
    switch (certificate.kind) {
        case Kind::bounded:
            if (!(gamma < 2.0) || params.k < 2)
                throw std::invalid_argument(
                    "check_max_principle_pkm: bounded certificate applies to gamma < 2, k >= 2");
            break;
        case Kind::power:
            if (gamma != 2.0 || !(certificate.value > 0.0))
                throw std::invalid_argument(
                    "check_max_principle_pkm: power certificate applies to gamma = 2, tau > 0");
            break;
        case Kind::exponential:
            if (!(gamma > 2.0) || !(certificate.value > 0.0))
                throw std::invalid_argument(
                    "check_max_principle_pkm: exponential certificate applies to gamma > 2, c > 0");
            break;
    }

    CheckReport report;
    report.name = "max_principle_pkm";
    report.tolerance = tol;

    if (std::abs(profile.mesh.r_max() - 1.0) > 1e-12) {
        report.applicable = false;
        report.note = "profile does not reach the boundary r = 1";
        return report;
    }
    if (profile.values.back() > tol) {
        report.applicable = false;
        report.note = "hypothesis u(1) <= 0 fails";
        return report;
    }
    // differential inequality P_k^-(D^2 u) + mu u r^{-gamma} >= 0, scaled
    double hyp_violation = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const RadialJet jet = jet_at(profile, i);
        const double res = residual_eigen_scaled(params, jet, mu, PkSign::minus);
        hyp_violation = std::max(hyp_violation, -res);
    }
    if (hyp_violation > tol) {
        report.applicable = false;
        report.note = "differential inequality hypothesis fails (scaled violation " +
                      std::to_string(hyp_violation) + ")";
        return report;
    }

    double sup_abs = 1.0;
    for (double v : profile.values) sup_abs = std::max(sup_abs, std::abs(v));
    report.worst_violation = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double viol = profile.values[i] / sup_abs;
        if (viol > report.worst_violation) {
            report.worst_violation = viol;
            report.location_r = profile.mesh.nodes[i];
        }
    }
    report.passed = report.worst_violation <= tol;
    report.note = "growth certificate checked on the sampled range only";
    return report;
}

}  // namespace trunclap
