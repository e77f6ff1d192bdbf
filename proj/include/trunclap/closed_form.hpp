#ifndef TRUNCLAP_CLOSED_FORM_HPP
#define TRUNCLAP_CLOSED_FORM_HPP

#include <vector>

#include "trunclap/mesh.hpp"
#include "trunclap/params.hpp"

namespace trunclap {

/// The explicit solution families.
///
/// pkm_case1/2/3: P_k^- superlinear solutions at gamma = 2, selected by the
/// sign of 2/(p-1) - mu/k,
///   case1 (mu/k < 2/(p-1)):  u = (c r^{mu(p-1)/k} - r^2/(2k/(p-1)-mu))^{-1/(p-1)}, c > 0
///   case2 (mu/k = 2/(p-1)):  u = r^{-2/(p-1)} (c + (p-1)/k * (-ln r))^{-1/(p-1)}
///   case3 (mu/k > 2/(p-1)):  u = (c r^{mu(p-1)/k} + r^2/(mu-2k/(p-1)))^{-1/(p-1)}
/// pkp_scaling:        u = K r^{-2/(p-1)} with K from the exponent algebra
/// eigen_gamma2:       u = -ln r / r^{(k-2)/2}, eigenvalue (k-2)^2/4, k >= 3
/// pkm_supersolution:  v = exp(-mu/(k(2-gamma)) r^{2-gamma}) (gamma != 2),
///                     v = r^{-mu/k} (gamma = 2)
enum class ClosedFormFamily {
    pkm_case1,
    pkm_case2,
    pkm_case3,
    pkp_scaling,
    eigen_gamma2,
    pkm_supersolution,
};

const char* family_name(ClosedFormFamily family);

struct ClosedFormSolution {
    ClosedFormFamily family{};
    ProblemParams params;
    double c = 0.0;
    /// Largest radius below which positivity, monotonicity (u' <= 0) and the
    /// operator branch condition u'' >= u'/r all hold.
    double valid_radius = 1.0;
};

/// u, u', u'' by analytic differentiation. Rejects r outside (0, valid_radius].
RadialJet eval_closed_form(const ClosedFormSolution& sol, double r);

/// Profile with derivative samples at the given (ascending, positive) radii.
RadialProfile sample_closed_form(const ClosedFormSolution& sol,
                                 const std::vector<double>& radii);

/// P_k^- gamma=2 family member with the given constant; the family is chosen
/// by the sign rule above and the constant validated against it.
ClosedFormSolution make_pkm_closed_form(const ProblemParams& params, double c,
                                        double r_cap = 1.0);

/// The exact self-similar solution K r^{-2/(p-1)} of the P_k^+ problem;
/// requires p < p* or p > p**.
ClosedFormSolution make_pkp_scaling(const ProblemParams& params);

/// ascending log-spaced radii helper (n >= 2, 0 < lo < hi)
std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace trunclap

#endif
