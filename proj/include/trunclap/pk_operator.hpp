#ifndef TRUNCLAP_PK_OPERATOR_HPP
#define TRUNCLAP_PK_OPERATOR_HPP

#include <utility>

#include "trunclap/params.hpp"

namespace trunclap {

/// Hessian eigenvalues of a radial function at r > 0: u'' in the radial
/// direction and u'/r with multiplicity N-1 tangentially.
/// Returns (radial_branch, tangential_branch) = (u'', u'/r).
std::pair<double, double> hessian_eigen_branches(const RadialJet& jet);

enum class PkSign { plus, minus };

struct PkValue {
    double value = 0.0;
    /// u'' and u'/r agree to 1e-14 relative: both formulas coincide and the
    /// common value k*u'/r is returned.
    bool tie = false;
    /// True when the k-dimensional Laplacian form u'' + (k-1)u'/r was taken.
    bool laplacian_branch = false;
};

/// Sum of the k largest (plus) or k smallest (minus) Hessian eigenvalues of
/// a radial function, reduced to the two radial formulas. Requires the
/// strictly degenerate range 1 <= k <= N-1.
PkValue eval_pk(const ProblemParams& params, const RadialJet& jet, PkSign sign);

double eval_pk_plus(const ProblemParams& params, const RadialJet& jet);
double eval_pk_minus(const ProblemParams& params, const RadialJet& jet);

/// P_k^{sign}(D^2 u) + lambda * u * r^{-gamma}.
double residual_eigen(const ProblemParams& params, const RadialJet& jet,
                      double lambda, PkSign sign);

/// P_k^{sign}(D^2 u) + mu * u * r^{-2} - u^p. Rejects u < 0.
double residual_superlinear(const ProblemParams& params, const RadialJet& jet,
                            PkSign sign);

/// Residuals divided by the largest constituent term (floored at 1).
/// Near the singularity the raw terms reach 1e30 and cancel; the scaled
/// residual is the resolution actually available in double precision.
double residual_eigen_scaled(const ProblemParams& params, const RadialJet& jet,
                             double lambda, PkSign sign);
double residual_superlinear_scaled(const ProblemParams& params,
                                   const RadialJet& jet, PkSign sign);

}  // namespace trunclap

#endif
