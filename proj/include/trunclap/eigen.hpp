#ifndef TRUNCLAP_EIGEN_HPP
#define TRUNCLAP_EIGEN_HPP

#include <utility>

#include "trunclap/closed_form.hpp"
#include "trunclap/mesh.hpp"
#include "trunclap/params.hpp"
#include "trunclap/verify.hpp"

namespace trunclap {

enum class EigenMethod { fem, shooting, picard, closed_form };

const char* method_name(EigenMethod method);

struct EigenResult {
    double lambda = 0.0;
    RadialProfile eigenfunction;  // positive on the interior, max = 1, u(1) = 0
    EigenMethod method = EigenMethod::fem;
    double residual_sup = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct FemOptions {
    /// gamma >= 2 has no eigenfunction (the eigenvalue degenerates); solves
    /// there are r_min-dependent demonstrations and must be opted into.
    bool allow_gamma_ge2 = false;
    int max_iter = 200;
    double tol = 1e-12;  // relative eigenvalue stagnation
};

/// Smallest eigenvalue of the weighted Sturm-Liouville problem
///   (u' r^{k-1})' + lambda u r^{k-1-gamma} = 0,  u(1) = 0, natural at r_min,
/// by P1 finite elements with exact power-law moments and shifted inverse
/// iteration. Rayleigh-Ritz: lambda is an upper bound on that mesh.
EigenResult solve_eigen_fem(const ProblemParams& params, const GradedMesh& mesh,
                            const FemOptions& options = {});

struct ShootingOptions {
    double r_start = 1e-6;
    double rtol = 1e-10;
    double atol = 1e-10;
    int max_bisect = 200;
    double lambda_tol = 1e-12;  // relative bracket width
};

/// Integrates u'' + (k-1)u'/r + lambda u r^{-gamma} = 0 from a Frobenius
/// startup at r_start and bisects lambda on the sign of u(1). The bracket
/// must contain exactly the principal eigenvalue: a converged eigenfunction
/// with an interior zero is rejected as a too-wide bracket.
EigenResult solve_eigen_shooting(const ProblemParams& params,
                                 std::pair<double, double> lambda_bracket,
                                 const ShootingOptions& options = {});

struct PicardResult {
    enum class Status { converged, diverged, max_iter };
    Status status = Status::max_iter;
    RadialProfile u;
    int iterations = 0;
    double last_delta = 0.0;
    double sup_norm = 0.0;
};

/// Monotone fixed-point iteration for
///   P_k^+(D^2 u) + mu u r^{-gamma} = f r^{-gamma},  u(1) = b,
/// via u_n = b - int_r^1 s^{1-k} int_0^s (f - mu u_{n-1}) t^{k-1-gamma} dt ds
/// with exact piecewise-power quadrature. Divergence (sup-norm blowup past
/// 1e8 (|b| + ||f|| + 1)) signals mu >= the principal eigenvalue.
/// Requires gamma < 2, k >= 2, f < 0 nondecreasing, b >= 0, mu >= 0.
PicardResult picard_solve(const ProblemParams& params, double mu, const RadialProfile& f,
                          double b, int max_iter = 500, double tol = 1e-9);

struct Gamma2Eigenpair {
    double lambda = 0.0;                // (k-2)^2 / 4
    ClosedFormSolution eigenfunction;   // -ln r / r^{(k-2)/2}
};

/// Explicit eigenpair at gamma = 2; requires k >= 3.
Gamma2Eigenpair closed_form_eigen_gamma2(int k);

/// Positive radial v with P_k^-(D^2 v) + mu v r^{-gamma} = 0 for arbitrary
/// mu > 0 (these exist for every mu: the P_k^- eigenvalue is +infinity).
ClosedFormSolution pkm_supersolution(const ProblemParams& params, double mu);

struct GrowthCertificate {
    enum class Kind { bounded, power, exponential } kind = Kind::bounded;
    double value = 0.0;  // tau for power, c for exponential
};

/// Maximum principle check for P_k^-(D^2 u) + mu u r^{-gamma} >= 0, u(1) <= 0:
/// verifies u <= tol given the growth certificate matching the gamma case
/// (gamma < 2: bounded and k >= 2; gamma = 2: u r^tau bounded; gamma > 2:
/// u exp(-c r^{2-gamma}) bounded). Certificate/gamma mismatch is an error.
CheckReport check_max_principle_pkm(const ProblemParams& params, double mu,
                                    const RadialProfile& profile,
                                    const GrowthCertificate& certificate,
                                    double tol = 1e-8);

}  // namespace trunclap

#endif
