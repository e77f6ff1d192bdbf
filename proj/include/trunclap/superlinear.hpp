#ifndef TRUNCLAP_SUPERLINEAR_HPP
#define TRUNCLAP_SUPERLINEAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "trunclap/closed_form.hpp"
#include "trunclap/mesh.hpp"
#include "trunclap/params.hpp"

namespace trunclap {

/// Growth exponents of the P_k^+ superlinear problem (k >= 3,
/// 0 < mu < ((k-2)/2)^2):
///   tau^± = (k-2)/2 ± sqrt(((k-2)/2)^2 - mu),  roots of x^2 - (k-2)x + mu
///   p*    = 1 + 2/tau^+,  p** = 1 + 2/tau^-
///   scaling = 2/(p-1)
///   K     = [(2/(p-1) - tau^-)(2/(p-1) - tau^+)]^{1/(p-1)}, real iff
///           p < p* or p > p**
///   K_bar = [tau^- sqrt(((k-2)/2)^2 - mu)]^{tau^-/2} at p = p**
struct ExponentData {
    double tau_minus = 0.0;
    double tau_plus = 0.0;
    double p_star = 0.0;
    double p_star_star = 0.0;
    std::optional<double> scaling;
    std::optional<double> K;
    std::optional<double> K_bar;
};

ExponentData compute_exponents(const ProblemParams& params);

/// P_k^- family member through (r0, u0): selects the case by the sign of
/// 2/(p-1) - mu/k and inverts the closed form for c.
ClosedFormSolution pkm_solution_from_data(const ProblemParams& params, double r0, double u0);

/// Analytic r -> 0 limit data of a P_k^- family member:
/// u(r) r^exponent (-ln r)^log_power -> constant.
struct LimitData {
    double exponent = 0.0;
    double log_power = 0.0;
    double constant = 0.0;
};

LimitData pkm_limit_constant(const ClosedFormSolution& sol);

/// Initial data recipes for P_k^+ integrations. The scaling recipe starts on
/// the exact solution; the tau recipes start small on the corresponding
/// direction of the linearized equation (u' = -tau u / r).
enum class DataRecipe { scaling, tau_minus, tau_plus };

struct InitialData {
    double r0 = 0.0;
    double u0 = 0.0;
    double du0 = 0.0;
};

InitialData pkp_initial_data(const ProblemParams& params, DataRecipe recipe, double r0,
                             double amplitude = 1e-4);

struct IntegrationEvent {
    enum class Type { branch_crossing, positivity_lost, step_underflow } type;
    double r = 0.0;
    std::string detail;
};

const char* event_name(IntegrationEvent::Type type);

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Step cap in log-radius; the default keeps >= 40 samples per decade.
    double max_step_log = 0.0575646273248511;  // ln(10)/40
    /// Extra radii the integration must land on exactly (for shared meshes).
    std::vector<double> sample_at;
};

struct IntegrationResult {
    RadialProfile profile;  // ascending in r, with derivatives
    std::vector<IntegrationEvent> events;
    bool completed = false;  // reached r_end without losing positivity
};

/// Adaptive integration of the dimension-k semilinear equation
///   u'' + (k-1) u'/r + mu u/r^2 = u^p
/// from (r0, u0, du0) to r_end (inward or outward). Internally solves for
/// y = u r^{2/(p-1)} in t = ln(r0/r), which makes the scaling solution a
/// fixed point; the branch indicator u'' - u'/r is monitored at every
/// accepted step and sign changes are bisected into the event log.
IntegrationResult integrate_pkp_superlinear(const ProblemParams& params, double r0,
                                            double u0, double du0, double r_end,
                                            const IntegrateOptions& options = {});

/// Detected r -> 0 behavior: u(r) r^exponent (-ln r)^log_power ->
/// leading_constant over the fit window.
struct AsymptoticClass {
    enum class Tag { exp_tau_minus, exp_tau_plus, exp_scaling, exp_mu_over_k, log_corrected };
    Tag tag = Tag::log_corrected;
    double exponent = 0.0;
    double log_power = 0.0;
    double leading_constant = 0.0;
    double fit_r2 = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

const char* tag_name(AsymptoticClass::Tag tag);

struct ClassifyOptions {
    double snap_rel_tol = 0.02;
    double r2_min = 0.999;
    /// Points-per-decade floor demanded of the input profile.
    double min_points_per_decade = 30.0;
};

/// Log-log least-squares classification on the last two decades of the
/// profile (excluding the final half-decade near r_min). Fits a pure power
/// first, then a log-corrected law, and snaps to the admissible exponent
/// pairs derived from params when within snap_rel_tol.
AsymptoticClass classify_asymptotics(const RadialProfile& profile, const ProblemParams& params,
                                     const ClassifyOptions& options = {});

}  // namespace trunclap

#endif
