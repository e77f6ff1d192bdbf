#ifndef TRUNCLAP_VERIFY_HPP
#define TRUNCLAP_VERIFY_HPP

#include <string>

#include "trunclap/mesh.hpp"
#include "trunclap/params.hpp"
#include "trunclap/pk_operator.hpp"

namespace trunclap {

/// Outcome of a numerical lemma check. Violations are measured relative to
/// max(1, magnitude of the quantities involved), so the stated tolerance is
/// absolute for max-normalized profiles and scale-free otherwise.
struct CheckReport {
    std::string name;
    bool passed = false;
    double worst_violation = 0.0;
    double location_r = 0.0;
    double tolerance = 0.0;
    /// False when a hypothesis of the underlying statement fails on the
    /// input: the check then asserts nothing (reported, not a failure).
    bool applicable = true;
    std::string note;
};

enum class SolutionContext { subsolution, supersolution };

/// Sign structure of operator sub/supersolutions:
///   (plus,  supersolution): u' <= 0 on the whole profile      (k <= N-1)
///   (minus, subsolution):   u' >= 0 on the whole profile      (k <= N-1)
///   (minus, supersolution): u' has constant sign near zero
///   (plus,  subsolution):   u' has constant sign near zero
/// "Near zero" is checked on the smallest resolved decade (r_min, 10 r_min].
CheckReport check_sign_lemma(const RadialProfile& profile, const ProblemParams& params,
                             PkSign sign, SolutionContext context, double tol = 1e-8);

/// Comparison for the superlinear equation on (0, r0]: u subsolution,
/// v supersolution, c1 r^{-2/(p-1)} <= v and u, v <= c2 r^{-2/(p-1)},
/// u(r0) <= v(r0) imply u <= v down to r_min. Profiles must share the mesh.
/// Hypothesis failures make the report inapplicable.
CheckReport check_comparison(const RadialProfile& u, const RadialProfile& v,
                             const ProblemParams& params, PkSign sign, double r0,
                             double c1, double c2, double tol = 1e-8);

/// u' <= 0 and u'' - u'/r >= 0 at every node.
CheckReport check_convexity_structure(const RadialProfile& profile, double tol = 1e-8);

}  // namespace trunclap

#endif
