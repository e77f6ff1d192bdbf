#ifndef TRUNCLAP_PARAMS_HPP
#define TRUNCLAP_PARAMS_HPP

#include <optional>

namespace trunclap {

/// Dimension / index / exponent bundle shared by all solvers.
///
/// N is the ambient dimension, k the truncation index (1 <= k <= N),
/// gamma >= 0 the potential exponent of r^{-gamma}. mu (> 0) and p (> 1)
/// are only needed by the superlinear and inhomogeneous problems and stay
/// unset for pure eigenvalue work.
struct ProblemParams {
    int N = 0;
    int k = 0;
    double gamma = 0.0;
    std::optional<double> mu;
    std::optional<double> p;
};

/// Throws std::invalid_argument if the bundle violates its invariants.
void validate(const ProblemParams& params);

/// Operations on the strictly degenerate operators additionally need k <= N-1.
void require_strict_degeneracy(const ProblemParams& params);

double require_mu(const ProblemParams& params);
double require_p(const ProblemParams& params);

/// Pointwise second-order data of a radial function at a radius r > 0.
struct RadialJet {
    double r = 0.0;
    double u = 0.0;
    double du = 0.0;
    double d2u = 0.0;
};

}  // namespace trunclap

#endif
