#include "trunclap/pk_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trunclap {

namespace {

void require_positive_radius(const RadialJet& jet) {
    if (!(jet.r > 0.0)) throw std::invalid_argument("RadialJet: r must be > 0 (punctured domain)");
}

}  // namespace

std::pair<double, double> hessian_eigen_branches(const RadialJet& jet) {
    require_positive_radius(jet);
    return {jet.d2u, jet.du / jet.r};
}

PkValue eval_pk(const ProblemParams& params, const RadialJet& jet, PkSign sign) {
    require_strict_degeneracy(params);
    require_positive_radius(jet);

    const double radial = jet.d2u;
    const double tangential = jet.du / jet.r;
    const double gap = radial - tangential;
    const double scale = std::max(std::abs(radial), std::abs(tangential));
    const int k = params.k;

    PkValue out;
    if (std::abs(gap) <= 1e-14 * scale) {
        out.value = k * tangential;
        out.tie = true;
        return out;
    }
    const bool laplacian = (sign == PkSign::plus) ? (gap > 0.0) : (gap < 0.0);
    out.laplacian_branch = laplacian;
    out.value = laplacian ? radial + (k - 1) * tangential : k * tangential;
    return out;
}

double eval_pk_plus(const ProblemParams& params, const RadialJet& jet) {
    return eval_pk(params, jet, PkSign::plus).value;
}

double eval_pk_minus(const ProblemParams& params, const RadialJet& jet) {
    return eval_pk(params, jet, PkSign::minus).value;
}

double residual_eigen(const ProblemParams& params, const RadialJet& jet,
                      double lambda, PkSign sign) {
    const double pk = eval_pk(params, jet, sign).value;
    return pk + lambda * jet.u * std::pow(jet.r, -params.gamma);
}

double residual_superlinear(const ProblemParams& params, const RadialJet& jet,
                            PkSign sign) {
    if (jet.u < 0.0)
        throw std::invalid_argument("residual_superlinear: u must be >= 0 (positive solutions)");
    const double mu = require_mu(params);
    const double p = require_p(params);
    const double pk = eval_pk(params, jet, sign).value;
    return pk + mu * jet.u / (jet.r * jet.r) - std::pow(jet.u, p);
}

namespace {

double term_scale(const ProblemParams& params, const RadialJet& jet) {
    const double tangential = jet.du / jet.r;
    double s = std::max(std::abs(jet.d2u), std::abs((params.k - 1) * tangential));
    s = std::max(s, std::abs(params.k * tangential));
    return s;
}

}  // namespace

double residual_eigen_scaled(const ProblemParams& params, const RadialJet& jet,
                             double lambda, PkSign sign) {
    const double raw = residual_eigen(params, jet, lambda, sign);
    double s = term_scale(params, jet);
    s = std::max(s, std::abs(lambda * jet.u * std::pow(jet.r, -params.gamma)));
    return raw / std::max(1.0, s);
}

double residual_superlinear_scaled(const ProblemParams& params,
                                   const RadialJet& jet, PkSign sign) {
    const double raw = residual_superlinear(params, jet, sign);
    double s = term_scale(params, jet);
    s = std::max(s, std::abs(require_mu(params) * jet.u / (jet.r * jet.r)));
    s = std::max(s, std::pow(jet.u, require_p(params)));
    return raw / std::max(1.0, s);
}

}  // namespace trunclap
