#include "trunclap/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trunclap {

void validate(const ProblemParams& params) {
    if (params.N < 1) throw std::invalid_argument("ProblemParams: N must be >= 1");
    if (params.k < 1 || params.k > params.N)
        throw std::invalid_argument("ProblemParams: need 1 <= k <= N, got k=" +
                                    std::to_string(params.k) + ", N=" + std::to_string(params.N));
    if (!(params.gamma >= 0.0) || !std::isfinite(params.gamma))
        throw std::invalid_argument("ProblemParams: gamma must be finite and >= 0");
    if (params.mu && !(*params.mu > 0.0 && std::isfinite(*params.mu)))
        throw std::invalid_argument("ProblemParams: mu must be finite and > 0 when set");
    if (params.p && !(*params.p > 1.0 && std::isfinite(*params.p)))
        throw std::invalid_argument("ProblemParams: p must be finite and > 1 when set");
}

void require_strict_degeneracy(const ProblemParams& params) {
    validate(params);
    if (params.k > params.N - 1)
        throw std::invalid_argument("operation requires the strictly degenerate range k <= N-1");
}

double require_mu(const ProblemParams& params) {
    if (!params.mu) throw std::invalid_argument("ProblemParams: mu is required here");
    return *params.mu;
}

double require_p(const ProblemParams& params) {
    if (!params.p) throw std::invalid_argument("ProblemParams: p is required here");
    return *params.p;
}

}  // namespace trunclap
