#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tridiag.hpp"
#include "trunclap/eigen.hpp"

namespace trunclap {

const char* method_name(EigenMethod method) {
    switch (method) {
        case EigenMethod::fem: return "fem";
        case EigenMethod::shooting: return "shooting";
        case EigenMethod::picard: return "picard";
        case EigenMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

EigenResult solve_eigen_fem(const ProblemParams& params, const GradedMesh& mesh,
                            const FemOptions& options) {
    validate(params);
    const double gamma = params.gamma;
    if (gamma >= 2.0 && !options.allow_gamma_ge2)
        throw std::invalid_argument(
            "solve_eigen_fem: gamma >= 2 has no eigenfunction (lambda degenerates with r_min); "
            "set allow_gamma_ge2 for a demonstration solve");
    if (gamma == 2.0 && params.k == 2)
        throw std::invalid_argument("solve_eigen_fem: gamma = 2 with k = 2 is not supported");
    if (mesh.r_max() != 1.0)
        throw std::invalid_argument("solve_eigen_fem: mesh must end at r = 1");

    const auto& nodes = mesh.nodes;
    const std::size_t n_nodes = nodes.size();
    const std::size_t n = n_nodes - 1;  // free dofs; u(1) = 0 eliminates the last node
    const double k = params.k;
    const double s_stiff = k - 1.0;
    const double s_mass = k - 1.0 - gamma;

    Tridiag K{std::vector<double>(n, 0.0), std::vector<double>(n > 0 ? n - 1 : 0, 0.0)};
    Tridiag M = K;
    std::vector<ElementMoments> mass_moments;
    mass_moments.reserve(n_nodes - 1);
    for (std::size_t e = 0; e + 1 < n_nodes; ++e) {
        const double a = nodes[e], b = nodes[e + 1], h = b - a;
        const double kw = power_integral(a, b, s_stiff) / (h * h);
        const ElementMoments mm = weighted_element_moments(a, b, s_mass);
        mass_moments.push_back(mm);
        K.diag[e] += kw;
        M.diag[e] += mm.waa;
        if (e + 1 < n) {
            K.diag[e + 1] += kw;
            K.off[e] -= kw;
            M.diag[e + 1] += mm.wbb;
            M.off[e] += mm.wab;
        }
    }
    for (double v : M.diag)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("solve_eigen_fem: mass matrix is not positive definite");
    for (double v : K.diag)
        if (!std::isfinite(v))
            throw std::invalid_argument("solve_eigen_fem: stiffness matrix has non-finite entries");

    // Shifted inverse iteration: plain for three steps, then Rayleigh shifts.
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 - nodes[i];
    {
        const auto Mx = tridiag_apply(M, x);
        const double nrm = std::sqrt(dot(x, Mx));
        for (auto& v : x) v /= nrm;
    }
    double lambda = dot(x, tridiag_apply(K, x));

    TridiagLU lu;
    double sigma_cached = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = false;
    for (int it = 1; it <= options.max_iter; ++it) {
        iterations = it;
        const double sigma = (it <= 3) ? 0.0 : lambda;
        if (sigma != sigma_cached) {
            std::vector<double> d(n), off(n > 0 ? n - 1 : 0);
            for (std::size_t i = 0; i < n; ++i) d[i] = K.diag[i] - sigma * M.diag[i];
            for (std::size_t i = 0; i + 1 < n; ++i) off[i] = K.off[i] - sigma * M.off[i];
            lu = tridiag_factor(off, d, off);
            sigma_cached = sigma;
        }
        std::vector<double> y = tridiag_apply(M, x);
        tridiag_solve(lu, y);
        const auto My = tridiag_apply(M, y);
        const double nrm = std::sqrt(dot(y, My));
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::runtime_error("solve_eigen_fem: inverse iteration broke down");
        for (auto& v : y) v /= nrm;
        const double new_lambda = dot(y, tridiag_apply(K, y));
        x = std::move(y);
        if (it > 1 && std::abs(new_lambda - lambda) <= options.tol * std::abs(new_lambda)) {
            lambda = new_lambda;
            converged = true;
            break;
        }
        lambda = new_lambda;
    }

    // algebraic residual of the generalized eigenpair
    double residual = 0.0, scale = 0.0;
    {
        const auto Kx = tridiag_apply(K, x);
        const auto Mx = tridiag_apply(M, x);
        double kn = 0.0, mn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(Kx[i] - lambda * Mx[i]));
            kn = std::max(kn, std::abs(Kx[i]));
            mn = std::max(mn, std::abs(Mx[i]));
        }
        scale = kn + std::abs(lambda) * mn;
    }

    EigenResult result;
    result.lambda = lambda;
    result.method = EigenMethod::fem;
    result.iterations = iterations;
    result.residual_sup = scale > 0.0 ? residual / scale : residual;

    // normalize: positive, max = 1
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    const double amp = x[imax];
    std::vector<double> values(n_nodes, 0.0);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = x[i] / amp;
        if (!(values[i] > 0.0)) positive = false;
    }
    result.converged = converged && positive;

    // u'(r) r^{k-1} = -lambda int_0^r t^{k-1-gamma} u dt, with u extended by
    // its value at r_min below the truncation. u'' then comes from the ODE.
    // This keeps the sign structure u' <= 0, u'' - u'/r >= 0 exact in
    // quadrature instead of finite-difference noise.
    std::vector<double> S(n_nodes, 0.0);
    S[0] = (k - gamma > 1e-9)
               ? values[0] * std::pow(nodes[0], k - gamma) / (k - gamma)
               : 0.0;
    for (std::size_t e = 0; e + 1 < n_nodes; ++e)
        S[e + 1] = S[e] + mass_moments[e].wphi[0] * values[e] +
                   mass_moments[e].wphi[1] * values[e + 1];

    std::vector<double> du(n_nodes), d2u(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double r = nodes[i];
        du[i] = -lambda * std::pow(r, 1.0 - k) * S[i];
        d2u[i] = -(k - 1.0) * du[i] / r - lambda * values[i] * std::pow(r, -gamma);
    }

    result.eigenfunction.mesh = mesh;
    result.eigenfunction.values = std::move(values);
    result.eigenfunction.deriv = std::move(du);
    result.eigenfunction.deriv2 = std::move(d2u);
    return result;
}

}  // namespace trunclap
