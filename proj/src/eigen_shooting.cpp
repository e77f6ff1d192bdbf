#include <cmath>
#include <stdexcept>
#include <vector>

#include "trunclap/eigen.hpp"
#include "trunclap/ode.hpp"

namespace trunclap {

namespace {

// Regular solution at the singular point: u = sum_j a_j r^{j(2-gamma)},
// a_0 = 1, a_{j+1} = -lambda a_j / ((j+1)b ((j+1)b + k - 2)), b = 2 - gamma.
void frobenius_startup(double lambda, double k, double gamma, double r, double& u, double& du) {
    const double beta = 2.0 - gamma;
    double a = 1.0;
    double rb = 1.0;
    u = 1.0;
    du = 0.0;
    for (int j = 0; j < 16; ++j) {
        const double jb = (j + 1) * beta;
        a *= -lambda / (jb * (jb + k - 2.0));
        rb *= std::pow(r, beta);
        u += a * rb;
        du += a * jb * rb / r;
        if (std::abs(a * rb) < 1e-17) break;
    }
}

struct Shot {
    double u_end = 0.0;
    int interior_zeros = 0;
};

}  // namespace

EigenResult solve_eigen_shooting(const ProblemParams& params,
                                 std::pair<double, double> lambda_bracket,
                                 const ShootingOptions& options) {
    validate(params);
    const double gamma = params.gamma;
    const double k = params.k;
    if (!(gamma < 2.0))
        throw std::invalid_argument("solve_eigen_shooting: requires gamma < 2");
    if (!(k > gamma))
        throw std::invalid_argument(
            "solve_eigen_shooting: Frobenius startup requires k > gamma");
    if (!(options.r_start > 0.0 && options.r_start < 0.5))
        throw std::invalid_argument("solve_eigen_shooting: r_start must lie in (0, 0.5)");

    OdeOptions ode;
    ode.rtol = options.rtol;
    ode.atol = options.atol;

    const auto rhs = [&](double lambda) {
        return [lambda, k, gamma](double r, Vec2 v) {
            return Vec2{v.y, -(k - 1.0) * v.y / r - lambda * v.x * std::pow(r, -gamma)};
        };
    };

    const auto shoot = [&](double lambda, RadialProfile* out) -> Shot {
        double u0 = 0.0, du0 = 0.0;
        frobenius_startup(lambda, k, gamma, options.r_start, u0, du0);
        Vec2 last{u0, du0};
        double prev_u = u0;
        Shot shot;
        if (out) {
            out->mesh.nodes.push_back(options.r_start);
            out->values.push_back(u0);
            out->deriv.push_back(du0);
            out->deriv2.push_back(rhs(lambda)(options.r_start, last).y);
        }
        const auto status = integrate_dp54(
            rhs(lambda), options.r_start, last, 1.0, ode, [&](const OdeStep& step) {
                if (prev_u * step.y1.x < 0.0 && step.t1 < 1.0 - 1e-9) ++shot.interior_zeros;
                prev_u = step.y1.x;
                last = step.y1;
                if (out) {
                    out->mesh.nodes.push_back(step.t1);
                    out->values.push_back(step.y1.x);
                    out->deriv.push_back(step.y1.y);
                    out->deriv2.push_back(rhs(lambda)(step.t1, step.y1).y);
                }
                return true;
            });
        if (status != OdeStatus::done)
            throw std::runtime_error("solve_eigen_shooting: integration failed");
        shot.u_end = last.x;
        return shot;
    };

    double lo = lambda_bracket.first, hi = lambda_bracket.second;
    if (!(lo > 0.0 && hi > lo))
        throw std::invalid_argument("solve_eigen_shooting: need 0 < bracket.first < bracket.second");
    double f_lo = shoot(lo, nullptr).u_end;
    const double f_hi = shoot(hi, nullptr).u_end;
    if (f_lo * f_hi > 0.0)
        throw std::invalid_argument(
            "solve_eigen_shooting: u(1; lambda) does not change sign over the bracket");

    int iterations = 0;
    for (int it = 0; it < options.max_bisect; ++it) {
        iterations = it + 1;
        const double mid = 0.5 * (lo + hi);
        const double f_mid = shoot(mid, nullptr).u_end;
        if (f_lo * f_mid <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        if (hi - lo <= options.lambda_tol * std::max(1.0, std::abs(mid))) break;
    }
    const double lambda = 0.5 * (lo + hi);

    EigenResult result;
    result.method = EigenMethod::shooting;
    result.lambda = lambda;
    result.iterations = iterations;

    RadialProfile profile;
    const Shot final_shot = shoot(lambda, &profile);
    if (final_shot.interior_zeros > 0)
        throw std::invalid_argument(
            "solve_eigen_shooting: converged eigenfunction has an interior zero; "
            "the bracket captured a higher eigenvalue");

    double max_val = 0.0;
    for (double v : profile.values) max_val = std::max(max_val, std::abs(v));
    for (auto& v : profile.values) v /= max_val;
    for (auto& v : profile.deriv) v /= max_val;
    for (auto& v : profile.deriv2) v /= max_val;
    result.residual_sup = std::abs(final_shot.u_end) / max_val;
    profile.values.back() = 0.0;  // boundary condition; the defect is residual_sup
    profile.mesh = mesh_from_nodes(std::move(profile.mesh.nodes));
    result.eigenfunction = std::move(profile);
    result.converged = hi - lo <= options.lambda_tol * std::max(1.0, lambda) * 1.000001;
    return result;
}

}  // namespace trunclap
