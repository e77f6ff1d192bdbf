#include "trunclap/closed_form.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trunclap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bernoulli {
    double A = 0.0;   // mu (p-1) / k
    double B = 0.0;   // |2k/(p-1) - mu|, sign split per family
    double q = 0.0;   // 1 / (p-1)
    double qp = 0.0;  // (p-1) / k, case 2 only
};

Bernoulli bernoulli_data(const ProblemParams& params) {
    Bernoulli d;
    const double mu = require_mu(params);
    const double p = require_p(params);
    d.A = mu * (p - 1.0) / params.k;
    d.q = 1.0 / (p - 1.0);
    d.qp = (p - 1.0) / params.k;
    const double gap = 2.0 * params.k / (p - 1.0) - mu;
    d.B = std::abs(gap);
    return d;
}

// u = w^{-q}: jet from (w, w', w'').
RadialJet bernoulli_jet(double r, double w, double wp, double wpp, double q) {
    if (!(w > 0.0)) throw std::domain_error("closed form: outside positivity region");
    RadialJet jet;
    jet.r = r;
    jet.u = std::pow(w, -q);
    jet.du = -q * jet.u * wp / w;
    jet.d2u = jet.u * (q * (q + 1.0) * (wp / w) * (wp / w) - q * wpp / w);
    return jet;
}

double scaling_constant(const ProblemParams& params) {
    const double mu = require_mu(params);
    const double p = require_p(params);
    const int k = params.k;
    const double half = (k - 2) / 2.0;
    const double disc = half * half - mu;
    if (!(k >= 3) || !(disc > 0.0))
        throw std::invalid_argument("pkp_scaling: requires k >= 3 and mu < ((k-2)/2)^2");
    const double s = 2.0 / (p - 1.0);
    const double prod = (s - (half - std::sqrt(disc))) * (s - (half + std::sqrt(disc)));
    if (!(prod > 0.0))
        throw std::invalid_argument("pkp_scaling: no scaling solution for p* <= p <= p**");
    return std::pow(prod, 1.0 / (p - 1.0));
}

}  // namespace

const char* family_name(ClosedFormFamily family) {
    switch (family) {
        case ClosedFormFamily::pkm_case1: return "pkm_case1";
        case ClosedFormFamily::pkm_case2: return "pkm_case2";
        case ClosedFormFamily::pkm_case3: return "pkm_case3";
        case ClosedFormFamily::pkp_scaling: return "pkp_scaling";
        case ClosedFormFamily::eigen_gamma2: return "eigen_gamma2";
        case ClosedFormFamily::pkm_supersolution: return "pkm_supersolution";
    }
    return "unknown";
}

RadialJet eval_closed_form(const ClosedFormSolution& sol, double r) {
    if (!(r > 0.0)) throw std::domain_error("eval_closed_form: r must be > 0");
    if (r > sol.valid_radius * (1.0 + 1e-12))
        throw std::domain_error("eval_closed_form: r outside validity radius");
    const ProblemParams& params = sol.params;

    switch (sol.family) {
        case ClosedFormFamily::pkm_case1: {
            const Bernoulli d = bernoulli_data(params);
            const double rA = std::pow(r, d.A);
            const double w = sol.c * rA - r * r / d.B;
            const double wp = sol.c * d.A * rA / r - 2.0 * r / d.B;
            const double wpp = sol.c * d.A * (d.A - 1.0) * rA / (r * r) - 2.0 / d.B;
            return bernoulli_jet(r, w, wp, wpp, d.q);
        }
        case ClosedFormFamily::pkm_case2: {
            const Bernoulli d = bernoulli_data(params);
            const double G = sol.c - d.qp * std::log(r);
            const double w = r * r * G;
            const double wp = 2.0 * r * G - d.qp * r;
            const double wpp = 2.0 * G - 3.0 * d.qp;
            return bernoulli_jet(r, w, wp, wpp, d.q);
        }
        case ClosedFormFamily::pkm_case3: {
            const Bernoulli d = bernoulli_data(params);
            const double rA = std::pow(r, d.A);
            const double w = sol.c * rA + r * r / d.B;
            const double wp = sol.c * d.A * rA / r + 2.0 * r / d.B;
            const double wpp = sol.c * d.A * (d.A - 1.0) * rA / (r * r) + 2.0 / d.B;
            return bernoulli_jet(r, w, wp, wpp, d.q);
        }
        case ClosedFormFamily::pkp_scaling: {
            const double s = 2.0 / (require_p(params) - 1.0);
            const double K = scaling_constant(params);
            RadialJet jet;
            jet.r = r;
            jet.u = K * std::pow(r, -s);
            jet.du = -s * jet.u / r;
            jet.d2u = s * (s + 1.0) * jet.u / (r * r);
            return jet;
        }
        case ClosedFormFamily::eigen_gamma2: {
            const double m = (params.k - 2) / 2.0;
            const double lr = std::log(r);
            RadialJet jet;
            jet.r = r;
            jet.u = -lr * std::pow(r, -m);
            jet.du = std::pow(r, -m - 1.0) * (m * lr - 1.0);
            jet.d2u = std::pow(r, -m - 2.0) * (-m * (m + 1.0) * lr + 2.0 * m + 1.0);
            return jet;
        }
        case ClosedFormFamily::pkm_supersolution: {
            const double mu = require_mu(params);
            const double gamma = params.gamma;
            const double k = params.k;
            RadialJet jet;
            jet.r = r;
            if (gamma == 2.0) {
                const double a = mu / k;
                jet.u = std::pow(r, -a);
                jet.du = -a * jet.u / r;
                jet.d2u = a * (a + 1.0) * jet.u / (r * r);
            } else {
                const double beta = 2.0 - gamma;
                const double arg = -(mu / (k * beta)) * std::pow(r, beta);
                if (std::abs(arg) > 700.0)
                    throw std::domain_error("pkm_supersolution: value overflows at this radius");
                jet.u = std::exp(arg);
                const double mk = mu / k;
                jet.du = -mk * std::pow(r, 1.0 - gamma) * jet.u;
                jet.d2u = jet.u * (mk * mk * std::pow(r, 2.0 - 2.0 * gamma) -
                                   mk * (1.0 - gamma) * std::pow(r, -gamma));
            }
            return jet;
        }
    }
    throw std::logic_error("eval_closed_form: unknown family");
}

RadialProfile sample_closed_form(const ClosedFormSolution& sol,
                                 const std::vector<double>& radii) {
    RadialProfile profile;
    profile.mesh = mesh_from_nodes(radii);
    profile.values.reserve(radii.size());
    profile.deriv.reserve(radii.size());
    profile.deriv2.reserve(radii.size());
    for (double r : radii) {
        const RadialJet jet = eval_closed_form(sol, r);
        profile.values.push_back(jet.u);
        profile.deriv.push_back(jet.du);
        profile.deriv2.push_back(jet.d2u);
    }
    return profile;
}

namespace {

// Branch-condition radius for case 3 with c > 0. In x = c B r^{A-2} the
// indicator sign equals the sign of
//   h(x) = A(qA+2) x^2 + A(4q+6-A) x + 4(q+1),
// so the branch holds up to the smaller positive root of h, if any.
double case3_branch_radius(double A, double B, double q, double c) {
    const double c2 = A * (q * A + 2.0);
    const double c1 = A * (4.0 * q + 6.0 - A);
    const double c0 = 4.0 * (q + 1.0);
    if (c1 >= 0.0) return kInf;
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc <= 0.0) return kInf;
    const double x1 = 2.0 * c0 / (-c1 + std::sqrt(disc));  // smaller root, stable form
    return std::pow(x1 / (c * B), 1.0 / (A - 2.0));
}

double pkm_valid_radius(ClosedFormFamily family, const Bernoulli& d, double c, double cap) {
    double vr = cap;
    switch (family) {
        case ClosedFormFamily::pkm_case1: {
            // positivity up to (cB)^{1/(2-A)}, monotonicity up to the smaller
            // (cAB/2)^{1/(2-A)}; the branch condition holds wherever w > 0.
            vr = std::min(vr, std::pow(c * d.A * d.B / 2.0, 1.0 / (2.0 - d.A)));
            break;
        }
        case ClosedFormFamily::pkm_case2: {
            vr = std::min(vr, std::exp(c / d.qp - 0.5));
            break;
        }
        case ClosedFormFamily::pkm_case3: {
            if (c > 0.0) {
                vr = std::min(vr, case3_branch_radius(d.A, d.B, d.q, c));
            } else if (c < 0.0) {
                vr = std::min(vr, std::pow(2.0 / (-c * d.A * d.B), 1.0 / (d.A - 2.0)));
            }
            break;
        }
        default:
            break;
    }
    return vr;
}

}  // namespace

ClosedFormSolution make_pkm_closed_form(const ProblemParams& params, double c, double r_cap) {
    validate(params);
    if (params.k < 2 || params.k > params.N - 1)
        throw std::invalid_argument("pkm closed forms: need 2 <= k <= N-1");
    const double mu = require_mu(params);
    const double p = require_p(params);
    if (!(r_cap > 0.0 && r_cap <= 1.0))
        throw std::invalid_argument("pkm closed forms: r_cap must lie in (0, 1]");

    const double s = 2.0 / (p - 1.0);
    const double ratio = mu / params.k;
    ClosedFormSolution sol;
    sol.params = params;
    sol.c = c;
    if (std::abs(s - ratio) <= 1e-12 * std::max(s, ratio)) {
        sol.family = ClosedFormFamily::pkm_case2;
    } else if (ratio < s) {
        sol.family = ClosedFormFamily::pkm_case1;
        if (!(c > 0.0))
            throw std::invalid_argument("pkm case 1: the family requires c > 0");
    } else {
        sol.family = ClosedFormFamily::pkm_case3;
    }
    const Bernoulli d = bernoulli_data(params);
    sol.valid_radius = pkm_valid_radius(sol.family, d, c, r_cap);
    if (!(sol.valid_radius > 0.0))
        throw std::invalid_argument(
            "pkm closed forms: no neighborhood of 0 where this member stays admissible");
    return sol;
}

ClosedFormSolution make_pkp_scaling(const ProblemParams& params) {
    validate(params);
    require_strict_degeneracy(params);
    scaling_constant(params);  // validates k, mu, p
    ClosedFormSolution sol;
    sol.family = ClosedFormFamily::pkp_scaling;
    sol.params = params;
    sol.valid_radius = 1.0;
    return sol;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> out(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) out[i] = std::exp(llo + (lhi - llo) * i / (n - 1.0));
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace trunclap
