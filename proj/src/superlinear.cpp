#include "trunclap/superlinear.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "trunclap/ode.hpp"

namespace trunclap {

ExponentData compute_exponents(const ProblemParams& params) {
    validate(params);
    const double mu = require_mu(params);
    if (params.k < 3)
        throw std::invalid_argument("compute_exponents: requires k >= 3");
    const double half = (params.k - 2) / 2.0;
    const double disc = half * half - mu;
    if (!(disc > 0.0))
        throw std::invalid_argument("compute_exponents: requires mu < ((k-2)/2)^2");
    const double root = std::sqrt(disc);

    ExponentData data;
    data.tau_minus = half - root;
    data.tau_plus = half + root;
    data.p_star = 1.0 + 2.0 / data.tau_plus;
    data.p_star_star = 1.0 + 2.0 / data.tau_minus;
    if (params.p) {
        const double p = *params.p;
        const double s = 2.0 / (p - 1.0);
        data.scaling = s;
        const double prod = (s - data.tau_minus) * (s - data.tau_plus);
        if (prod > 0.0) data.K = std::pow(prod, 1.0 / (p - 1.0));
        if (std::abs(p - data.p_star_star) <= 1e-12 * data.p_star_star)
            data.K_bar = std::pow(data.tau_minus * root, data.tau_minus / 2.0);
    }
    return data;
}

ClosedFormSolution pkm_solution_from_data(const ProblemParams& params, double r0, double u0) {
    validate(params);
    if (params.k < 2 || params.k > params.N - 1)
        throw std::invalid_argument("pkm_solution_from_data: need 2 <= k <= N-1");
    const double mu = require_mu(params);
    const double p = require_p(params);
    if (!(r0 > 0.0 && r0 < 1.0))
        throw std::invalid_argument("pkm_solution_from_data: need r0 in (0, 1)");
    if (!(u0 > 0.0))
        throw std::invalid_argument("pkm_solution_from_data: need u0 > 0");

    const double s = 2.0 / (p - 1.0);
    const double ratio = mu / params.k;
    const double A = mu * (p - 1.0) / params.k;
    double c = 0.0;
    if (std::abs(s - ratio) <= 1e-12 * std::max(s, ratio)) {
        c = (p - 1.0) / params.k * std::log(r0) + std::pow(u0, 1.0 - p) / (r0 * r0);
    } else if (ratio < s) {
        const double B = 2.0 * params.k / (p - 1.0) - mu;
        c = std::pow(r0, 2.0 - A) / B + std::pow(u0 * std::pow(r0, ratio), 1.0 - p);
    } else {
        const double B = mu - 2.0 * params.k / (p - 1.0);
        c = std::pow(r0, -A) * (std::pow(u0, 1.0 - p) - r0 * r0 / B);
    }
    return make_pkm_closed_form(params, c, r0);
}

LimitData pkm_limit_constant(const ClosedFormSolution& sol) {
    const double mu = require_mu(sol.params);
    const double p = require_p(sol.params);
    const double k = sol.params.k;
    const double q = 1.0 / (p - 1.0);
    LimitData data;
    switch (sol.family) {
        case ClosedFormFamily::pkm_case1:
            // u r^{mu/k} = (c - r^{2-A}/B)^{-1/(p-1)} -> c^{-1/(p-1)}
            data.exponent = mu / k;
            data.log_power = 0.0;
            data.constant = std::pow(sol.c, -q);
            return data;
        case ClosedFormFamily::pkm_case2:
            data.exponent = 2.0 / (p - 1.0);
            data.log_power = q;
            data.constant = std::pow(k / (p - 1.0), q);
            return data;
        case ClosedFormFamily::pkm_case3:
            data.exponent = 2.0 / (p - 1.0);
            data.log_power = 0.0;
            data.constant = std::pow(mu - 2.0 * k / (p - 1.0), q);
            return data;
        default:
            throw std::invalid_argument("pkm_limit_constant: not a pkm superlinear family");
    }
}

InitialData pkp_initial_data(const ProblemParams& params, DataRecipe recipe, double r0,
                             double amplitude) {
    if (!(r0 > 0.0 && r0 < 1.0))
        throw std::invalid_argument("pkp_initial_data: need r0 in (0, 1)");
    if (!(amplitude > 0.0))
        throw std::invalid_argument("pkp_initial_data: need amplitude > 0");
    const ExponentData exps = compute_exponents(params);
    InitialData data;
    data.r0 = r0;
    switch (recipe) {
        case DataRecipe::scaling: {
            if (!exps.K)
                throw std::invalid_argument("pkp_initial_data: no scaling solution for this p");
            const double s = *exps.scaling;
            data.u0 = *exps.K * std::pow(r0, -s);
            data.du0 = -s * data.u0 / r0;
            return data;
        }
        case DataRecipe::tau_minus:
            data.u0 = amplitude;
            data.du0 = -exps.tau_minus * data.u0 / r0;
            return data;
        case DataRecipe::tau_plus:
            data.u0 = amplitude;
            data.du0 = -exps.tau_plus * data.u0 / r0;
            return data;
    }
    throw std::logic_error("pkp_initial_data: unknown recipe");
}

const char* event_name(IntegrationEvent::Type type) {
    switch (type) {
        case IntegrationEvent::Type::branch_crossing: return "branch_crossing";
        case IntegrationEvent::Type::positivity_lost: return "positivity_lost";
        case IntegrationEvent::Type::step_underflow: return "step_underflow";
    }
    return "unknown";
}

namespace {

struct ScaledSystem {
    double s, kappa, b1, p;

    Vec2 rhs(Vec2 state) const {
        const double y = state.x, yp = state.y;
        const double power = y > 0.0 ? std::pow(y, p) : 0.0;
        return {yp, power - b1 * yp - kappa * y};
    }
    // sign(u'' - u'/r) at fixed r equals the sign of this expression
    double branch_indicator(Vec2 state) const {
        const double y = state.x, yp = state.y;
        const double ypp = rhs(state).y;
        return ypp + (2.0 * s + 2.0) * yp + s * (s + 2.0) * y;
    }
};

double bisect_on_step(const OdeStep& step, const std::function<double(double, Vec2)>& fn) {
    double lo = step.t0, hi = step.t1;
    double flo = fn(lo, hermite_eval(step, lo));
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(mid, hermite_eval(step, mid));
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) <= 1e-15 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

IntegrationResult integrate_pkp_superlinear(const ProblemParams& params, double r0, double u0,
                                            double du0, double r_end,
                                            const IntegrateOptions& options) {
    validate(params);
    require_strict_degeneracy(params);
    const double mu = require_mu(params);
    const double p = require_p(params);
    if (params.k < 3) throw std::invalid_argument("integrate_pkp_superlinear: requires k >= 3");
    const double half = (params.k - 2) / 2.0;
    if (!(mu < half * half))
        throw std::invalid_argument("integrate_pkp_superlinear: requires mu < ((k-2)/2)^2");
    if (!(u0 > 0.0)) throw std::invalid_argument("integrate_pkp_superlinear: need u0 > 0");
    if (!(r0 > 0.0 && r_end > 0.0 && r_end != r0))
        throw std::invalid_argument("integrate_pkp_superlinear: need positive r0 != r_end");

    ScaledSystem sys;
    sys.s = 2.0 / (p - 1.0);
    sys.kappa = sys.s * sys.s - (params.k - 2) * sys.s + mu;
    sys.b1 = 2.0 * sys.s + 2.0 - params.k;
    sys.p = p;

    const double T = std::log(r0 / r_end);
    Vec2 state;
    state.x = u0 * std::pow(r0, sys.s);
    state.y = -du0 * std::pow(r0, sys.s + 1.0) - sys.s * state.x;

    // Segment boundaries: requested sample radii, traversed in integration order.
    std::vector<double> stops;
    for (double r : options.sample_at) {
        const double t = std::log(r0 / r);
        if ((T > 0.0 && t > 1e-14 && t < T - 1e-14) || (T < 0.0 && t < -1e-14 && t > T + 1e-14))
            stops.push_back(t);
    }
    stops.push_back(T);
    std::sort(stops.begin(), stops.end());
    if (T < 0.0) std::reverse(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    IntegrationResult result;
    std::vector<double> ts{0.0};
    std::vector<Vec2> states{state};

    OdeOptions ode;
    ode.rtol = options.rtol;
    ode.atol = options.atol;
    ode.max_step = options.max_step_log;

    const auto rhs = [&sys](double, Vec2 v) { return sys.rhs(v); };
    double prev_ind = sys.branch_indicator(state);
    bool stopped = false;

    double t_cursor = 0.0;
    for (double t_stop : stops) {
        if (stopped) break;
        const auto on_step = [&](const OdeStep& step) -> bool {
            // positivity exit
            if (step.y1.x <= 0.0) {
                const double t_star = bisect_on_step(
                    step, [](double, Vec2 v) { return v.x; });
                result.events.push_back({IntegrationEvent::Type::positivity_lost,
                                         r0 * std::exp(-t_star), "u reached 0"});
                stopped = true;
                return false;
            }
            const double ind = sys.branch_indicator(step.y1);
            if ((prev_ind > 0.0 && ind < 0.0) || (prev_ind < 0.0 && ind > 0.0)) {
                const double t_star = bisect_on_step(step, [&sys](double, Vec2 v) {
                    return sys.branch_indicator(v);
                });
                result.events.push_back({IntegrationEvent::Type::branch_crossing,
                                         r0 * std::exp(-t_star),
                                         "sign change of u'' - u'/r"});
            }
            prev_ind = ind;
            ts.push_back(step.t1);
            states.push_back(step.y1);
            return true;
        };
        const OdeStatus status = integrate_dp54(rhs, t_cursor, states.back(), t_stop, ode, on_step);
        if (stopped) break;
        if (status == OdeStatus::step_underflow || status == OdeStatus::too_many_steps) {
            result.events.push_back({IntegrationEvent::Type::step_underflow,
                                     r0 * std::exp(-ts.back()),
                                     status == OdeStatus::step_underflow
                                         ? "step size underflow (blowup?)"
                                         : "step budget exhausted"});
            stopped = true;
            break;
        }
        t_cursor = t_stop;
    }
    result.completed = !stopped;

    if (ts.size() < 2)
        throw std::runtime_error("integrate_pkp_superlinear: could not take a single step");

    // Convert the scaled states back to u(r) with derivatives, ascending in r.
    const std::size_t n = ts.size();
    RadialProfile& profile = result.profile;
    std::vector<double> radii(n);
    profile.values.resize(n);
    profile.deriv.resize(n);
    profile.deriv2.resize(n);
    const bool inward = T > 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = inward ? n - 1 - i : i;
        const double t = ts[j];
        const Vec2 v = states[j];
        const double r = r0 * std::exp(-t);
        const double ypp = sys.rhs(v).y;
        radii[i] = r;
        profile.values[i] = v.x * std::pow(r, -sys.s);
        profile.deriv[i] = -(v.y + sys.s * v.x) * std::pow(r, -sys.s - 1.0);
        profile.deriv2[i] =
            (ypp + (2.0 * sys.s + 1.0) * v.y + sys.s * (sys.s + 1.0) * v.x) *
            std::pow(r, -sys.s - 2.0);
    }
    profile.mesh = mesh_from_nodes(std::move(radii));
    return result;
}

const char* tag_name(AsymptoticClass::Tag tag) {
    switch (tag) {
        case AsymptoticClass::Tag::exp_tau_minus: return "exp_tau_minus";
        case AsymptoticClass::Tag::exp_tau_plus: return "exp_tau_plus";
        case AsymptoticClass::Tag::exp_scaling: return "exp_scaling";
        case AsymptoticClass::Tag::exp_mu_over_k: return "exp_mu_over_k";
        case AsymptoticClass::Tag::log_corrected: return "log_corrected";
    }
    return "unknown";
}

namespace {

struct FitData {
    std::vector<double> x;  // ln r
    std::vector<double> z;  // ln(-ln r)
    std::vector<double> y;  // ln u
};

struct Fit {
    double alpha = 0.0;  // u ~ r^{-alpha}
    double beta = 0.0;   // (-ln r)^{-beta}
    double a0 = 0.0;
    double r2 = 0.0;
};

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

double r_squared(const FitData& d, double a0, double alpha, double beta) {
    const double ym = mean(d.y);
    double rss = 0.0, tss = 0.0;
    for (std::size_t i = 0; i < d.y.size(); ++i) {
        const double fit = a0 - alpha * d.x[i] - beta * d.z[i];
        rss += (d.y[i] - fit) * (d.y[i] - fit);
        tss += (d.y[i] - ym) * (d.y[i] - ym);
    }
    if (tss == 0.0) return rss == 0.0 ? 1.0 : 0.0;
    return 1.0 - rss / tss;
}

Fit fit_power(const FitData& d) {
    const double xm = mean(d.x), ym = mean(d.y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        sxx += (d.x[i] - xm) * (d.x[i] - xm);
        sxy += (d.x[i] - xm) * (d.y[i] - ym);
    }
    Fit fit;
    fit.alpha = -sxy / sxx;
    fit.beta = 0.0;
    fit.a0 = ym + fit.alpha * xm;
    fit.r2 = r_squared(d, fit.a0, fit.alpha, 0.0);
    return fit;
}

Fit fit_power_log(const FitData& d) {
    // least squares for y = a0 - alpha x - beta z
    const std::size_t n = d.x.size();
    double Sx = 0, Sz = 0, Sy = 0, Sxx = 0, Szz = 0, Sxz = 0, Sxy = 0, Szy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Sx += d.x[i];
        Sz += d.z[i];
        Sy += d.y[i];
        Sxx += d.x[i] * d.x[i];
        Szz += d.z[i] * d.z[i];
        Sxz += d.x[i] * d.z[i];
        Sxy += d.x[i] * d.y[i];
        Szy += d.z[i] * d.y[i];
    }
    // normal equations for (a0, -alpha, -beta)
    const double M[3][3] = {{double(n), Sx, Sz}, {Sx, Sxx, Sxz}, {Sz, Sxz, Szz}};
    const double rhs[3] = {Sy, Sxy, Szy};
    // Gaussian elimination, 3x3
    double A[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) A[i][j] = M[i][j];
        A[i][3] = rhs[i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        for (int j = 0; j < 4; ++j) std::swap(A[col][j], A[piv][j]);
        for (int row = col + 1; row < 3; ++row) {
            const double m = A[row][col] / A[col][col];
            for (int j = col; j < 4; ++j) A[row][j] -= m * A[col][j];
        }
    }
    double sol[3];
    for (int i = 2; i >= 0; --i) {
        double s = A[i][3];
        for (int j = i + 1; j < 3; ++j) s -= A[i][j] * sol[j];
        sol[i] = s / A[i][i];
    }
    Fit fit;
    fit.a0 = sol[0];
    fit.alpha = -sol[1];
    fit.beta = -sol[2];
    fit.r2 = r_squared(d, fit.a0, fit.alpha, fit.beta);
    return fit;
}

struct Candidate {
    AsymptoticClass::Tag tag;
    double alpha;
    double beta;
};

double candidate_distance(const Fit& fit, const Candidate& cand) {
    const double da = std::abs(fit.alpha - cand.alpha) / std::abs(cand.alpha);
    const double db = std::abs(fit.beta - cand.beta) / std::max(std::abs(cand.beta), 0.25);
    return std::max(da, db);
}

}  // namespace

AsymptoticClass classify_asymptotics(const RadialProfile& profile, const ProblemParams& params,
                                     const ClassifyOptions& options) {
    validate(profile);
    validate(params);
    const double r_lo_prof = profile.mesh.nodes.front();
    if (r_lo_prof > 1e-4 * (1.0 + 1e-12))
        throw std::invalid_argument("classify_asymptotics: profile must reach r <= 1e-4");

    // Fit window: the last two decades, excluding the final half-decade where
    // truncation contaminates the samples.
    const double w_lo = r_lo_prof * std::pow(10.0, 0.5);
    const double w_hi = std::min(r_lo_prof * std::pow(10.0, 2.5), profile.mesh.r_max());

    FitData data;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double r = profile.mesh.nodes[i];
        if (r < w_lo || r > w_hi) continue;
        const double u = profile.values[i];
        if (!(u > 0.0))
            throw std::invalid_argument("classify_asymptotics: profile values must be positive");
        data.x.push_back(std::log(r));
        data.z.push_back(std::log(-std::log(r)));
        data.y.push_back(std::log(u));
    }
    const double decades = std::log10(w_hi / w_lo);
    if (decades <= 0.5 || data.x.size() < options.min_points_per_decade * decades)
        throw std::invalid_argument(
            "classify_asymptotics: need >= 30 samples per decade over the fit window");

    std::vector<Candidate> pure, logged;
    if (params.p) {
        const double s = 2.0 / (*params.p - 1.0);
        pure.push_back({AsymptoticClass::Tag::exp_scaling, s, 0.0});
        logged.push_back({AsymptoticClass::Tag::log_corrected, s, 1.0 / (*params.p - 1.0)});
    }
    if (params.mu) {
        pure.push_back({AsymptoticClass::Tag::exp_mu_over_k, *params.mu / params.k, 0.0});
        const double half = (params.k - 2) / 2.0;
        if (params.k >= 3 && *params.mu < half * half) {
            const double root = std::sqrt(half * half - *params.mu);
            pure.push_back({AsymptoticClass::Tag::exp_tau_minus, half - root, 0.0});
            pure.push_back({AsymptoticClass::Tag::exp_tau_plus, half + root, 0.0});
            logged.push_back(
                {AsymptoticClass::Tag::log_corrected, half - root, (half - root) / 2.0});
        }
    }

    const Fit power = fit_power(data);
    const Fit power_log = fit_power_log(data);

    AsymptoticClass out;
    out.window_lo = w_lo;
    out.window_hi = w_hi;

    const auto finish = [&](AsymptoticClass::Tag tag, double alpha, double beta, bool snapped) {
        out.tag = tag;
        out.exponent = alpha;
        out.log_power = beta;
        // refit the constant with the (possibly snapped) law
        double a0 = 0.0;
        for (std::size_t i = 0; i < data.y.size(); ++i)
            a0 += data.y[i] + alpha * data.x[i] + beta * data.z[i];
        a0 /= data.y.size();
        out.leading_constant = std::exp(a0);
        out.fit_r2 = r_squared(data, a0, alpha, beta);
        if (snapped && !(out.exponent > 0.0))
            throw std::logic_error("classify_asymptotics: snapped exponent not positive");
        return out;
    };

    // Pure power law first: the free fit must be both close to a candidate
    // and an adequate explanation on its own.
    if (power.r2 >= options.r2_min) {
        const Candidate* best = nullptr;
        double best_dist = options.snap_rel_tol;
        for (const auto& cand : pure) {
            const double dist = candidate_distance(power, cand);
            if (dist <= best_dist) {
                best_dist = dist;
                best = &cand;
            }
        }
        if (best) return finish(best->tag, best->alpha, best->beta, true);
    }
    // Then the log-corrected laws.
    if (power_log.r2 >= options.r2_min) {
        const Candidate* best = nullptr;
        double best_dist = options.snap_rel_tol;
        for (const auto& cand : logged) {
            const double dist = candidate_distance(power_log, cand);
            if (dist <= best_dist) {
                best_dist = dist;
                best = &cand;
            }
        }
        if (best) return finish(best->tag, best->alpha, best->beta, true);
    }
    // No admissible pair nearby: report the raw fit.
    const bool log_significant =
        std::abs(power_log.beta) > 0.05 && power_log.r2 > power.r2;
    const Fit& raw = log_significant ? power_log : power;
    if (!(raw.alpha > 0.0))
        throw std::domain_error("classify_asymptotics: no blow-up detected (exponent <= 0)");
    return finish(AsymptoticClass::Tag::log_corrected, raw.alpha,
                  log_significant ? raw.beta : 0.0, false);
}

}  // namespace trunclap
