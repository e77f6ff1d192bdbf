#include "trunclap/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "trunclap/params.hpp"

namespace trunclap {

GradedMesh build_mesh(double r_min, int n_elems, double grading) {
    if (!(r_min > 0.0 && r_min < 1.0))
        throw std::invalid_argument("build_mesh: need 0 < r_min < 1 (the singularity sits at 0)");
    if (n_elems < 2) throw std::invalid_argument("build_mesh: need n_elems >= 2");
    if (!(grading > 0.0 && grading <= 1.0))
        throw std::invalid_argument("build_mesh: grading must lie in (0, 1]");

    GradedMesh mesh;
    mesh.grading = grading;
    mesh.nodes.resize(n_elems + 1);

    int m = 0;  // number of geometric elements above r_min
    if (grading < 1.0) {
        // Grow geometrically while the top geometric element stays no wider
        // than a uniform fill of what remains.
        const double ratio = 1.0 / grading;
        double g = r_min;
        for (int cand = 1; cand <= n_elems - 1; ++cand) {
            const double g_next = r_min * std::pow(ratio, cand);
            if (g_next >= 1.0) break;
            const double geo_width = g_next - r_min * std::pow(ratio, cand - 1);
            const double uni_width = (1.0 - g_next) / (n_elems - cand);
            if (geo_width > uni_width) break;
            m = cand;
            g = g_next;
        }
        (void)g;
    }

    for (int i = 0; i <= m; ++i) mesh.nodes[i] = r_min * std::pow(1.0 / grading, i);
    const double top = mesh.nodes[m];
    const double h = (1.0 - top) / (n_elems - m);
    for (int i = m + 1; i <= n_elems; ++i) mesh.nodes[i] = top + (i - m) * h;
    mesh.nodes[n_elems] = 1.0;

    for (std::size_t i = 0; i + 1 < mesh.nodes.size(); ++i)
        if (!(mesh.nodes[i] < mesh.nodes[i + 1]))
            throw std::invalid_argument("build_mesh: degenerate grading/n_elems combination");
    return mesh;
}

GradedMesh mesh_from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("mesh_from_nodes: need at least two nodes");
    if (!(nodes.front() > 0.0)) throw std::invalid_argument("mesh_from_nodes: nodes must be > 0");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw std::invalid_argument("mesh_from_nodes: nodes must be strictly increasing");
    GradedMesh mesh;
    mesh.nodes = std::move(nodes);
    mesh.grading = 1.0;
    return mesh;
}

double power_integral(double a, double b, double s) {
    if (!(a > 0.0 && b >= a)) throw std::invalid_argument("power_integral: need 0 < a <= b");
    const double e = s + 1.0;
    const double L = std::log(b / a);
    if (e == 0.0) return L;
    // a^e * (exp(e L) - 1) / e; expm1 keeps full precision for thin elements
    // and for exponents straddling -1.
    return std::pow(a, e) * std::expm1(e * L) / e;
}

namespace {

// Series path for thin elements: substitute r = a(1+u), u in [0, delta],
// expand (1+u)^s binomially and integrate the hat polynomials exactly.
// All coefficient combinations below are single-signed, so no cancellation.
ElementMoments moments_series(double a, double delta, double s) {
    ElementMoments out;
    double S0 = 0.0, Ta = 0.0, Tb = 0.0, Uaa = 0.0, Uab = 0.0, Ubb = 0.0;
    double c = 1.0;        // binomial coefficient C(s, m)
    double dpow = delta;   // delta^{m+1}
    for (int m = 0; m < 80; ++m) {
        const double t0 = c * dpow / (m + 1);
        S0 += t0;
        Ta += c * dpow * delta / ((m + 1.0) * (m + 2.0));
        Tb += c * dpow * delta / (m + 2.0);
        Uaa += 2.0 * c * dpow * delta * delta / ((m + 1.0) * (m + 2.0) * (m + 3.0));
        Uab += c * dpow * delta * delta / ((m + 2.0) * (m + 3.0));
        Ubb += c * dpow * delta * delta / (m + 3.0);
        if (std::abs(t0) < 1e-18 * std::abs(S0)) break;
        c *= (s - m) / (m + 1.0);
        dpow *= delta;
    }
    const double front = std::pow(a, s + 1.0);
    out.w = front * S0;
    out.wphi[0] = front * Ta / delta;
    out.wphi[1] = front * Tb / delta;
    out.waa = front * Uaa / (delta * delta);
    out.wab = front * Uab / (delta * delta);
    out.wbb = front * Ubb / (delta * delta);
    return out;
}

ElementMoments moments_from_powers(double a, double b, double s) {
    ElementMoments out;
    const double h = b - a;
    const double m0 = power_integral(a, b, s);
    const double m1 = power_integral(a, b, s + 1.0);
    const double m2 = power_integral(a, b, s + 2.0);
    out.w = m0;
    out.wphi[0] = (b * m0 - m1) / h;
    out.wphi[1] = (m1 - a * m0) / h;
    out.waa = (b * b * m0 - 2.0 * b * m1 + m2) / (h * h);
    out.wab = (-a * b * m0 + (a + b) * m1 - m2) / (h * h);
    out.wbb = (a * a * m0 - 2.0 * a * m1 + m2) / (h * h);
    return out;
}

}  // namespace

ElementMoments weighted_element_moments(double a, double b, double s) {
    if (!(a > 0.0 && b > a)) throw std::invalid_argument("weighted_element_moments: need 0 < a < b");
    const double delta = (b - a) / a;
    // The closed-form assembly loses ~(a/h)^2 ulps to cancellation; switch to
    // the series once the element is thin relative to its position.
    if (delta <= 0.25) return moments_series(a, delta, s);
    return moments_from_powers(a, b, s);
}

std::vector<ElementMoments> weighted_element_integrals(const GradedMesh& mesh, double s) {
    std::vector<ElementMoments> table;
    table.reserve(mesh.n_elems());
    for (std::size_t i = 0; i + 1 < mesh.nodes.size(); ++i)
        table.push_back(weighted_element_moments(mesh.nodes[i], mesh.nodes[i + 1], s));
    return table;
}

void validate(const RadialProfile& profile) {
    if (profile.mesh.nodes.size() != profile.values.size())
        throw std::invalid_argument("RadialProfile: values/nodes length mismatch");
    if (profile.mesh.nodes.size() < 2)
        throw std::invalid_argument("RadialProfile: need at least two nodes");
    if (!profile.deriv.empty() && profile.deriv.size() != profile.values.size())
        throw std::invalid_argument("RadialProfile: deriv length mismatch");
    if (!profile.deriv2.empty() && profile.deriv2.size() != profile.values.size())
        throw std::invalid_argument("RadialProfile: deriv2 length mismatch");
    for (double v : profile.values)
        if (!std::isfinite(v)) throw std::invalid_argument("RadialProfile: non-finite value");
}

RadialJet jet_at(const RadialProfile& profile, std::size_t i) {
    if (!profile.has_deriv() || !profile.has_deriv2())
        throw std::invalid_argument("jet_at: profile lacks derivative samples");
    return RadialJet{profile.mesh.nodes[i], profile.values[i], profile.deriv[i],
                     profile.deriv2[i]};
}

}  // namespace trunclap
