#ifndef TRUNCLAP_MESH_HPP
#define TRUNCLAP_MESH_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "trunclap/params.hpp"

namespace trunclap {

/// One-dimensional mesh on (0, 1] with nodes bounded away from the puncture.
struct GradedMesh {
    /// Strictly increasing, all > 0. build_mesh guarantees front() == r_min
    /// and back() == 1; meshes wrapping e.g. integrator output need not end
    /// at 1.
    std::vector<double> nodes;
    double grading = 1.0;

    double r_min() const { return nodes.front(); }
    double r_max() const { return nodes.back(); }
    std::size_t n_elems() const { return nodes.size() - 1; }
    std::size_t n_nodes() const { return nodes.size(); }
};

/// Mesh with n_elems+1 nodes from r_min to 1. grading = 1 is uniform;
/// grading q < 1 places geometric nodes (successive ratio q) from r_min up
/// to the crossover where the geometric element width matches a uniform fill
/// of the remainder.
GradedMesh build_mesh(double r_min, int n_elems, double grading);

/// Wraps an externally produced node set (validated: positive, strictly
/// increasing, at least two nodes).
GradedMesh mesh_from_nodes(std::vector<double> nodes);

/// Exact integral of r^s over [a, b], 0 < a <= b, any real s (log
/// antiderivative when s = -1). Stable for extreme aspect ratios b/a.
double power_integral(double a, double b, double s);

/// Exact integrals of r^s against the two linear hat functions on [a, b]:
///   w       = int r^s dr
///   wphi[i] = int r^s phi_i dr
///   waa/wab/wbb = int r^s phi_i phi_j dr
/// phi_a = (b-r)/(b-a), phi_b = (r-a)/(b-a).
struct ElementMoments {
    double w = 0.0;
    std::array<double, 2> wphi{0.0, 0.0};
    double waa = 0.0;
    double wab = 0.0;
    double wbb = 0.0;
};

ElementMoments weighted_element_moments(double a, double b, double s);

/// Per-element moment table for the whole mesh.
std::vector<ElementMoments> weighted_element_integrals(const GradedMesh& mesh,
                                                       double s);

/// Sampled radial function on a mesh, with optional derivative samples.
struct RadialProfile {
    GradedMesh mesh;
    std::vector<double> values;
    std::vector<double> deriv;   // empty or one entry per node
    std::vector<double> deriv2;  // empty or one entry per node

    bool has_deriv() const { return deriv.size() == values.size() && !deriv.empty(); }
    bool has_deriv2() const { return deriv2.size() == values.size() && !deriv2.empty(); }
    std::size_t size() const { return values.size(); }
};

/// Validates node/value consistency; throws std::invalid_argument.
void validate(const RadialProfile& profile);

/// Jet at node i; requires both derivative arrays.
RadialJet jet_at(const RadialProfile& profile, std::size_t i);

}  // namespace trunclap

#endif
