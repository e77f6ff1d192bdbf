#include "tridiag.hpp"

#include <cmath>
#include <stdexcept>

namespace trunclap {

TridiagLU tridiag_factor(const std::vector<double>& lower, const std::vector<double>& diag,
                         const std::vector<double>& upper) {
    const int n = static_cast<int>(diag.size());
    if (static_cast<int>(lower.size()) != n - 1 || static_cast<int>(upper.size()) != n - 1)
        throw std::invalid_argument("tridiag_factor: band size mismatch");

    TridiagLU lu;
    lu.n = n;
    lu.d = diag;
    lu.dl = lower;
    lu.du = upper;
    lu.du2.assign(std::max(0, n - 2), 0.0);
    lu.pivoted.assign(std::max(0, n - 1), 0);

    double scale = 0.0;
    for (double v : diag) scale = std::max(scale, std::abs(v));
    for (double v : upper) scale = std::max(scale, std::abs(v));
    const double tiny = std::max(scale, 1.0) * 1e-300;

    for (int i = 0; i < n - 1; ++i) {
        if (std::abs(lu.d[i]) >= std::abs(lu.dl[i])) {
            if (std::abs(lu.d[i]) == 0.0) lu.d[i] = tiny;
            const double m = lu.dl[i] / lu.d[i];
            lu.dl[i] = m;
            lu.d[i + 1] -= m * lu.du[i];
            if (i < n - 2) lu.du2[i] = 0.0;
        } else {
            // swap rows i and i+1
            const double m = lu.d[i] / lu.dl[i];
            lu.d[i] = lu.dl[i];
            lu.dl[i] = m;
            const double tmp = lu.du[i];
            lu.du[i] = lu.d[i + 1];
            lu.d[i + 1] = tmp - m * lu.d[i + 1];
            if (i < n - 2) {
                lu.du2[i] = lu.du[i + 1];
                lu.du[i + 1] = -m * lu.du[i + 1];
            }
            lu.pivoted[i] = 1;
        }
    }
    if (std::abs(lu.d[n - 1]) == 0.0) lu.d[n - 1] = tiny;
    return lu;
}

void tridiag_solve(const TridiagLU& lu, std::vector<double>& x) {
    const int n = lu.n;
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("tridiag_solve: size mismatch");

    // forward substitution with the recorded row swaps
    for (int i = 0; i < n - 1; ++i) {
        if (lu.pivoted[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= lu.dl[i] * x[i];
    }
    // back substitution
    x[n - 1] /= lu.d[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - lu.du[n - 2] * x[n - 1]) / lu.d[n - 2];
    for (int i = n - 3; i >= 0; --i)
        x[i] = (x[i] - lu.du[i] * x[i + 1] - lu.du2[i] * x[i + 2]) / lu.d[i];
}

std::vector<double> tridiag_apply(const Tridiag& A, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        y[i] = A.diag[i] * x[i];
        if (i > 0) y[i] += A.off[i - 1] * x[i - 1];
        if (i < n - 1) y[i] += A.off[i] * x[i + 1];
    }
    return y;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace trunclap
