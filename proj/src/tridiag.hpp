#ifndef TRUNCLAP_SRC_TRIDIAG_HPP
#define TRUNCLAP_SRC_TRIDIAG_HPP

#include <vector>

namespace trunclap {

// Symmetric tridiagonal matrix in banded storage.
struct Tridiag {
    std::vector<double> diag;  // n
    std::vector<double> off;   // n-1
};

// LU factorization with partial pivoting (dgttrf layout: second superdiagonal
// fill). Zero pivots are nudged so inverse iteration can shift onto an
// eigenvalue.
struct TridiagLU {
    int n = 0;
    std::vector<double> dl, d, du, du2;
    std::vector<int> pivoted;  // 1 where rows i, i+1 were swapped
};

TridiagLU tridiag_factor(const std::vector<double>& lower, const std::vector<double>& diag,
                         const std::vector<double>& upper);

void tridiag_solve(const TridiagLU& lu, std::vector<double>& x);

// y = A x for symmetric tridiagonal A.
std::vector<double> tridiag_apply(const Tridiag& A, const std::vector<double>& x);

double dot(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace trunclap

#endif
