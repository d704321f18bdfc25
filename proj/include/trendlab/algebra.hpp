#pragma once

// Circulant and tau_11 (reflecting / cosine) operators attached to a
// symmetric filter, with their exact eigensystems and the filter's transfer
// function. Everything stays in real arithmetic: for symmetric weights the
// circulant eigenvalues collapse to cosine sums, so the Fourier matrix is
// never materialised.

#include <vector>

#include "trendlab/filters.hpp"
#include "trendlab/matrix.hpp"

namespace trendlab {

struct CirculantOperator {
    std::vector<double> first_row;  // length n
    int n = 0;
    SymmetricFilter source{};
};

struct TauOperator {
    std::vector<double> first_row;  // length n, h+1 leading nonzeros
    std::vector<double> coeffs;     // length n, zero beyond index h
    int n = 0;
    SymmetricFilter source{};
};

CirculantOperator circulant_operator(const SymmetricFilter& sym, int n);
Matrix circulant_matrix(const SymmetricFilter& sym, int n);

/// zeta_i = w0 + 2 sum_d w_d cos(2 pi (i-1) d / n), natural frequency order.
std::vector<double> circulant_eigenvalues(const SymmetricFilter& sym, int n);

/// [w0+w1, w1+w2, ..., w_{h-1}+w_h, w_h, 0, ..., 0]
std::vector<double> tau_first_row(const SymmetricFilter& sym, int n);

/// Triangular-solve route: c solves Qc = first_row where column j of Q is
/// the first column of T11^{j-1}. Oracle for the closed form; the power
/// basis overflows for very large n, so n is capped.
std::vector<double> tau_coefficients_solve(const std::vector<double>& first_row, int n);

/// Closed form, length h+1: c_j = w_{j-1} + alternating Pochhammer sums of
/// the higher weights.
std::vector<double> tau_coefficients_closed(const SymmetricFilter& sym);

TauOperator tau_operator(const SymmetricFilter& sym, int n);

/// Dense H accumulated through the three-term recurrence
/// P_{j+1} = T11 P_j - P_{j-1}; explicit powers of T11 are never formed.
Matrix tau_matrix(const SymmetricFilter& sym, int n);

/// xi_i = sum_j c_j theta_i^{j-1}, theta_i = 2 cos((i-1) pi / n).
std::vector<double> tau_eigenvalues(const SymmetricFilter& sym, int n);

/// Eigenvalues of T11 itself: 2 cos((i-1) pi / n).
std::vector<double> tau_basis_eigenvalues(int n);

/// Orthogonal cosine basis; column i is the i-th eigenvector of every tau_11
/// operator of dimension n.
Matrix tau_eigenvectors(int n);

/// T11: tridiagonal of ones with unit (1,1) and (n,n) corners.
Matrix tau_basis_matrix(int n);

/// H(nu) = w0 + 2 sum_d w_d cos(nu d); real for symmetric weights.
double transfer_function_value(const SymmetricFilter& sym, double nu);

}  // namespace trendlab
