#pragma once

// Numerical spectral machinery: spectral norm by power iteration on A'A,
// cyclic Jacobi for symmetric matrices, Householder + Francis double-shift
// QR for the general case, and the perturbation reports that compare a
// smoother's spectrum against the analytic algebra eigenvalues.

#include <complex>
#include <vector>

#include "trendlab/algebra.hpp"
#include "trendlab/matrix.hpp"
#include "trendlab/smoother.hpp"

namespace trendlab {

struct EigenSystem {
    std::vector<double> values;  // unordered (diagonal order of the converged matrix)
    Matrix vectors;              // column i pairs with values[i]
    double residual = 0.0;       // max_i ||A v_i - lambda_i v_i||_2
};

/// ||A||_2 = sqrt(largest eigenvalue of A'A), deterministic power iteration.
/// Starts from the normalised all-ones vector; once the Rayleigh quotient has
/// stalled (relative change below 1e-12 for 5 consecutive steps) the
/// iteration restarts once from a fixed seeded pseudo-random vector and the
/// larger of the two limits wins, guarding against a start vector orthogonal
/// to the dominant eigenvector.
double spectral_norm(const Matrix& a);

/// Cyclic Jacobi; requires symmetry within 1e-12 of the matrix scale.
EigenSystem symmetric_eigen(const Matrix& a);

/// All eigenvalues of a real square matrix. Conjugate pairs come out
/// adjacent. Eigenvectors are not computed.
std::vector<std::complex<double>> general_eigenvalues(const Matrix& a);

enum class AlgebraKind { circulant, tau11 };

struct PerturbationReport {
    AlgebraKind algebra = AlgebraKind::tau11;
    double delta = 0.0;                                 // ||S - A||_2
    std::vector<double> reference_values;               // analytic spectrum of the algebra operator
    std::vector<std::complex<double>> smoother_values;  // sigma(S), general eigensolver
    std::vector<double> match_distance;                 // min_i |lambda - reference_i| per lambda
    std::vector<int> nearest_index;
    bool containment = false;  // all match distances <= delta (plus eigensolver slack)
    double max_imag = 0.0;     // finite-dimension artefact, exposed for inspection
};

PerturbationReport perturbation_report(const SmootherMatrix& s, AlgebraKind algebra);

/// (S - H) z_i for the i-th tau_11 eigenvector (1-based natural order).
/// Supported on the first/last h coordinates up to roundoff.
std::vector<double> eigenvector_perturbation(const SmootherMatrix& s, int i);

}  // namespace trendlab
