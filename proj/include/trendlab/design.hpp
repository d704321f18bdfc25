#pragma once

// Eigenvalue-cutoff filter design: pick the retained count k, zero the
// trailing tau eigenvalues, and rebuild a smoother with the boundary rows
// restored. Includes the bias/variance diagnostics of the redesign.

#include <vector>

#include "trendlab/algebra.hpp"
#include "trendlab/matrix.hpp"
#include "trendlab/smoother.hpp"

namespace trendlab {

struct CutoffDesign {
    int k = 0;                      // retained count
    double threshold = 0.0;         // smallest retained eigenvalue (xi_k in descending order)
    std::vector<int> retained;      // natural (frequency-order) indices, 0-based, ascending
    std::vector<double> xi_sorted;  // descending, ties broken by ascending natural index
    std::vector<int> sort_index;    // xi_sorted[r] == xi[sort_index[r]]
};

/// Default rule: retain every eigenvalue >= 0.5 (the ideal-low-pass distance
/// f(k) is indifferent at exactly 0.5, so the boundary case is kept).
CutoffDesign select_cutoff(const std::vector<double>& xi);
/// Retain the top k of the descending order.
CutoffDesign select_cutoff_k(const std::vector<double>& xi, int k);
/// Retain every eigenvalue >= threshold.
CutoffDesign select_cutoff_threshold(const std::vector<double>& xi, double threshold);

/// f(k) = ||i_(k) - xi||^2 against the ideal low-pass spectrum, computed on
/// the descending order.
double cutoff_objective(const std::vector<double>& xi_sorted, int k);

/// Time-frequency conversion: k = round(2n / period) for a cycle of the
/// given length in samples. Requires period > 2 (Nyquist).
int cutoff_from_period(int n, double period);

/// H_k = Z Xi_k Z' with the non-retained eigenvalues zeroed; symmetric.
Matrix truncated_operator(const TauOperator& op, const CutoffDesign& design);

struct DesignedSmoother {
    TauOperator base{};
    std::vector<double> xi;     // natural-order eigenvalues of H
    Matrix eigenvectors;        // Z
    Matrix h_matrix;            // dense H
    Matrix truncated;           // H_k
    Matrix final_entries;       // S_k: interior of H_k, boundary rows restored
    SmootherMatrix reference;   // the untruncated smoother with the same policy
    CutoffDesign design{};
    BoundaryPolicy policy{};
    int h = 0;
    int n = 0;
};

/// Assemble S_k. With scope all_boundary_rows every boundary row comes from
/// the policy; with realtime_row_only just the first/last row does and the
/// remaining boundary rows keep the reflecting folds of H.
DesignedSmoother designed_smoother(const TauOperator& op, const CutoffDesign& design,
                                   const BoundaryPolicy& policy);

/// Delta_H = S - H: the boundary adjustment of the untruncated smoother.
Matrix boundary_perturbation(const DesignedSmoother& d);
/// Delta_k = S_k - H_k - Delta_H: what restoring the boundaries adds on top
/// of the truncation.
Matrix truncation_adjustment(const DesignedSmoother& d);

/// theta = Z'y: coordinates of the series in the latent cosine components.
std::vector<double> latent_decomposition(const std::vector<double>& y, const Matrix& z);

struct VarianceReport {
    std::vector<double> factor;         // diag(S S') under unit white noise
    std::vector<double> factor_k;       // diag(S_k S_k')
    std::vector<double> interior_term;  // diag of Z (Xi^2 - Xi_k^2) Z'
};
VarianceReport variance_diagnostics(const SmootherMatrix& s, const DesignedSmoother& d);

/// -(1/n) * sum of the zeroed eigenvalues == (1/n) tr(Xi_k - Xi).
double bias_discrepancy(const std::vector<double>& xi, const CutoffDesign& design);

}  // namespace trendlab
