#pragma once

// Local polynomial trend filters: kernel weights, the two-sided weighted
// least squares filter, and the asymmetric boundary filters (automatic LPR
// adaptation and the minimum-revision LC/QL/CQ families).

#include <vector>

#include "trendlab/matrix.hpp"

namespace trendlab {

enum class KernelKind { henderson, uniform };

struct KernelSpec {
    KernelKind kind = KernelKind::henderson;
    int h = 6;  // half-width; the window spans 2h+1 points
};

/// Raw kernel values kappa_j for j = -h..h (index j+h). Not normalised:
/// henderson returns the cubic-smoothness products, uniform all ones.
std::vector<double> kernel_weights(const KernelSpec& spec);

struct LocalPolySpec {
    int h = 6;
    int p = 3;  // fitted polynomial degree, p <= 2h
    KernelSpec kernel{};
};

/// Two-sided filter. weights[j+h] applies to the observation at offset j.
struct SymmetricFilter {
    std::vector<double> weights;  // length 2h+1
    int h = 0;

    double at(int j) const { return weights[static_cast<size_t>(j + h)]; }
    int length() const { return 2 * h + 1; }
};

/// Boundary filter for a point with only q < h future observations.
/// weights[o+h] applies to the observation at offset o, o = -h..q.
struct AsymmetricFilter {
    std::vector<double> weights;  // length h+q+1
    int h = 0;
    int q = 0;

    double at(int o) const { return weights[static_cast<size_t>(o + h)]; }
    int length() const { return h + q + 1; }
};

/// Design matrix of time-distance powers: rows j = -h..h, columns j^0..j^p.
Matrix poly_design_matrix(int h, int p);
/// Single power column j^r over j = -h..h.
std::vector<double> poly_column(int h, int r);

SymmetricFilter symmetric_filter(const LocalPolySpec& spec);

/// LPR filter adapted to the truncated window j = -h..q, fit degree d
/// (defaults to the interior degree). q = h degenerates to the symmetric
/// filter.
AsymmetricFilter asymmetric_lpr_filter(const LocalPolySpec& spec, int q);
AsymmetricFilter asymmetric_lpr_filter(const LocalPolySpec& spec, int q, int d);

enum class MmsreFamily { lc, ql, cq };

struct MmsreSpec {
    MmsreFamily family = MmsreFamily::lc;
    double noise_ratio = 0.0;  // delta_r^2 / sigma^2
    int h = 6;
};

/// The ratio that makes the LC family coincide with the Musgrave surrogate
/// filters: 4 / (3.5^2 pi).
double musgrave_noise_ratio();

/// Minimum mean square revision error filter subject to the family's
/// polynomial constraints.
AsymmetricFilter mmsre_filter(const SymmetricFilter& sym, const MmsreSpec& spec, int q);

/// Fully general form: U holds the constraint columns, Z the trend columns
/// traded against revision variance, d the noise covariance diagonal,
/// delta_outer the (cols(Z) x cols(Z)) matrix delta*delta'. All row indices
/// run over offsets -h..h.
struct MmsreProblem {
    Matrix U;
    Matrix Z;                    // may have zero columns
    std::vector<double> d;       // length 2h+1
    Matrix delta_outer;          // cols(Z) x cols(Z)
};

AsymmetricFilter mmsre_filter_general(const SymmetricFilter& sym, const MmsreProblem& prob, int q);

/// The projector pair behind the closed form, exposed so its defining
/// identities (U_p'M = 0, U_p'L = I) can be checked directly.
struct MmsreOperators {
    Matrix M;  // m x m, m = h+q+1
    Matrix L;  // m x cols(U)
};
MmsreOperators mmsre_operators(const MmsreProblem& prob, int h, int q);

MmsreProblem mmsre_problem_for_family(const MmsreSpec& spec);

}  // namespace trendlab
