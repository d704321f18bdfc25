#pragma once

// Assembly of the n x n smoother matrix from a symmetric filter plus a
// boundary policy, and its application to series.

#include <optional>
#include <string>
#include <vector>

#include "trendlab/filters.hpp"
#include "trendlab/matrix.hpp"

namespace trendlab {

enum class BoundaryKind { lpr, lc, ql, cq, reflecting, circulant, custom };
enum class ReplaceScope { all_boundary_rows, realtime_row_only };

struct BoundaryPolicy {
    BoundaryKind kind = BoundaryKind::reflecting;
    ReplaceScope scope = ReplaceScope::all_boundary_rows;
    double noise_ratio = musgrave_noise_ratio();   // lc / ql / cq
    std::optional<LocalPolySpec> lpr;              // required for kind == lpr
    std::optional<int> lpr_degree;                 // boundary fit degree, defaults to interior p
    std::vector<AsymmetricFilter> custom_rows;     // kind == custom, index q = 0..h-1
};

struct SmootherMatrix {
    Matrix entries;
    int h = 0;
    int n = 0;
    BoundaryPolicy policy{};
    SymmetricFilter source{};  // the interior filter the matrix was built from
};

struct TimeSeries {
    std::vector<std::string> timestamps;  // opaque labels, row order defines time order
    std::vector<double> values;

    int length() const { return static_cast<int>(values.size()); }
};

/// Interior rows carry the symmetric weights; the last h rows carry the
/// policy's filters for q = h-1..0 and the first h rows are their exchange
/// transform, so centrosymmetry holds by construction. Requires n > 2h.
SmootherMatrix build_smoother(const SymmetricFilter& sym, const BoundaryPolicy& policy, int n);

/// The right-boundary filter a policy produces for a point with q future
/// observations available.
AsymmetricFilter boundary_filter(const SymmetricFilter& sym, const BoundaryPolicy& policy, int q);

/// Folded filter under the reflecting hypothesis (missing future values
/// replaced by reflected past ones).
AsymmetricFilter reflecting_fold_filter(const SymmetricFilter& sym, int q);
AsymmetricFilter reflecting_realtime_filter(const SymmetricFilter& sym);

/// Circulant matrix with only the first/last row swapped for the policy's
/// real-time filter (and its mirror). Not banded: the untouched rows keep
/// their wrap-around corrections.
SmootherMatrix circulant_with_realtime_rows(const SymmetricFilter& sym, const BoundaryPolicy& policy, int n);

TimeSeries apply(const SmootherMatrix& s, const TimeSeries& y);

/// max-norm of S x_r - x_r where x_r has t-th coordinate t^r (t = 1..n).
double polynomial_reproduction_residual(const SmootherMatrix& s, int r);

/// Structural checks: band support (skipped for circulant policies), exact
/// centrosymmetry, row sums within tol. Throws ConfigError on violation.
void validate_smoother(const SmootherMatrix& s, double row_sum_tol = 1e-12);

}  // namespace trendlab
