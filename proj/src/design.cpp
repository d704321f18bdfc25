#include "trendlab/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trendlab/errors.hpp"
#include "trendlab/kernels.hpp"

namespace trendlab {

namespace {

CutoffDesign make_design(const std::vector<double>& xi, int k) {
    const int n = static_cast<int>(xi.size());
    if (n == 0) throw ConfigError("cutoff design: empty spectrum");
    if (k < 1 || k > n)
        throw ConfigError("cutoff design: k must satisfy 1 <= k <= n (got k=" + std::to_string(k) + ")");
    CutoffDesign d;
    d.sort_index.resize(static_cast<size_t>(n));
    std::iota(d.sort_index.begin(), d.sort_index.end(), 0);
    std::stable_sort(d.sort_index.begin(), d.sort_index.end(), [&](int a, int b) {
        if (xi[static_cast<size_t>(a)] != xi[static_cast<size_t>(b)]) return xi[static_cast<size_t>(a)] > xi[static_cast<size_t>(b)];
        return a < b;
    });
    d.xi_sorted.resize(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) d.xi_sorted[static_cast<size_t>(r)] = xi[static_cast<size_t>(d.sort_index[static_cast<size_t>(r)])];
    d.k = k;
    d.threshold = d.xi_sorted[static_cast<size_t>(k - 1)];
    d.retained.assign(d.sort_index.begin(), d.sort_index.begin() + k);
    std::sort(d.retained.begin(), d.retained.end());
    if (d.retained.front() != 0)
        throw ConfigError("cutoff design: the unit eigenvalue (index 1) must stay retained");
    return d;
}

}  // namespace

CutoffDesign select_cutoff(const std::vector<double>& xi) {
    return select_cutoff_threshold(xi, 0.5);
}

CutoffDesign select_cutoff_threshold(const std::vector<double>& xi, double threshold) {
    int k = 0;
    for (double v : xi)
        if (v >= threshold) ++k;
    return make_design(xi, std::max(k, 1));
}

CutoffDesign select_cutoff_k(const std::vector<double>& xi, int k) { return make_design(xi, k); }

double cutoff_objective(const std::vector<double>& xi_sorted, int k) {
    double f = 0.0;
    const int n = static_cast<int>(xi_sorted.size());
    for (int r = 0; r < n; ++r) {
        const double target = r < k ? 1.0 : 0.0;
        const double d = target - xi_sorted[static_cast<size_t>(r)];
        f += d * d;
    }
    return f;
}

int cutoff_from_period(int n, double period) {
    if (period <= 2.0)
        throw ConfigError("cutoff_from_period: period must exceed 2 samples (got " +
                          std::to_string(period) + ")");
    if (n < 1) throw ConfigError("cutoff_from_period: n must be >= 1");
    return static_cast<int>(std::lround(2.0 * n / period));
}

Matrix truncated_operator(const TauOperator& op, const CutoffDesign& design) {
    const int n = op.n;
    if (static_cast<int>(design.xi_sorted.size()) != n)
        throw ConfigError("truncated_operator: design dimension mismatch");
    const std::vector<double> xi = tau_eigenvalues(op.source, n);
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int i : design.retained) keep[static_cast<size_t>(i)] = 1;

    const Matrix z = tau_eigenvectors(n);
    Matrix zs = z;  // columns scaled by the retained eigenvalues
    for (int j = 0; j < n; ++j) {
        const double s = keep[static_cast<size_t>(j)] ? xi[static_cast<size_t>(j)] : 0.0;
        for (int i = 0; i < n; ++i) zs(i, j) *= s;
    }
    Matrix hk = matmul(zs, transpose(z));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (hk(i, j) + hk(j, i));
            hk(i, j) = m;
            hk(j, i) = m;
        }
    return hk;
}

DesignedSmoother designed_smoother(const TauOperator& op, const CutoffDesign& design,
                                   const BoundaryPolicy& policy) {
    DesignedSmoother d;
    d.base = op;
    d.h = op.source.h;
    d.n = op.n;
    d.design = design;
    d.policy = policy;
    d.xi = tau_eigenvalues(op.source, op.n);
    d.eigenvectors = tau_eigenvectors(op.n);
    d.h_matrix = tau_matrix(op.source, op.n);
    d.truncated = truncated_operator(op, design);
    d.reference = build_smoother(op.source, policy, op.n);

    const int n = op.n;
    const int h = d.h;
    d.final_entries = d.truncated;
    for (int t = n - h; t < n; ++t) {
        const int q = n - 1 - t;
        AsymmetricFilter f =
            (policy.scope == ReplaceScope::realtime_row_only && q > 0)
                ? reflecting_fold_filter(op.source, q)
                : boundary_filter(op.source, policy, q);
        for (int j = 0; j < n; ++j) d.final_entries(t, j) = 0.0;
        for (int o = -f.h; o <= f.q; ++o) d.final_entries(t, t + o) = f.at(o);
    }
    for (int t = 0; t < h; ++t)
        for (int j = 0; j < n; ++j) d.final_entries(t, j) = d.final_entries(n - 1 - t, n - 1 - j);
    return d;
}

Matrix boundary_perturbation(const DesignedSmoother& d) {
    return matsub(d.reference.entries, d.h_matrix);
}

Matrix truncation_adjustment(const DesignedSmoother& d) {
    return matsub(matsub(d.final_entries, d.truncated), boundary_perturbation(d));
}

std::vector<double> latent_decomposition(const std::vector<double>& y, const Matrix& z) {
    if (static_cast<int>(y.size()) != z.rows())
        throw ConfigError("latent_decomposition: length mismatch");
    std::vector<double> theta(static_cast<size_t>(z.cols()), 0.0);
    for (int j = 0; j < z.cols(); ++j) {
        double acc = 0.0;
        for (int i = 0; i < z.rows(); ++i) acc += z(i, j) * y[static_cast<size_t>(i)];
        theta[static_cast<size_t>(j)] = acc;
    }
    return theta;
}

VarianceReport variance_diagnostics(const SmootherMatrix& s, const DesignedSmoother& d) {
    if (s.n != d.n || s.h != d.h)
        throw ConfigError("variance_diagnostics: smoother and design dimensions differ");
    const int n = s.n;
    VarianceReport rep;
    rep.factor.resize(static_cast<size_t>(n));
    rep.factor_k.resize(static_cast<size_t>(n));
    rep.interior_term.resize(static_cast<size_t>(n));
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int i : d.design.retained) keep[static_cast<size_t>(i)] = 1;
    for (int t = 0; t < n; ++t) {
        rep.factor[static_cast<size_t>(t)] = kernels::dot(s.entries.row(t), s.entries.row(t), n);
        rep.factor_k[static_cast<size_t>(t)] = kernels::dot(d.final_entries.row(t), d.final_entries.row(t), n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            if (keep[static_cast<size_t>(i)]) continue;
            const double z = d.eigenvectors(t, i);
            acc += d.xi[static_cast<size_t>(i)] * d.xi[static_cast<size_t>(i)] * z * z;
        }
        rep.interior_term[static_cast<size_t>(t)] = acc;
    }
    return rep;
}

double bias_discrepancy(const std::vector<double>& xi, const CutoffDesign& design) {
    const int n = static_cast<int>(xi.size());
    std::vector<char> keep(static_cast<size_t>(n), 0);
    for (int i : design.retained) keep[static_cast<size_t>(i)] = 1;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        if (!keep[static_cast<size_t>(i)]) sum += xi[static_cast<size_t>(i)];
    return -sum / n;
}

}  // namespace trendlab
