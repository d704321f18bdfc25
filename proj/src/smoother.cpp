#include "trendlab/smoother.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "trendlab/algebra.hpp"
#include "trendlab/errors.hpp"

namespace trendlab {

AsymmetricFilter reflecting_fold_filter(const SymmetricFilter& sym, int q) {
    const int h = sym.h;
    if (q < 0 || q > h) throw ConfigError("reflecting_fold_filter: q must satisfy 0 <= q <= h");
    AsymmetricFilter f;
    f.h = h;
    f.q = q;
    f.weights.assign(static_cast<size_t>(h + q + 1), 0.0);
    // offset u keeps its own weight; the weight of the reflected partner
    // 2q+1-u folds on top when it lies inside the window
    for (int u = -h; u <= q; ++u) {
        double v = sym.at(u);
        const int mirror = 2 * q + 1 - u;
        if (mirror <= h) v += sym.at(mirror);
        f.weights[static_cast<size_t>(u + h)] = v;
    }
    return f;
}

AsymmetricFilter reflecting_realtime_filter(const SymmetricFilter& sym) {
    return reflecting_fold_filter(sym, 0);
}

AsymmetricFilter boundary_filter(const SymmetricFilter& sym, const BoundaryPolicy& policy, int q) {
    switch (policy.kind) {
        case BoundaryKind::reflecting:
            return reflecting_fold_filter(sym, q);
        case BoundaryKind::lpr: {
            if (!policy.lpr) throw ConfigError("boundary_filter: lpr policy needs the local polynomial spec");
            if (policy.lpr->h != sym.h) throw ConfigError("boundary_filter: lpr spec bandwidth mismatch");
            const int d = policy.lpr_degree.value_or(policy.lpr->p);
            return asymmetric_lpr_filter(*policy.lpr, q, d);
        }
        case BoundaryKind::lc:
        case BoundaryKind::ql:
        case BoundaryKind::cq: {
            MmsreSpec ms;
            ms.family = policy.kind == BoundaryKind::lc   ? MmsreFamily::lc
                        : policy.kind == BoundaryKind::ql ? MmsreFamily::ql
                                                          : MmsreFamily::cq;
            ms.noise_ratio = policy.noise_ratio;
            ms.h = sym.h;
            return mmsre_filter(sym, ms, q);
        }
        case BoundaryKind::custom: {
            if (q < 0 || q >= static_cast<int>(policy.custom_rows.size()))
                throw ConfigError("boundary_filter: custom policy has no row for q=" + std::to_string(q));
            const AsymmetricFilter& f = policy.custom_rows[static_cast<size_t>(q)];
            if (f.h != sym.h || f.q != q)
                throw ConfigError("boundary_filter: custom row for q=" + std::to_string(q) + " has wrong shape");
            if (f.length() > 2 * sym.h)
                throw ConfigError("boundary_filter: custom row longer than 2h");
            const double s = vec_sum(f.weights);
            if (std::fabs(s - 1.0) > 1e-12)
                throw ConfigError("boundary_filter: custom row for q=" + std::to_string(q) +
                                  " does not sum to 1 (sum=" + std::to_string(s) + ")");
            return f;
        }
        case BoundaryKind::circulant:
            throw ConfigError("boundary_filter: circulant boundary has no per-row filter");
    }
    throw ConfigError("boundary_filter: unknown policy");
}

namespace {

void place_symmetric_row(Matrix& m, const SymmetricFilter& sym, int t) {
    for (int o = -sym.h; o <= sym.h; ++o) m(t, t + o) = sym.at(o);
}

void place_right_row(Matrix& m, const AsymmetricFilter& f, int t) {
    for (int o = -f.h; o <= f.q; ++o) m(t, t + o) = f.at(o);
}

void mirror_top_rows(Matrix& m, int h, int n) {
    for (int t = 0; t < h; ++t)
        for (int j = 0; j < n; ++j) m(t, j) = m(n - 1 - t, n - 1 - j);
}

}  // namespace

SmootherMatrix build_smoother(const SymmetricFilter& sym, const BoundaryPolicy& policy, int n) {
    const int h = sym.h;
    if (n <= 2 * h)
        throw ConfigError("build_smoother: n must exceed 2h (n=" + std::to_string(n) +
                          ", h=" + std::to_string(h) + ")");

    SmootherMatrix s;
    s.h = h;
    s.n = n;
    s.policy = policy;
    s.source = sym;

    if (policy.kind == BoundaryKind::circulant) {
        s.entries = circulant_matrix(sym, n);
        return s;
    }

    s.entries = Matrix(n, n);
    for (int t = h; t < n - h; ++t) place_symmetric_row(s.entries, sym, t);
    for (int t = n - h; t < n; ++t) {
        const int q = n - 1 - t;
        AsymmetricFilter f =
            (policy.scope == ReplaceScope::realtime_row_only && q > 0)
                ? reflecting_fold_filter(sym, q)
                : boundary_filter(sym, policy, q);
        place_right_row(s.entries, f, t);
    }
    mirror_top_rows(s.entries, h, n);
    return s;
}

SmootherMatrix circulant_with_realtime_rows(const SymmetricFilter& sym, const BoundaryPolicy& policy, int n) {
    const int h = sym.h;
    if (n <= 2 * h) throw ConfigError("circulant_with_realtime_rows: n must exceed 2h");
    SmootherMatrix s;
    s.h = h;
    s.n = n;
    s.policy = policy;
    s.policy.kind = BoundaryKind::circulant;  // band validation does not apply
    s.source = sym;
    s.entries = circulant_matrix(sym, n);
    AsymmetricFilter rt = boundary_filter(sym, policy, 0);
    for (int j = 0; j < n; ++j) s.entries(n - 1, j) = 0.0;
    place_right_row(s.entries, rt, n - 1);
    for (int j = 0; j < n; ++j) s.entries(0, j) = s.entries(n - 1, n - 1 - j);
    return s;
}

TimeSeries apply(const SmootherMatrix& s, const TimeSeries& y) {
    if (y.length() != s.n)
        throw ConfigError("apply: series length " + std::to_string(y.length()) +
                          " does not match smoother dimension " + std::to_string(s.n));
    TimeSeries out;
    out.timestamps = y.timestamps;
    out.values = matvec(s.entries, y.values);
    return out;
}

double polynomial_reproduction_residual(const SmootherMatrix& s, int r) {
    if (r < 0) throw ConfigError("polynomial_reproduction_residual: r must be >= 0");
    std::vector<double> x(static_cast<size_t>(s.n));
    for (int t = 1; t <= s.n; ++t) x[static_cast<size_t>(t - 1)] = std::pow(static_cast<double>(t), r);
    std::vector<double> sx = matvec(s.entries, x);
    double m = 0.0;
    for (int i = 0; i < s.n; ++i) m = std::max(m, std::fabs(sx[static_cast<size_t>(i)] - x[static_cast<size_t>(i)]));
    return m;
}

void validate_smoother(const SmootherMatrix& s, double row_sum_tol) {
    const int n = s.n;
    const int h = s.h;
    if (s.entries.rows() != n || s.entries.cols() != n) throw ConfigError("validate_smoother: bad dimensions");
    if (s.policy.kind != BoundaryKind::circulant) {
        for (int t = 0; t < n; ++t)
            for (int j = 0; j < n; ++j)
                if (std::abs(t - j) > 2 * h && s.entries(t, j) != 0.0)
                    throw ConfigError("validate_smoother: nonzero entry outside band at (" +
                                      std::to_string(t) + "," + std::to_string(j) + ")");
    }
    for (int t = 0; t < n; ++t)
        for (int j = 0; j < n; ++j)
            if (s.entries(t, j) != s.entries(n - 1 - t, n - 1 - j))
                throw ConfigError("validate_smoother: centrosymmetry violated at (" + std::to_string(t) +
                                  "," + std::to_string(j) + ")");
    for (int t = 0; t < n; ++t) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) sum += s.entries(t, j);
        if (std::fabs(sum - 1.0) > row_sum_tol)
            throw ConfigError("validate_smoother: row " + std::to_string(t) + " sums to " +
                              std::to_string(sum));
    }
}

}  // namespace trendlab
