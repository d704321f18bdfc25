#include "trendlab/filters.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trendlab/errors.hpp"

namespace trendlab {

std::vector<double> kernel_weights(const KernelSpec& spec) {
    if (spec.h < 0) throw ConfigError("kernel_weights: h must be >= 0 (got " + std::to_string(spec.h) + ")");
    const int h = spec.h;
    std::vector<double> k(static_cast<size_t>(2 * h + 1));
    for (int j = -h; j <= h; ++j) {
        double v = 1.0;
        if (spec.kind == KernelKind::henderson) {
            const double j2 = static_cast<double>(j) * j;
            const double a = (h + 1.0) * (h + 1.0) - j2;
            const double b = (h + 2.0) * (h + 2.0) - j2;
            const double c = (h + 3.0) * (h + 3.0) - j2;
            v = a * b * c;
        }
        k[static_cast<size_t>(j + h)] = v;
    }
    return k;
}

Matrix poly_design_matrix(int h, int p) {
    Matrix x(2 * h + 1, p + 1);
    for (int j = -h; j <= h; ++j) {
        double pw = 1.0;
        for (int r = 0; r <= p; ++r) {
            x(j + h, r) = pw;
            pw *= j;
        }
    }
    return x;
}

std::vector<double> poly_column(int h, int r) {
    std::vector<double> c(static_cast<size_t>(2 * h + 1));
    for (int j = -h; j <= h; ++j) c[static_cast<size_t>(j + h)] = std::pow(static_cast<double>(j), r);
    return c;
}

namespace {

// WLS filter on the window rows lo..hi (offsets), fit degree d:
//   w = K X (X'KX)^{-1} e1  restricted to the window.
// Columns are rescaled by h^{-r} before the solve; the result is invariant
// but the normal matrix stays well conditioned for larger d.
std::vector<double> wls_filter_window(const KernelSpec& kernel, int h, int d, int lo, int hi,
                                      const std::string& label) {
    const int m = hi - lo + 1;
    if (d + 1 > m)
        throw ConfigError(label + ": fit degree " + std::to_string(d) + " needs more than " +
                          std::to_string(m) + " observations");
    std::vector<double> kap = kernel_weights(kernel);
    double ksum = 0.0;
    for (int j = lo; j <= hi; ++j) ksum += kap[static_cast<size_t>(j + h)];

    const double s = h > 0 ? static_cast<double>(h) : 1.0;
    // scaled window design matrix, rows j = lo..hi, columns (j/s)^r
    Matrix x(m, d + 1);
    for (int j = lo; j <= hi; ++j) {
        double pw = 1.0;
        for (int r = 0; r <= d; ++r) {
            x(j - lo, r) = pw;
            pw *= j / s;
        }
    }
    Matrix g(d + 1, d + 1);
    for (int a = 0; a <= d; ++a)
        for (int b = a; b <= d; ++b) {
            double acc = 0.0;
            for (int i = 0; i < m; ++i) acc += kap[static_cast<size_t>(lo + i + h)] / ksum * x(i, a) * x(i, b);
            g(a, b) = acc;
            g(b, a) = acc;
        }
    std::vector<double> e1(static_cast<size_t>(d + 1), 0.0);
    e1[0] = 1.0;
    std::vector<double> beta = solve_linear(g, e1, label);
    std::vector<double> w(static_cast<size_t>(m));
    auto expand = [&](const std::vector<double>& coef, std::vector<double>& out) {
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            for (int r = 0; r <= d; ++r) acc += x(i, r) * coef[static_cast<size_t>(r)];
            out[static_cast<size_t>(i)] = kap[static_cast<size_t>(lo + i + h)] / ksum * acc;
        }
    };
    expand(beta, w);

    // two rounds of refinement against the raw-power moment conditions
    // X'w = e1; the residual is accumulated in extended precision so the
    // high moments stay clean for wide windows
    std::vector<double> rhs(static_cast<size_t>(d + 1));
    std::vector<double> correction(static_cast<size_t>(m));
    for (int round = 0; round < 2; ++round) {
        double worst = 0.0;
        for (int r = 0; r <= d; ++r) {
            long double acc = (r == 0) ? -1.0L : 0.0L;
            for (int j = lo; j <= hi; ++j)
                acc += powl(static_cast<long double>(j), r) *
                       static_cast<long double>(w[static_cast<size_t>(j - lo)]);
            // back to the scaled basis used by the normal matrix
            rhs[static_cast<size_t>(r)] = -static_cast<double>(acc * powl(1.0L / s, r));
            worst = std::max(worst, std::fabs(static_cast<double>(acc)));
        }
        if (worst <= 1e-14) break;
        const std::vector<double> db = solve_linear(g, rhs, label);
        expand(db, correction);
        for (int i = 0; i < m; ++i) w[static_cast<size_t>(i)] += correction[static_cast<size_t>(i)];
    }
    return w;
}

std::string kernel_name(KernelKind k) {
    return k == KernelKind::henderson ? "henderson" : "uniform";
}

}  // namespace

SymmetricFilter symmetric_filter(const LocalPolySpec& spec) {
    if (spec.h < 0) throw ConfigError("symmetric_filter: h must be >= 0");
    if (spec.p < 0) throw ConfigError("symmetric_filter: p must be >= 0");
    if (spec.p > 2 * spec.h)
        throw ConfigError("symmetric_filter: p <= 2h violated (p=" + std::to_string(spec.p) +
                          ", h=" + std::to_string(spec.h) + ")");
    if (spec.kernel.h != spec.h) throw ConfigError("symmetric_filter: kernel bandwidth mismatch");
    const std::string label = "normal matrix X'KX (" + kernel_name(spec.kernel.kind) +
                              ", h=" + std::to_string(spec.h) + ", p=" + std::to_string(spec.p) + ")";
    SymmetricFilter f;
    f.h = spec.h;
    f.weights = wls_filter_window(spec.kernel, spec.h, spec.p, -spec.h, spec.h, label);
    // enforce exact symmetry against roundoff in the solve
    for (int j = 1; j <= spec.h; ++j) {
        const double m = 0.5 * (f.at(j) + f.at(-j));
        f.weights[static_cast<size_t>(spec.h + j)] = m;
        f.weights[static_cast<size_t>(spec.h - j)] = m;
    }
    return f;
}

AsymmetricFilter asymmetric_lpr_filter(const LocalPolySpec& spec, int q) {
    return asymmetric_lpr_filter(spec, q, spec.p);
}

AsymmetricFilter asymmetric_lpr_filter(const LocalPolySpec& spec, int q, int d) {
    if (q < 0 || q > spec.h)
        throw ConfigError("asymmetric_lpr_filter: q must satisfy 0 <= q <= h (got q=" + std::to_string(q) +
                          ", h=" + std::to_string(spec.h) + ")");
    if (d < 0 || d > spec.p)
        throw ConfigError("asymmetric_lpr_filter: fit degree must satisfy 0 <= d <= p");
    if (d > spec.h + q)
        throw ConfigError("asymmetric_lpr_filter: fit degree exceeds window (d=" + std::to_string(d) +
                          ", h+q=" + std::to_string(spec.h + q) + ")");
    const std::string label = "normal matrix Xp'KpXp (" + kernel_name(spec.kernel.kind) +
                              ", h=" + std::to_string(spec.h) + ", d=" + std::to_string(d) +
                              ", q=" + std::to_string(q) + ")";
    AsymmetricFilter f;
    f.h = spec.h;
    f.q = q;
    f.weights = wls_filter_window(spec.kernel, spec.h, d, -spec.h, q, label);
    return f;
}

double musgrave_noise_ratio() { return 4.0 / (3.5 * 3.5 * std::numbers::pi); }

MmsreProblem mmsre_problem_for_family(const MmsreSpec& spec) {
    const int h = spec.h;
    int r = 0;
    switch (spec.family) {
        case MmsreFamily::lc: r = 1; break;
        case MmsreFamily::ql: r = 2; break;
        case MmsreFamily::cq: r = 3; break;
    }
    MmsreProblem prob;
    prob.U = Matrix(2 * h + 1, r);
    for (int j = -h; j <= h; ++j) {
        double pw = 1.0;
        for (int c = 0; c < r; ++c) {
            prob.U(j + h, c) = pw;
            pw *= j;
        }
    }
    prob.Z = Matrix(2 * h + 1, 1);
    for (int j = -h; j <= h; ++j) prob.Z(j + h, 0) = std::pow(static_cast<double>(j), r);
    prob.d.assign(static_cast<size_t>(2 * h + 1), 1.0);
    prob.delta_outer = Matrix(1, 1);
    prob.delta_outer(0, 0) = spec.noise_ratio;
    return prob;
}

namespace {

// Q = D_p + Z_p (dd') Z_p' on the available window.
Matrix mmsre_q_matrix(const MmsreProblem& prob, int h, int q) {
    const int m = h + q + 1;
    const int nz = prob.Z.cols();
    Matrix qm(m, m);
    for (int i = 0; i < m; ++i) qm(i, i) = prob.d[static_cast<size_t>(i)];
    if (nz > 0) {
        // Z_p * delta_outer * Z_p'
        Matrix zp(m, nz);
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < nz; ++c) zp(i, c) = prob.Z(i, c);
        Matrix t = matmul(zp, prob.delta_outer);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double acc = 0.0;
                for (int c = 0; c < nz; ++c) acc += t(i, c) * zp(j, c);
                qm(i, j) += acc;
            }
    }
    return qm;
}

}  // namespace

MmsreOperators mmsre_operators(const MmsreProblem& prob, int h, int q) {
    const int m = h + q + 1;
    const int nu = prob.U.cols();
    Matrix up(m, nu);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < nu; ++c) up(i, c) = prob.U(i, c);

    Matrix qm = mmsre_q_matrix(prob, h, q);
    Matrix qinv = inverse(qm, "revision-error matrix Q");
    Matrix qi_up = matmul(qinv, up);                       // Q^{-1} U_p
    Matrix g = matmul(transpose(up), qi_up);               // U_p' Q^{-1} U_p
    Matrix ginv = inverse(g, "constraint Gram matrix Up'Q^{-1}Up");
    MmsreOperators ops;
    ops.L = matmul(qi_up, ginv);
    ops.M = matsub(qinv, matmul(ops.L, transpose(qi_up)));
    return ops;
}

AsymmetricFilter mmsre_filter_general(const SymmetricFilter& sym, const MmsreProblem& prob, int q) {
    const int h = sym.h;
    if (q < 0 || q > h)
        throw ConfigError("mmsre_filter: q must satisfy 0 <= q <= h (got q=" + std::to_string(q) + ")");
    if (prob.U.rows() != 2 * h + 1 || static_cast<int>(prob.d.size()) != 2 * h + 1 ||
        (prob.Z.cols() > 0 && prob.Z.rows() != 2 * h + 1))
        throw ConfigError("mmsre_filter: problem dimensions do not match the filter bandwidth");

    const int m = h + q + 1;
    const int f = h - q;
    const int nu = prob.U.cols();
    const int nz = prob.Z.cols();

    AsymmetricFilter out;
    out.h = h;
    out.q = q;
    out.weights.assign(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) out.weights[static_cast<size_t>(i)] = sym.weights[static_cast<size_t>(i)];
    if (f == 0) return out;  // full window: no revision to trade off

    MmsreOperators ops = mmsre_operators(prob, h, q);

    // U_f' w_f and delta_outer * Z_f' w_f
    std::vector<double> uf_wf(static_cast<size_t>(nu), 0.0);
    for (int c = 0; c < nu; ++c)
        for (int i = 0; i < f; ++i) uf_wf[static_cast<size_t>(c)] += prob.U(m + i, c) * sym.weights[static_cast<size_t>(m + i)];
    std::vector<double> zf_wf(static_cast<size_t>(nz), 0.0);
    for (int c = 0; c < nz; ++c)
        for (int i = 0; i < f; ++i) zf_wf[static_cast<size_t>(c)] += prob.Z(m + i, c) * sym.weights[static_cast<size_t>(m + i)];

    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int c = 0; c < nu; ++c) acc += ops.L(i, c) * uf_wf[static_cast<size_t>(c)];
        out.weights[static_cast<size_t>(i)] += acc;
    }
    if (nz > 0) {
        std::vector<double> dzf(static_cast<size_t>(nz), 0.0);
        for (int a = 0; a < nz; ++a)
            for (int b = 0; b < nz; ++b) dzf[static_cast<size_t>(a)] += prob.delta_outer(a, b) * zf_wf[static_cast<size_t>(b)];
        // M Z_p (dd') Z_f' w_f
        std::vector<double> zp_d(static_cast<size_t>(m), 0.0);
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < nz; ++c) zp_d[static_cast<size_t>(i)] += prob.Z(i, c) * dzf[static_cast<size_t>(c)];
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            for (int j = 0; j < m; ++j) acc += ops.M(i, j) * zp_d[static_cast<size_t>(j)];
            out.weights[static_cast<size_t>(i)] += acc;
        }
    }
    return out;
}

AsymmetricFilter mmsre_filter(const SymmetricFilter& sym, const MmsreSpec& spec, int q) {
    if (spec.h != sym.h) throw ConfigError("mmsre_filter: bandwidth mismatch between spec and filter");
    if (spec.noise_ratio < 0.0) throw ConfigError("mmsre_filter: noise_ratio must be >= 0");
    return mmsre_filter_general(sym, mmsre_problem_for_family(spec), q);
}

}  // namespace trendlab
