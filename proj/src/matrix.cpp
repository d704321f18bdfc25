#include "trendlab/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "trendlab/errors.hpp"
#include "trendlab/kernels.hpp"

namespace trendlab {

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ConfigError("matmul: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik != 0.0) kernels::axpy(aik, b.row(k), ci, b.cols());
        }
    }
    return c;
}

Matrix matsub(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConfigError("matsub: dimension mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix matadd(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConfigError("matadd: dimension mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        kernels::add(a.row(i), b.row(i), c.row(i), a.cols());
    return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != static_cast<int>(x.size())) throw ConfigError("matvec: dimension mismatch");
    std::vector<double> y(a.rows());
    for (int i = 0; i < a.rows(); ++i) y[i] = kernels::dot(a.row(i), x.data(), a.cols());
    return y;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    const double* p = a.data();
    const size_t nn = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < nn; ++i) m = std::max(m, std::fabs(p[i]));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ConfigError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    const double* p = a.data();
    const size_t nn = static_cast<size_t>(a.rows()) * a.cols();
    for (size_t i = 0; i < nn; ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

namespace {

// In-place partial-pivot LU. Returns the permutation sign, fills perm.
// Throws NumericError on a (numerically) singular pivot.
int lu_factor(Matrix& a, std::vector<int>& perm, const std::string& system_name) {
    const int n = a.rows();
    if (n != a.cols()) throw ConfigError("lu_factor: matrix not square");
    perm.resize(n);
    int sign = 1;
    const double tiny = 1e-14 * std::max(1.0, max_abs(a));
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(a(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= tiny)
            throw NumericError("singular system: " + system_name);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        perm[k] = piv;
        const double inv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = a(i, k) * inv;
            a(i, k) = m;
            if (m != 0.0) kernels::axpy(-m, a.row(k) + k + 1, a.row(i) + k + 1, n - k - 1);
        }
    }
    return sign;
}

void lu_solve_inplace(const Matrix& lu, const std::vector<int>& perm, double* b) {
    const int n = lu.rows();
    // P b first, then the triangular solves against L and U of PA = LU
    for (int k = 0; k < n; ++k)
        if (perm[k] != k) std::swap(b[k], b[perm[k]]);
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) b[i] -= lu(i, k) * b[k];
    for (int k = n - 1; k >= 0; --k) {
        for (int i = k + 1; i < n; ++i) b[k] -= lu(k, i) * b[i];
        b[k] /= lu(k, k);
    }
}

}  // namespace

std::vector<double> solve_linear(Matrix a, std::vector<double> b, const std::string& system_name) {
    if (a.rows() != static_cast<int>(b.size())) throw ConfigError("solve_linear: dimension mismatch");
    std::vector<int> perm;
    lu_factor(a, perm, system_name);
    lu_solve_inplace(a, perm, b.data());
    return b;
}

Matrix solve_linear(Matrix a, Matrix b, const std::string& system_name) {
    if (a.rows() != b.rows()) throw ConfigError("solve_linear: dimension mismatch");
    std::vector<int> perm;
    lu_factor(a, perm, system_name);
    // solve column by column
    std::vector<double> col(b.rows());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        lu_solve_inplace(a, perm, col.data());
        for (int i = 0; i < b.rows(); ++i) b(i, j) = col[i];
    }
    return b;
}

Matrix inverse(const Matrix& a, const std::string& system_name) {
    return solve_linear(a, Matrix::identity(a.rows()), system_name);
}

double determinant(Matrix a) {
    std::vector<int> perm;
    int sign;
    try {
        sign = lu_factor(a, perm, "determinant");
    } catch (const NumericError&) {
        return 0.0;
    }
    double d = sign;
    for (int i = 0; i < a.rows(); ++i) d *= a(i, i);
    return d;
}

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ConfigError("vec_dot: dimension mismatch");
    return kernels::dot(a.data(), b.data(), static_cast<int>(a.size()));
}

double vec_norm2(const std::vector<double>& a) { return std::sqrt(vec_dot(a, a)); }

double vec_max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

double vec_sum(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

}  // namespace trendlab
