#include "trendlab/algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trendlab/errors.hpp"
#include "trendlab/kernels.hpp"

namespace trendlab {

namespace {

void require_dimension(int n, int h, const char* where) {
    if (n <= 2 * h)
        throw ConfigError(std::string(where) + ": n must exceed 2h (n=" + std::to_string(n) +
                          ", h=" + std::to_string(h) + ")");
}

}  // namespace

CirculantOperator circulant_operator(const SymmetricFilter& sym, int n) {
    require_dimension(n, sym.h, "circulant_operator");
    CirculantOperator op;
    op.n = n;
    op.source = sym;
    op.first_row.assign(static_cast<size_t>(n), 0.0);
    op.first_row[0] = sym.at(0);
    for (int d = 1; d <= sym.h; ++d) {
        op.first_row[static_cast<size_t>(d)] = sym.at(d);
        op.first_row[static_cast<size_t>(n - d)] = sym.at(-d);
    }
    return op;
}

Matrix circulant_matrix(const SymmetricFilter& sym, int n) {
    const CirculantOperator op = circulant_operator(sym, n);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = op.first_row[static_cast<size_t>(((j - i) % n + n) % n)];
    return m;
}

std::vector<double> circulant_eigenvalues(const SymmetricFilter& sym, int n) {
    require_dimension(n, sym.h, "circulant_eigenvalues");
    std::vector<double> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = sym.at(0);
        for (int d = 1; d <= sym.h; ++d)
            acc += 2.0 * sym.at(d) * std::cos(2.0 * std::numbers::pi * i * d / n);
        z[static_cast<size_t>(i)] = acc;
    }
    return z;
}

std::vector<double> tau_first_row(const SymmetricFilter& sym, int n) {
    require_dimension(n, sym.h, "tau_first_row");
    const int h = sym.h;
    std::vector<double> row(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < h; ++j) row[static_cast<size_t>(j)] = sym.at(j) + sym.at(j + 1);
    row[static_cast<size_t>(h)] = sym.at(h);
    return row;
}

std::vector<double> tau_coefficients_solve(const std::vector<double>& first_row, int n) {
    if (static_cast<int>(first_row.size()) != n)
        throw ConfigError("tau_coefficients_solve: first_row length must equal n");
    if (n > 900)
        throw ConfigError("tau_coefficients_solve: power-basis oracle overflows beyond n=900");
    // Q column j is the first column of T11^{j-1}; build the columns by
    // repeated tridiagonal application to e1.
    Matrix q(n, n);
    std::vector<double> u(static_cast<size_t>(n), 0.0), v(static_cast<size_t>(n), 0.0);
    u[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) q(i, j) = u[static_cast<size_t>(i)];
        if (j + 1 < n) {
            v[0] = u[0] + (n > 1 ? u[1] : 0.0);
            for (int i = 1; i < n - 1; ++i) v[static_cast<size_t>(i)] = u[static_cast<size_t>(i - 1)] + u[static_cast<size_t>(i + 1)];
            if (n > 1) v[static_cast<size_t>(n - 1)] = u[static_cast<size_t>(n - 2)] + u[static_cast<size_t>(n - 1)];
            std::swap(u, v);
        }
    }
    // back-substitution; Q is unit upper triangular
    std::vector<double> c(first_row);
    for (int j = n - 1; j >= 0; --j) {
        for (int k = j + 1; k < n; ++k)
            if (c[static_cast<size_t>(k)] != 0.0) c[static_cast<size_t>(j)] -= q(j, k) * c[static_cast<size_t>(k)];
    }
    return c;
}

std::vector<double> tau_coefficients_closed(const SymmetricFilter& sym) {
    const int h = sym.h;
    std::vector<double> c(static_cast<size_t>(h + 1), 0.0);
    for (int j = 1; j <= h + 1; ++j) {
        double acc = sym.at(j - 1);
        // q runs while j + 2q + 1 <= h; (j)_q is the rising factorial
        for (int qq = 0; 2 * qq <= h - j - 1; ++qq) {
            double poch = 1.0;
            for (int t = 0; t < qq; ++t) poch *= j + t;
            double fact = 1.0;
            for (int t = 2; t <= qq + 1; ++t) fact *= t;
            const double sign = (qq % 2 == 0) ? -1.0 : 1.0;
            acc += sign * poch / fact * (j + 2 * qq + 1) * sym.at(j + 2 * qq + 1);
        }
        c[static_cast<size_t>(j - 1)] = acc;
    }
    return c;
}

TauOperator tau_operator(const SymmetricFilter& sym, int n) {
    require_dimension(n, sym.h, "tau_operator");
    TauOperator op;
    op.n = n;
    op.source = sym;
    op.first_row = tau_first_row(sym, n);
    op.coeffs.assign(static_cast<size_t>(n), 0.0);
    const std::vector<double> c = tau_coefficients_closed(sym);
    for (size_t j = 0; j < c.size(); ++j) op.coeffs[j] = c[j];
    return op;
}

Matrix tau_basis_matrix(int n) {
    Matrix t(n, n);
    for (int i = 0; i < n; ++i) {
        if (i > 0) t(i, i - 1) = 1.0;
        if (i + 1 < n) t(i, i + 1) = 1.0;
    }
    t(0, 0) = 1.0;
    t(n - 1, n - 1) = 1.0;
    return t;
}

namespace {

// Rewrite sum_k c_{k+1} t^k over the basis p_1 = 1, p_2 = t,
// p_{j+1} = t p_j - p_{j-1}. Using t*p_1 = p_2 and
// t*p_j = p_{j+1} + p_{j-1} the monomials convert with integer weights.
std::vector<double> monomial_to_recurrence_basis(const std::vector<double>& c) {
    const int m = static_cast<int>(c.size());
    std::vector<double> a(static_cast<size_t>(m), 0.0);
    std::vector<double> b(static_cast<size_t>(m), 0.0), tb(static_cast<size_t>(m), 0.0);
    b[0] = 1.0;  // t^0 = p_1
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) a[static_cast<size_t>(i)] += c[static_cast<size_t>(k)] * b[static_cast<size_t>(i)];
        if (k + 1 < m) {
            tb[0] = m > 1 ? b[1] : 0.0;
            for (int i = 1; i < m; ++i)
                tb[static_cast<size_t>(i)] = b[static_cast<size_t>(i - 1)] + (i + 1 < m ? b[static_cast<size_t>(i + 1)] : 0.0);
            std::swap(b, tb);
            std::fill(tb.begin(), tb.end(), 0.0);
        }
    }
    return a;
}

// row-structural T11 * P
Matrix tau_basis_times(const Matrix& p) {
    const int n = p.rows();
    Matrix out(n, n);
    kernels::add(p.row(0), p.row(n > 1 ? 1 : 0), out.row(0), n);
    for (int i = 1; i < n - 1; ++i) kernels::add(p.row(i - 1), p.row(i + 1), out.row(i), n);
    if (n > 1) kernels::add(p.row(n - 2), p.row(n - 1), out.row(n - 1), n);
    return out;
}

}  // namespace

Matrix tau_matrix(const SymmetricFilter& sym, int n) {
    require_dimension(n, sym.h, "tau_matrix");
    const std::vector<double> c = tau_coefficients_closed(sym);
    const std::vector<double> a = monomial_to_recurrence_basis(c);
    const int m = static_cast<int>(a.size());

    Matrix h(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = a[0];
    if (m == 1) return h;

    Matrix p_prev = Matrix::identity(n);
    Matrix p_cur = tau_basis_matrix(n);
    for (int i = 0; i < n; ++i) kernels::axpy(a[1], p_cur.row(i), h.row(i), n);
    for (int j = 2; j < m; ++j) {
        Matrix p_next = tau_basis_times(p_cur);
        for (int i = 0; i < n; ++i) kernels::axpy(-1.0, p_prev.row(i), p_next.row(i), n);
        for (int i = 0; i < n; ++i) kernels::axpy(a[static_cast<size_t>(j)], p_next.row(i), h.row(i), n);
        p_prev = std::move(p_cur);
        p_cur = std::move(p_next);
    }
    return h;
}

std::vector<double> tau_basis_eigenvalues(int n) {
    std::vector<double> th(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) th[static_cast<size_t>(i)] = 2.0 * std::cos(std::numbers::pi * i / n);
    return th;
}

std::vector<double> tau_eigenvalues(const SymmetricFilter& sym, int n) {
    require_dimension(n, sym.h, "tau_eigenvalues");
    const std::vector<double> c = tau_coefficients_closed(sym);
    const std::vector<double> th = tau_basis_eigenvalues(n);
    std::vector<double> xi(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j)
            acc = acc * th[static_cast<size_t>(i)] + c[static_cast<size_t>(j)];
        xi[static_cast<size_t>(i)] = acc;
    }
    return xi;
}

Matrix tau_eigenvectors(int n) {
    if (n < 1) throw ConfigError("tau_eigenvectors: n must be >= 1");
    Matrix z(n, n);
    const double norm = std::sqrt(2.0 / n);
    for (int j = 0; j < n; ++j) {
        const double kj = (j == 0) ? 1.0 / std::sqrt(2.0) : 1.0;
        for (int i = 0; i < n; ++i)
            z(i, j) = norm * kj * std::cos((2.0 * i + 1.0) * j * std::numbers::pi / (2.0 * n));
    }
    return z;
}

double transfer_function_value(const SymmetricFilter& sym, double nu) {
    double acc = sym.at(0);
    for (int d = 1; d <= sym.h; ++d) acc += 2.0 * sym.at(d) * std::cos(nu * d);
    return acc;
}

}  // namespace trendlab
