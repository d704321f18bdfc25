#pragma once

// Small dense row-major matrix plus the handful of operations the rest of the
// library needs. Target sizes are a few hundred rows, so everything is dense
// and allocation is not a concern.

#include <cassert>
#include <string>
#include <vector>

namespace trendlab {

class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
        assert(rows >= 0 && cols >= 0);
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    double* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matsub(const Matrix& a, const Matrix& b);
Matrix matadd(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);

/// Solve a X = b with partial-pivot LU. `system_name` labels the failure.
std::vector<double> solve_linear(Matrix a, std::vector<double> b, const std::string& system_name);
Matrix solve_linear(Matrix a, Matrix b, const std::string& system_name);
Matrix inverse(const Matrix& a, const std::string& system_name);
double determinant(Matrix a);

// vector helpers
double vec_dot(const std::vector<double>& a, const std::vector<double>& b);
double vec_norm2(const std::vector<double>& a);
double vec_max_abs(const std::vector<double>& a);
double vec_sum(const std::vector<double>& a);

}  // namespace trendlab
