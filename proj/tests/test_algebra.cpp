#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "trendlab/algebra.hpp"
#include "trendlab/errors.hpp"
#include "trendlab/spectral.hpp"

using namespace trendlab;

namespace {

SymmetricFilter identity_filter() {
    SymmetricFilter f;
    f.h = 0;
    f.weights = {1.0};
    return f;
}

SymmetricFilter h1_filter(double a, double b) {
    SymmetricFilter f;
    f.h = 1;
    f.weights = {b, a, b};
    return f;
}

const LocalPolySpec kH13{6, 3, {KernelKind::henderson, 6}};

}  // namespace

TEST_CASE("circulant matrix layout") {
    const SmootherMatrix id{Matrix::identity(4), 0, 4, {}, identity_filter()};
    CHECK(max_abs_diff(circulant_matrix(identity_filter(), 4), id.entries) == 0.0);

    const Matrix w = circulant_matrix(h1_filter(0.5, 0.25), 4);
    CHECK(w(0, 0) == 0.5);
    CHECK(w(0, 1) == 0.25);
    CHECK(w(0, 2) == 0.0);
    CHECK(w(0, 3) == 0.25);
    // rows are cyclic shifts and the matrix is symmetric
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(w(i, j) == w(0, ((j - i) % 4 + 4) % 4));
            CHECK(w(i, j) == w(j, i));
        }
}

TEST_CASE("circulant eigenvalues") {
    const SymmetricFilter h13 = symmetric_filter(kH13);
    const int n = 51;
    const std::vector<double> zeta = circulant_eigenvalues(h13, n);
    CHECK(zeta[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (double z : circulant_eigenvalues(identity_filter(), 5)) CHECK(z == doctest::Approx(1.0));
    // pairwise coincidence zeta_i = zeta_{n+2-i}
    for (int i = 2; i <= n; ++i)
        CHECK(std::fabs(zeta[static_cast<size_t>(i - 1)] - zeta[static_cast<size_t>(n + 1 - i)]) <= 1e-13);
}

TEST_CASE("tau first row") {
    const std::vector<double> r1 = tau_first_row(h1_filter(0.5, 0.25), 6);
    CHECK(r1[0] == doctest::Approx(0.75));
    CHECK(r1[1] == doctest::Approx(0.25));
    for (int j = 2; j < 6; ++j) CHECK(r1[static_cast<size_t>(j)] == 0.0);

    const std::vector<double> ri = tau_first_row(identity_filter(), 4);
    CHECK(ri[0] == 1.0);
    for (int j = 1; j < 4; ++j) CHECK(ri[static_cast<size_t>(j)] == 0.0);

    const SymmetricFilter h13 = symmetric_filter(kH13);
    const std::vector<double> rh = tau_first_row(h13, 51);
    int nonzero_lead = 0;
    for (int j = 0; j < 7; ++j)
        if (rh[static_cast<size_t>(j)] != 0.0) ++nonzero_lead;
    CHECK(nonzero_lead >= 6);  // w5+w6 etc.; interior zeros of the kernel allowed
    for (int j = 7; j < 51; ++j) CHECK(rh[static_cast<size_t>(j)] == 0.0);
    CHECK(std::fabs(vec_sum(rh) - 1.0) <= 1e-15);
}

TEST_CASE("tau coefficients: triangular solve oracle") {
    SUBCASE("h = 1 by hand") {
        const SymmetricFilter f = h1_filter(0.5, 0.25);
        const std::vector<double> c = tau_coefficients_solve(tau_first_row(f, 8), 8);
        CHECK(c[0] == doctest::Approx(0.5).epsilon(1e-14));   // w0
        CHECK(c[1] == doctest::Approx(0.25).epsilon(1e-14));  // w1
        for (int j = 2; j < 8; ++j) CHECK(c[static_cast<size_t>(j)] == 0.0);
    }
    SUBCASE("identity filter") {
        const std::vector<double> c = tau_coefficients_solve(tau_first_row(identity_filter(), 5), 5);
        CHECK(c[0] == 1.0);
        for (int j = 1; j < 5; ++j) CHECK(c[static_cast<size_t>(j)] == 0.0);
    }
    SUBCASE("c_j vanishes beyond h+1") {
        const SymmetricFilter h13 = symmetric_filter(kH13);
        const std::vector<double> c = tau_coefficients_solve(tau_first_row(h13, 30), 30);
        for (int j = 7; j < 30; ++j) CHECK(std::fabs(c[static_cast<size_t>(j)]) <= 1e-14);
    }
}

TEST_CASE("tau coefficients: closed form equals the solve") {
    std::mt19937 rng(2024);
    for (int h = 1; h <= 12; ++h) {
        for (int rep = 0; rep < 4; ++rep) {
            const SymmetricFilter f = testutil::random_filter(h, rng);
            const int n = 2 * h + 5;
            const std::vector<double> solve = tau_coefficients_solve(tau_first_row(f, n), n);
            const std::vector<double> closed = tau_coefficients_closed(f);
            REQUIRE(static_cast<int>(closed.size()) == h + 1);
            for (int j = 0; j <= h; ++j)
                CHECK(std::fabs(closed[static_cast<size_t>(j)] - solve[static_cast<size_t>(j)]) <= 1e-12);
        }
    }
}

TEST_CASE("tau coefficients: pinned identities") {
    std::mt19937 rng(5);
    for (int h : {2, 3, 6, 9}) {
        const SymmetricFilter f = testutil::random_filter(h, rng);
        const std::vector<double> c = tau_coefficients_closed(f);
        CHECK(c[static_cast<size_t>(h)] == f.at(h));          // c_{h+1} = w_h
        CHECK(c[static_cast<size_t>(h - 1)] == f.at(h - 1));  // c_h = w_{h-1}
    }
    const SymmetricFilter f3 = testutil::random_filter(3, rng);
    const std::vector<double> c3 = tau_coefficients_closed(f3);
    CHECK(c3[0] == doctest::Approx(f3.at(0) - 2.0 * f3.at(2)).epsilon(1e-14));
}

TEST_CASE("tau matrix structure") {
    SUBCASE("identity") {
        CHECK(max_abs_diff(tau_matrix(identity_filter(), 5), Matrix::identity(5)) == 0.0);
    }
    SUBCASE("h = 1 tridiagonal with folded corners") {
        const double a = 0.6, b = 0.2;
        const Matrix h = tau_matrix(h1_filter(a, b), 4);
        CHECK(h(0, 0) == doctest::Approx(a + b).epsilon(1e-15));
        CHECK(h(3, 3) == doctest::Approx(a + b).epsilon(1e-15));
        CHECK(h(1, 1) == doctest::Approx(a).epsilon(1e-15));
        CHECK(h(0, 1) == doctest::Approx(b).epsilon(1e-15));
        CHECK(h(2, 1) == doctest::Approx(b).epsilon(1e-15));
        CHECK(h(0, 2) == 0.0);
    }
    SUBCASE("henderson: symmetric, centrosymmetric, banded, commutes with T11") {
        const SymmetricFilter h13 = symmetric_filter(kH13);
        const int n = 51;
        const Matrix h = tau_matrix(h13, n);
        const Matrix t = tau_basis_matrix(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(h(i, j) == doctest::Approx(h(j, i)).epsilon(1e-13));
                CHECK(h(i, j) == doctest::Approx(h(n - 1 - i, n - 1 - j)).epsilon(1e-13));
                if (std::abs(i - j) > 6) CHECK(h(i, j) == 0.0);
            }
        CHECK(max_abs_diff(matmul(h, t), matmul(t, h)) <= 1e-12);
        for (int i = 0; i < n; ++i) {
            double rs = 0.0;
            for (int j = 0; j < n; ++j) rs += h(i, j);
            CHECK(std::fabs(rs - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("tau eigenvalues") {
    const SymmetricFilter h13 = symmetric_filter(kH13);
    const int n = 51;
    const std::vector<double> xi = tau_eigenvalues(h13, n);
    CHECK(xi[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (double x : tau_eigenvalues(identity_filter(), 7)) CHECK(x == doctest::Approx(1.0));

    const EigenSystem es = symmetric_eigen(tau_matrix(h13, n));
    CHECK(testutil::max_sorted_diff(xi, es.values) <= 1e-10);

    // distinctness observed for the Henderson case
    std::vector<double> s = testutil::sorted(xi);
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] - s[i - 1] > 1e-12);
}

TEST_CASE("tau eigenvectors") {
    SUBCASE("first column is the constant") {
        const Matrix z = tau_eigenvectors(9);
        for (int i = 0; i < 9; ++i) CHECK(z(i, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("orthogonality") {
        for (int n : {2, 17, 51}) {
            const Matrix z = tau_eigenvectors(n);
            CHECK(max_abs_diff(matmul(transpose(z), z), Matrix::identity(n)) <= 1e-12);
        }
    }
    SUBCASE("diagonalization HZ = Z diag(xi)") {
        const SymmetricFilter h13 = symmetric_filter(kH13);
        const int n = 51;
        const Matrix h = tau_matrix(h13, n);
        const Matrix z = tau_eigenvectors(n);
        const std::vector<double> xi = tau_eigenvalues(h13, n);
        const Matrix hz = matmul(h, z);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, std::fabs(hz(i, j) - z(i, j) * xi[static_cast<size_t>(j)]));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("transfer function and spectra sampling") {
    const SymmetricFilter h13 = symmetric_filter(kH13);
    CHECK(transfer_function_value(h13, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(transfer_function_value(identity_filter(), 1.234) == 1.0);

    const int n = 51;
    const std::vector<double> xi = tau_eigenvalues(h13, n);
    const std::vector<double> zeta = circulant_eigenvalues(h13, n);
    for (int i = 0; i < n; ++i) {
        CHECK(std::fabs(xi[static_cast<size_t>(i)] -
                        transfer_function_value(h13, std::numbers::pi * i / n)) <= 1e-12);
        CHECK(std::fabs(zeta[static_cast<size_t>(i)] -
                        transfer_function_value(h13, 2.0 * std::numbers::pi * i / n)) <= 1e-12);
    }

    SUBCASE("h = 1 sampling is the explicit cosine form") {
        const SymmetricFilter f = h1_filter(0.5, 0.25);
        const std::vector<double> x1 = tau_eigenvalues(f, 11);
        for (int i = 0; i < 11; ++i)
            CHECK(x1[static_cast<size_t>(i)] ==
                  doctest::Approx(0.5 + 2.0 * 0.25 * std::cos(std::numbers::pi * i / 11)).epsilon(1e-14));
    }

    SUBCASE("tau spectrum lies inside the transfer function range") {
        // refinement grid that contains the tau nodes exactly
        const int m = 200;
        double hmin = 1e300, hmax = -1e300;
        for (int g = 0; g <= n * m; ++g) {
            const double v = transfer_function_value(h13, std::numbers::pi * g / (n * m));
            hmin = std::min(hmin, v);
            hmax = std::max(hmax, v);
        }
        for (double x : xi) {
            CHECK(x <= hmax + 1e-14);
            CHECK(x >= hmin - 1e-14);
        }
    }
}

TEST_CASE("random filters: analytic spectra match the dense eigensolver") {
    std::mt19937 rng(77);
    for (int h : {1, 4, 9}) {
        const SymmetricFilter f = testutil::random_filter(h, rng);
        const int n = 25;
        CHECK(testutil::max_sorted_diff(tau_eigenvalues(f, n),
                                        symmetric_eigen(tau_matrix(f, n)).values) <= 1e-10);
        CHECK(testutil::max_sorted_diff(circulant_eigenvalues(f, n),
                                        symmetric_eigen(circulant_matrix(f, n)).values) <= 1e-10);
    }
}

TEST_CASE("algebra dimension guards") {
    const SymmetricFilter h13 = symmetric_filter(kH13);
    CHECK_THROWS_AS(tau_matrix(h13, 12), ConfigError);
    CHECK_THROWS_AS(circulant_matrix(h13, 12), ConfigError);
    CHECK_THROWS_AS(tau_coefficients_solve(std::vector<double>(5, 0.0), 6), ConfigError);
}
