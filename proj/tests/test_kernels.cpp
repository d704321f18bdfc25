#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "trendlab/filters.hpp"
#include "trendlab/kernels.hpp"
#include "trendlab/matrix.hpp"
#include "trendlab/smoother.hpp"
#include "trendlab/spectral.hpp"

namespace k = trendlab::kernels;

namespace {

struct BackendGuard {
    k::Backend saved = k::active_backend();
    ~BackendGuard() { k::set_backend(saved); }
};

std::vector<double> random_vec(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = u(rng);
    return v;
}

const int kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 100, 257, 1000};

}  // namespace

TEST_CASE("scalar backend is always available") {
    CHECK(k::backend_supported(k::Backend::scalar));
    CHECK(k::backend_name(k::Backend::scalar) == std::string("scalar"));
}

TEST_CASE("simd and scalar kernels agree") {
    const k::Backend simd = k::active_backend();
    if (simd == k::Backend::scalar) {
        MESSAGE("no SIMD backend on this host, equivalence check skipped");
        return;
    }
    BackendGuard guard;
    std::mt19937 rng(1234);

    for (int n : kSizes) {
        std::vector<double> a = random_vec(n, rng);
        std::vector<double> b = random_vec(n, rng);
        const double scale = 1.0 + std::sqrt(static_cast<double>(n)) * 4.0;

        k::set_backend(k::Backend::scalar);
        const double dot_s = k::dot(a.data(), b.data(), n);
        std::vector<double> y_s = b, x_s = a, add_s(static_cast<size_t>(n)), ra_s = a, rb_s = b;
        k::axpy(0.7, a.data(), y_s.data(), n);
        k::scal(-1.3, x_s.data(), n);
        k::add(a.data(), b.data(), add_s.data(), n);
        k::rot(ra_s.data(), rb_s.data(), 0.6, 0.8, n);

        k::set_backend(simd);
        const double dot_v = k::dot(a.data(), b.data(), n);
        std::vector<double> y_v = b, x_v = a, add_v(static_cast<size_t>(n)), ra_v = a, rb_v = b;
        k::axpy(0.7, a.data(), y_v.data(), n);
        k::scal(-1.3, x_v.data(), n);
        k::add(a.data(), b.data(), add_v.data(), n);
        k::rot(ra_v.data(), rb_v.data(), 0.6, 0.8, n);

        CHECK(std::fabs(dot_s - dot_v) <= 1e-13 * scale);
        for (int i = 0; i < n; ++i) {
            CHECK(std::fabs(y_s[static_cast<size_t>(i)] - y_v[static_cast<size_t>(i)]) <= 1e-14);
            CHECK(x_s[static_cast<size_t>(i)] == x_v[static_cast<size_t>(i)]);
            CHECK(add_s[static_cast<size_t>(i)] == add_v[static_cast<size_t>(i)]);
            CHECK(std::fabs(ra_s[static_cast<size_t>(i)] - ra_v[static_cast<size_t>(i)]) <= 1e-14);
            CHECK(std::fabs(rb_s[static_cast<size_t>(i)] - rb_v[static_cast<size_t>(i)]) <= 1e-14);
        }
    }
}

TEST_CASE("kernel results are deterministic per backend") {
    std::mt19937 rng(99);
    std::vector<double> a = random_vec(513, rng);
    std::vector<double> b = random_vec(513, rng);
    const double d1 = k::dot(a.data(), b.data(), 513);
    const double d2 = k::dot(a.data(), b.data(), 513);
    CHECK(d1 == d2);
}

TEST_CASE("dot properties") {
    std::mt19937 rng(7);
    for (int n : {3, 64, 301}) {
        std::vector<double> a = random_vec(n, rng);
        std::vector<double> b = random_vec(n, rng);
        CHECK(k::dot(a.data(), a.data(), n) >= 0.0);
        CHECK(k::dot(a.data(), b.data(), n) == k::dot(b.data(), a.data(), n));
    }
}

TEST_CASE("backends agree end to end on a perturbation radius") {
    // drives matmul/matvec/axpy/rot through the full smoother + spectral
    // pipeline under each backend
    const k::Backend simd = k::active_backend();
    if (simd == k::Backend::scalar) return;
    BackendGuard guard;
    using namespace trendlab;
    const SymmetricFilter w = symmetric_filter({6, 3, {KernelKind::henderson, 6}});
    BoundaryPolicy lc;
    lc.kind = BoundaryKind::lc;

    auto delta_lc = [&]() {
        const SmootherMatrix s = build_smoother(w, lc, 51);
        return spectral_norm(matsub(s.entries, tau_matrix(w, 51)));
    };
    k::set_backend(k::Backend::scalar);
    const double d_scalar = delta_lc();
    k::set_backend(simd);
    const double d_simd = delta_lc();
    CHECK(std::fabs(d_scalar - d_simd) <= 1e-10);
}

TEST_CASE("rot is an isometry and axpy inverts") {
    std::mt19937 rng(21);
    const int n = 129;
    std::vector<double> x = random_vec(n, rng), y = random_vec(n, rng);
    const double nx = k::dot(x.data(), x.data(), n) + k::dot(y.data(), y.data(), n);
    std::vector<double> xr = x, yr = y;
    const double c = std::cos(0.3), s = std::sin(0.3);
    k::rot(xr.data(), yr.data(), c, s, n);
    const double nr = k::dot(xr.data(), xr.data(), n) + k::dot(yr.data(), yr.data(), n);
    CHECK(std::fabs(nx - nr) <= 1e-12 * nx);

    std::vector<double> z = y;
    k::axpy(0.37, x.data(), z.data(), n);
    k::axpy(-0.37, x.data(), z.data(), n);
    for (int i = 0; i < n; ++i)
        CHECK(std::fabs(z[static_cast<size_t>(i)] - y[static_cast<size_t>(i)]) <= 1e-15);
}
