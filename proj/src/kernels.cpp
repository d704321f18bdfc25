#include "trendlab/kernels.hpp"

#include <string>

#include "trendlab/errors.hpp"

namespace trendlab::kernels {

namespace {

double dot_scalar(const double* a, const double* b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, int n) {
    for (int i = 0; i < n; ++i) x[i] *= alpha;
}

void add_scalar(const double* a, const double* b, double* out, int n) {
    for (int i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void rot_scalar(double* x, double* y, double c, double s, int n) {
    for (int i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

constexpr Ops scalar_ops{dot_scalar, axpy_scalar, scal_scalar, add_scalar, rot_scalar};

}  // namespace

#if defined(TRENDLAB_HAVE_AVX2_TU)
namespace detail {
const Ops& avx2_ops();  // defined in kernels_avx2.cpp
}

static bool host_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}
#endif

namespace {

struct Dispatch {
    Backend backend;
    const Ops* table;
};

Dispatch resolve_default() {
#if defined(TRENDLAB_HAVE_AVX2_TU)
    if (host_has_avx2()) return {Backend::avx2, &detail::avx2_ops()};
#endif
    return {Backend::scalar, &scalar_ops};
}

Dispatch& dispatch() {
    static Dispatch d = resolve_default();
    return d;
}

}  // namespace

const Ops& ops() { return *dispatch().table; }

Backend active_backend() { return dispatch().backend; }

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(TRENDLAB_HAVE_AVX2_TU)
            return host_has_avx2();
#else
            return false;
#endif
    }
    return false;
}

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw ConfigError(std::string("kernel backend not supported on this host: ") + backend_name(b));
    switch (b) {
        case Backend::scalar:
            dispatch() = {Backend::scalar, &scalar_ops};
            break;
        case Backend::avx2:
#if defined(TRENDLAB_HAVE_AVX2_TU)
            dispatch() = {Backend::avx2, &detail::avx2_ops()};
#endif
            break;
    }
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

}  // namespace trendlab::kernels
