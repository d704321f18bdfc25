#pragma once

// Double-precision inner-loop primitives backing the dense linear algebra.
// A scalar reference implementation always exists; SIMD variants live in
// separate translation units compiled with the matching ISA flags and are
// picked at runtime. set_backend() forces a specific one (used by the
// equivalence tests).

namespace trendlab::kernels {

enum class Backend { scalar, avx2 };

struct Ops {
    double (*dot)(const double* a, const double* b, int n);
    void (*axpy)(double alpha, const double* x, double* y, int n);  // y += alpha*x
    void (*scal)(double alpha, double* x, int n);                   // x *= alpha
    void (*add)(const double* a, const double* b, double* out, int n);
    // plane rotation: x' = c*x - s*y, y' = s*x + c*y
    void (*rot)(double* x, double* y, double c, double s, int n);
};

const Ops& ops();

Backend active_backend();
bool backend_supported(Backend b);
void set_backend(Backend b);  // throws ConfigError if unsupported on this host
const char* backend_name(Backend b);

inline double dot(const double* a, const double* b, int n) { return ops().dot(a, b, n); }
inline void axpy(double alpha, const double* x, double* y, int n) { ops().axpy(alpha, x, y, n); }
inline void scal(double alpha, double* x, int n) { ops().scal(alpha, x, n); }
inline void add(const double* a, const double* b, double* out, int n) { ops().add(a, b, out, n); }
inline void rot(double* x, double* y, double c, double s, int n) { ops().rot(x, y, c, s, n); }

}  // namespace trendlab::kernels
