#include "trendlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "trendlab/errors.hpp"
#include "trendlab/kernels.hpp"

namespace trendlab {

namespace {

constexpr double kRqTol = 1e-12;
constexpr int kRqStall = 5;
constexpr int kPowerCap = 20000;

// Power iteration on the PSD matrix b, returning the limiting Rayleigh
// quotient. Throws on hitting the iteration cap.
double power_rayleigh(const Matrix& b, std::vector<double> v) {
    const int n = b.rows();
    double nv = vec_norm2(v);
    if (nv == 0.0) throw NumericError("spectral_norm: zero start vector");
    kernels::scal(1.0 / nv, v.data(), n);

    double rho_prev = 0.0;
    int stall = 0;
    for (int it = 0; it < kPowerCap; ++it) {
        std::vector<double> w = matvec(b, v);
        const double rho = vec_dot(v, w);
        const double nw = vec_norm2(w);
        if (nw <= 1e-300) return 0.0;  // v annihilated: norm operator is 0 along this start
        kernels::scal(1.0 / nw, w.data(), n);
        v = std::move(w);
        if (std::fabs(rho - rho_prev) <= kRqTol * std::max(1.0, std::fabs(rho)))
            ++stall;
        else
            stall = 0;
        rho_prev = rho;
        if (stall >= kRqStall) return rho;
    }
    std::vector<double> w = matvec(b, v);
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::fabs(w[static_cast<size_t>(i)] - rho_prev * v[static_cast<size_t>(i)]));
    throw NumericError("spectral_norm: power iteration did not converge in " +
                       std::to_string(kPowerCap) + " steps (residual " + std::to_string(resid) + ")");
}

}  // namespace

double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const Matrix b = matmul(transpose(a), a);
    const int n = b.rows();

    std::vector<double> ones(static_cast<size_t>(n), 1.0);
    const double rho1 = power_rayleigh(b, std::move(ones));

    std::mt19937 rng(0x7e11ab5u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> rnd(static_cast<size_t>(n));
    for (double& x : rnd) x = unif(rng);
    const double rho2 = power_rayleigh(b, std::move(rnd));

    return std::sqrt(std::max({rho1, rho2, 0.0}));
}

EigenSystem symmetric_eigen(const Matrix& a0) {
    const int n = a0.rows();
    if (n != a0.cols()) throw ConfigError("symmetric_eigen: matrix not square");
    const double scale = std::max(1.0, max_abs(a0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(a0(i, j) - a0(j, i)) > 1e-12 * scale)
                throw ConfigError("symmetric_eigen: matrix not symmetric within 1e-12");

    Matrix a = a0;
    // accumulate eigenvectors in transposed layout so the plane rotations
    // touch contiguous rows
    Matrix vt = Matrix::identity(n);

    const double fnorm0 = frobenius_norm(a0);
    const double thresh = 1e-13 * fnorm0;
    const int sweep_cap = 50;

    auto offdiag = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    while (offdiag() > thresh) {
        if (++sweep > sweep_cap)
            throw NumericError("symmetric_eigen: Jacobi did not converge within 50 sweeps");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- J' A J with the rotation in the (p,q) plane
                kernels::rot(a.row(p), a.row(q), c, s, n);
                for (int i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                kernels::rot(vt.row(p), vt.row(q), c, s, n);
            }
        }
    }

    EigenSystem sys;
    sys.values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) sys.values[static_cast<size_t>(i)] = a(i, i);
    sys.vectors = transpose(vt);
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<double> v(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) v[static_cast<size_t>(r)] = sys.vectors(r, i);
        std::vector<double> av = matvec(a0, v);
        double rr = 0.0;
        for (int r = 0; r < n; ++r) {
            const double d = av[static_cast<size_t>(r)] - sys.values[static_cast<size_t>(i)] * v[static_cast<size_t>(r)];
            rr += d * d;
        }
        resid = std::max(resid, std::sqrt(rr));
    }
    sys.residual = resid;
    return sys;
}

namespace {

inline double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

// Householder reduction to upper Hessenberg (values-only variant; the
// similarity transforms are not accumulated).
void hessenberg_reduce(Matrix& h) {
    const int n = h.rows();
    std::vector<double> ort(static_cast<size_t>(n), 0.0);
    for (int m = 1; m <= n - 2; ++m) {
        double scale = 0.0;
        for (int i = m; i < n; ++i) scale += std::fabs(h(i, m - 1));
        if (scale == 0.0) continue;
        double hh = 0.0;
        for (int i = n - 1; i >= m; --i) {
            ort[static_cast<size_t>(i)] = h(i, m - 1) / scale;
            hh += ort[static_cast<size_t>(i)] * ort[static_cast<size_t>(i)];
        }
        double g = std::sqrt(hh);
        if (ort[static_cast<size_t>(m)] > 0.0) g = -g;
        hh -= ort[static_cast<size_t>(m)] * g;
        ort[static_cast<size_t>(m)] -= g;
        // apply the reflector from both sides
        for (int j = m; j < n; ++j) {
            double f = 0.0;
            for (int i = n - 1; i >= m; --i) f += ort[static_cast<size_t>(i)] * h(i, j);
            f /= hh;
            for (int i = m; i < n; ++i) h(i, j) -= f * ort[static_cast<size_t>(i)];
        }
        for (int i = 0; i < n; ++i) {
            double f = 0.0;
            for (int j = n - 1; j >= m; --j) f += ort[static_cast<size_t>(j)] * h(i, j);
            f /= hh;
            for (int j = m; j < n; ++j) h(i, j) -= f * ort[static_cast<size_t>(j)];
        }
        h(m, m - 1) = scale * g;
        for (int i = m + 1; i < n; ++i) h(i, m - 1) = 0.0;
    }
}

constexpr double kDeflate = 1e-12;
constexpr int kQrIterCap = 30;

// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
std::vector<std::complex<double>> hessenberg_qr(Matrix& h) {
    const int n = h.rows();
    std::vector<std::complex<double>> eig(static_cast<size_t>(n));

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j < n; ++j) anorm += std::fabs(h(i, j));
    if (anorm == 0.0) return eig;

    int nn = n - 1;
    double exshift = 0.0;
    int its = 0;
    while (nn >= 0) {
        // deflation scan
        int l = nn;
        for (; l > 0; --l) {
            double s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
            if (s == 0.0) s = anorm;
            if (std::fabs(h(l, l - 1)) <= kDeflate * s) {
                h(l, l - 1) = 0.0;
                break;
            }
        }
        double x = h(nn, nn);
        if (l == nn) {
            eig[static_cast<size_t>(nn)] = {x + exshift, 0.0};
            --nn;
            its = 0;
            continue;
        }
        double y = h(nn - 1, nn - 1);
        double w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
            double p = 0.5 * (y - x);
            double q = p * p + w;
            double zz = std::sqrt(std::fabs(q));
            x += exshift;
            if (q >= 0.0) {
                zz = p + sign_like(zz, p);
                double e1 = x + zz;
                double e2 = (zz != 0.0) ? x - w / zz : e1;
                eig[static_cast<size_t>(nn - 1)] = {e1, 0.0};
                eig[static_cast<size_t>(nn)] = {e2, 0.0};
            } else {
                eig[static_cast<size_t>(nn - 1)] = {x + p, zz};
                eig[static_cast<size_t>(nn)] = {x + p, -zz};
            }
            nn -= 2;
            its = 0;
            continue;
        }
        if (its == kQrIterCap)
            throw NumericError("general_eigenvalues: QR iteration cap reached at index " +
                               std::to_string(nn));
        if (its == 10 || its == 20) {
            // exceptional shift
            exshift += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::fabs(h(nn, nn - 1)) + std::fabs(h(nn - 1, nn - 2));
            x = y = 0.75 * s;
            w = -0.4375 * s * s;
        }
        ++its;

        // look for two consecutive small subdiagonal elements
        int m = nn - 2;
        double p = 0.0, q = 0.0, r = 0.0;
        for (; m >= l; --m) {
            const double zz = h(m, m);
            const double rr = x - zz;
            const double ss = y - zz;
            p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - zz - rr - ss;
            r = h(m + 2, m + 1);
            const double sc = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= sc;
            q /= sc;
            r /= sc;
            if (m == l) break;
            const double u = std::fabs(h(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const double v = std::fabs(p) * (std::fabs(h(m - 1, m - 1)) + std::fabs(zz) + std::fabs(h(m + 1, m + 1)));
            if (u <= kDeflate * v) break;
        }
        for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
        }

        // double QR sweep over rows l..nn, columns m..nn
        for (int k = m; k <= nn - 1; ++k) {
            const bool notlast = (k != nn - 1);
            if (k != m) {
                p = h(k, k - 1);
                q = h(k + 1, k - 1);
                r = notlast ? h(k + 2, k - 1) : 0.0;
                x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                if (x == 0.0) continue;
                p /= x;
                q /= x;
                r /= x;
            }
            double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k != m)
                h(k, k - 1) = -s * x;
            else if (l != m)
                h(k, k - 1) = -h(k, k - 1);
            p += s;
            x = p / s;
            y = q / s;
            const double zz = r / s;
            q /= p;
            r /= p;
            if (!notlast) {
                for (int j = k; j < n; ++j) {
                    const double pp = h(k, j) + q * h(k + 1, j);
                    h(k, j) -= pp * x;
                    h(k + 1, j) -= pp * y;
                }
                const int jmax = std::min(nn, k + 3);
                for (int i = 0; i <= jmax; ++i) {
                    const double pp = x * h(i, k) + y * h(i, k + 1);
                    h(i, k) -= pp;
                    h(i, k + 1) -= pp * q;
                }
            } else {
                for (int j = k; j < n; ++j) {
                    const double pp = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
                    h(k, j) -= pp * x;
                    h(k + 1, j) -= pp * y;
                    h(k + 2, j) -= pp * zz;
                }
                const int jmax = std::min(nn, k + 3);
                for (int i = 0; i <= jmax; ++i) {
                    const double pp = x * h(i, k) + y * h(i, k + 1) + zz * h(i, k + 2);
                    h(i, k) -= pp;
                    h(i, k + 1) -= pp * q;
                    h(i, k + 2) -= pp * r;
                }
            }
        }
    }
    return eig;
}

}  // namespace

std::vector<std::complex<double>> general_eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw ConfigError("general_eigenvalues: matrix not square");
    if (a.rows() == 0) return {};
    Matrix h = a;
    hessenberg_reduce(h);
    return hessenberg_qr(h);
}

PerturbationReport perturbation_report(const SmootherMatrix& s, AlgebraKind algebra) {
    PerturbationReport rep;
    rep.algebra = algebra;
    const SymmetricFilter& sym = s.source;

    Matrix ref_matrix = (algebra == AlgebraKind::circulant) ? circulant_matrix(sym, s.n)
                                                            : tau_matrix(sym, s.n);
    rep.reference_values = (algebra == AlgebraKind::circulant) ? circulant_eigenvalues(sym, s.n)
                                                               : tau_eigenvalues(sym, s.n);
    rep.delta = spectral_norm(matsub(s.entries, ref_matrix));
    rep.smoother_values = general_eigenvalues(s.entries);

    rep.match_distance.resize(rep.smoother_values.size());
    rep.nearest_index.resize(rep.smoother_values.size());
    rep.max_imag = 0.0;
    // each eigenvalue is matched to its nearest reference independently
    for (size_t k = 0; k < rep.smoother_values.size(); ++k) {
        double best = std::numeric_limits<double>::infinity();
        int best_i = 0;
        for (size_t i = 0; i < rep.reference_values.size(); ++i) {
            const double d = std::abs(rep.smoother_values[k] - std::complex<double>(rep.reference_values[i], 0.0));
            if (d < best) {
                best = d;
                best_i = static_cast<int>(i);
            }
        }
        rep.match_distance[k] = best;
        rep.nearest_index[k] = best_i;
        rep.max_imag = std::max(rep.max_imag, std::fabs(rep.smoother_values[k].imag()));
    }
    // the bound itself is exact; the slack only absorbs eigensolver roundoff
    const double slack = 1e-8;
    rep.containment = true;
    for (double d : rep.match_distance)
        if (d > rep.delta + slack) rep.containment = false;
    return rep;
}

std::vector<double> eigenvector_perturbation(const SmootherMatrix& s, int i) {
    if (i < 1 || i > s.n) throw ConfigError("eigenvector_perturbation: index out of range");
    const Matrix h = tau_matrix(s.source, s.n);
    const Matrix z = tau_eigenvectors(s.n);
    std::vector<double> zi(static_cast<size_t>(s.n));
    for (int r = 0; r < s.n; ++r) zi[static_cast<size_t>(r)] = z(r, i - 1);
    const Matrix delta = matsub(s.entries, h);
    return matvec(delta, zi);
}

}  // namespace trendlab
