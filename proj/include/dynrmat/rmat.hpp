#pragma once

// Constructors for the named classical and quantum dynamical matrices of the
// elliptic Ruijsenaars-Schneider system, on one or two tensor slots.  All of
// them use the canonical kernel Phi(z,s) = theta'(0) theta(z+s)/(theta(z)theta(s)),
// its regular part u = theta'/theta on vanishing second argument, and the
// prefactor theta(hbar)/theta'(0) where a sigma(hbar) scale is required.
//
// Entry conventions: tensor indices (i,j) -> i*N+j, slot 1 slowest; E_ij ox E_kl
// contributes at (row, col) = (i*N+k, j*N+l).

#include <functional>
#include <vector>

#include "dynrmat/elliptic.hpp"
#include "dynrmat/matrix.hpp"

namespace dynrmat {

using QVec = std::vector<cplx>;

namespace kernels {

// Phi(x, q_i - q_j) with the regularized diagonal: on i == j the kernel is
// the regular part u(x) = theta'(x)/theta(x).
inline cplx phid(cplx x, int i, int j, const QVec& q, const EllipticContext& c) {
    return i == j ? phi_reg(x, c) : phi(x, q[i] - q[j], c);
}

// Regularized single-argument kernel Phi(q_ij): zero on the diagonal.
inline cplx ureg(int i, int j, const QVec& q, const EllipticContext& c) {
    return i == j ? cplx(0.0) : phi_reg(q[i] - q[j], c);
}

// d/dq_m of phid / ureg.  Diagonal entries carry no q-dependence.
inline cplx phid_dq(cplx x, int i, int j, int m, const QVec& q, const EllipticContext& c) {
    if (i == j || (m != i && m != j)) return 0.0;
    cplx d = phi_ds(x, q[i] - q[j], c);
    return m == i ? d : -d;
}

inline cplx ureg_dq(int i, int j, int m, const QVec& q, const EllipticContext& c) {
    if (i == j || (m != i && m != j)) return 0.0;
    cplx d = phi_reg_deriv(q[i] - q[j], c);
    return m == i ? d : -d;
}

// d/dx of phid.
inline cplx phid_dx(cplx x, int i, int j, const QVec& q, const EllipticContext& c) {
    return i == j ? phi_reg_deriv(x, c) : phi_dz(x, q[i] - q[j], c);
}

}  // namespace kernels

// ---- classical matrices --------------------------------------------------

/// r(z,w): two-slot classical r-matrix.
inline CMatrix r_classical(cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i != j) m(i * N + j, i * N + j) += ureg(i, j, q, c);           // E_ii ox E_jj
            m(i * N + j, j * N + i) += phid(z - w, i, j, q, c);                // E_ij ox E_ji
            m(i * N + j, j * N + j) -= phid(z, i, j, q, c);                    // E_ij ox E_jj
            m(j * N + i, j * N + j) += phid(w, i, j, q, c);                    // E_jj ox E_ij
        }
    return m;
}

inline CMatrix r_classical_dq(int mq, cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i != j) m(i * N + j, i * N + j) += ureg_dq(i, j, mq, q, c);
            m(i * N + j, j * N + i) += phid_dq(z - w, i, j, mq, q, c);
            m(i * N + j, j * N + j) -= phid_dq(z, i, j, mq, q, c);
            m(j * N + i, j * N + j) += phid_dq(w, i, j, mq, q, c);
        }
    return m;
}

// Holomorphic spectral derivatives of r in its first / second argument.
inline CMatrix r_classical_dz(cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i * N + j, j * N + i) += phid_dx(z - w, i, j, q, c);
            m(i * N + j, j * N + j) -= phid_dx(z, i, j, q, c);
        }
    return m;
}

inline CMatrix r_classical_dw(cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i * N + j, j * N + i) -= phid_dx(z - w, i, j, q, c);
            m(j * N + i, j * N + j) += phid_dx(w, i, j, q, c);
        }
    return m;
}

/// s(z): one-slot matrix entering the bold r-matrices.
inline CMatrix s_matrix(cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i, i) += ureg(i, j, q, c) / static_cast<double>(N);
            m(i, j) -= phid(z, i, j, q, c) / static_cast<double>(N);
        }
    return m;
}

inline CMatrix s_matrix_dq(int mq, cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i, i) += ureg_dq(i, j, mq, q, c) / static_cast<double>(N);
            m(i, j) -= phid_dq(z, i, j, mq, q, c) / static_cast<double>(N);
        }
    return m;
}

/// rbar(z): two-slot classical matrix, diagonal in the second slot.
inline CMatrix rbar_classical(cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i * N + j, i * N + j) += ureg(i, j, q, c);
            m(i * N + j, j * N + j) -= phid(z, i, j, q, c);
        }
    return m;
}

inline CMatrix rbar_classical_dq(int mq, cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i * N + j, i * N + j) += ureg_dq(i, j, mq, q, c);
            m(i * N + j, j * N + j) -= phid_dq(z, i, j, mq, q, c);
        }
    return m;
}

inline CMatrix rbar_classical_dz(cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i * N + j, j * N + j) -= phid_dx(z, i, j, q, c);
    return m;
}

/// bold r(z,w) = r(z,w) - s(z) ox I + I ox s(w) - (1/N) u(z-w) I ox I.
inline CMatrix bold_r(cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    const int N = static_cast<int>(q.size());
    CMatrix m = r_classical(z, w, q, c);
    m -= kron(s_matrix(z, q, c), CMatrix::identity(N));
    m += kron(CMatrix::identity(N), s_matrix(w, q, c));
    CMatrix unit = CMatrix::identity(N * N);
    unit *= phi_reg(z - w, c) / static_cast<double>(N);
    m -= unit;
    return m;
}

inline CMatrix bold_r_dq(int mq, cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    const int N = static_cast<int>(q.size());
    CMatrix m = r_classical_dq(mq, z, w, q, c);
    m -= kron(s_matrix_dq(mq, z, q, c), CMatrix::identity(N));
    m += kron(CMatrix::identity(N), s_matrix_dq(mq, w, q, c));
    return m;
}

/// bold rbar(z) = rbar(z) - s(z) ox I - (1/N) I ox diag_j( sum_i Phi(q_ij) ).
inline CMatrix bold_rbar(cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m = rbar_classical(z, q, c);
    m -= kron(s_matrix(z, q, c), CMatrix::identity(N));
    CMatrix diag(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) diag(j, j) += ureg(i, j, q, c);
    diag *= 1.0 / static_cast<double>(N);
    m -= kron(CMatrix::identity(N), diag);
    return m;
}

inline CMatrix bold_rbar_dq(int mq, cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m = rbar_classical_dq(mq, z, q, c);
    m -= kron(s_matrix_dq(mq, z, q, c), CMatrix::identity(N));
    CMatrix diag(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) diag(j, j) += ureg_dq(i, j, mq, q, c);
    diag *= 1.0 / static_cast<double>(N);
    m -= kron(CMatrix::identity(N), diag);
    return m;
}

/// Closed-form Felder classical matrix r^F(z-w).
inline CMatrix rF_classical(cplx d, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i != j) m(i * N + j, i * N + j) -= ureg(i, j, q, c);
            m(i * N + j, j * N + i) += phid(d, i, j, q, c);
        }
    return m;
}

inline CMatrix rF_classical_dq(int mq, cplx d, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i != j) m(i * N + j, i * N + j) -= ureg_dq(i, j, mq, q, c);
            m(i * N + j, j * N + i) += phid_dq(d, i, j, mq, q, c);
        }
    return m;
}

inline CMatrix rF_classical_dd(cplx d, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i * N + j, j * N + i) += phid_dx(d, i, j, q, c);
    return m;
}

// ---- quantum matrices ------------------------------------------------------

/// f R(hbar; z, w) before division by f; every sum runs over all (i,j) with
/// the regularized diagonal kernel.
inline CMatrix quantum_R_hat(cplx hbar, cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            m(i * N + j, i * N + j) += phid(hbar, i, j, q, c);
            m(i * N + j, j * N + i) += phid(z - w, i, j, q, c);
            m(i * N + j, j * N + j) -= phid(z + hbar, i, j, q, c);
            m(j * N + i, j * N + j) += phid(w, i, j, q, c);
        }
    return m;
}

inline CMatrix quantum_R(cplx hbar, cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    CMatrix m = quantum_R_hat(hbar, z, w, q, c);
    m *= 1.0 / f_norm(z - w, hbar, c);
    return m;
}

/// R(-hbar; z, w): hbar -> -hbar together with f -> -f.
inline CMatrix quantum_R_neg(cplx hbar, cplx z, cplx w, const QVec& q, const EllipticContext& c) {
    CMatrix m = quantum_R_hat(-hbar, z, w, q, c);
    m *= -1.0 / f_norm(z - w, hbar, c);
    return m;
}

/// Rbar(hbar; z), diagonal in the second slot; prefactor theta(hbar)/theta'(0).
inline CMatrix rbar_quantum(cplx hbar, cplx z, const QVec& q, const EllipticContext& c) {
    using namespace kernels;
    const int N = static_cast<int>(q.size());
    const cplx pref = theta(hbar, c) / c.th1;
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i != j) {
                m(i * N + j, i * N + j) += pref * phi(hbar, q[i] - q[j], c);
                m(i * N + j, j * N + j) -= pref * phi(z + hbar, q[i] - q[j], c);
            } else {
                m(i * N + i, i * N + i) -= pref * phi(z + hbar, -hbar, c);
            }
        }
    return m;
}

/// Rbar^{-1}(hbar; z); the diagonal i == j term of the first sum vanishes
/// identically (theta(0) in the numerator), so all (i,j) are summed.
inline CMatrix rbar_quantum_inv(cplx hbar, cplx z, const QVec& q, const EllipticContext& c) {
    const int N = static_cast<int>(q.size());
    const cplx pref = theta(hbar, c) / c.th1;
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            cplx qij = q[i] - q[j];
            if (i != j) m(i * N + j, i * N + j) -= pref * phi(-hbar, qij + hbar, c);
            m(i * N + j, j * N + j) += pref * phi(z, qij + hbar, c);
        }
    return m;
}

/// f R^F(z-w) before division by f.
inline CMatrix felder_RF_hat(cplx hbar, cplx d, const QVec& q, const EllipticContext& c) {
    const int N = static_cast<int>(q.size());
    CMatrix m(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i != j) {
                m(i * N + j, i * N + j) -= phi(-hbar, q[i] - q[j], c);
                m(i * N + j, j * N + i) += phi(d, q[i] - q[j], c);
            } else {
                m(i * N + i, i * N + i) += phi(d, hbar, c);
            }
        }
    return m;
}

inline CMatrix felder_RF(cplx hbar, cplx d, const QVec& q, const EllipticContext& c) {
    CMatrix m = felder_RF_hat(hbar, d, q, c);
    m *= 1.0 / f_norm(d, hbar, c);
    return m;
}

// ---- twist transformation ---------------------------------------------------
//
// Conjugation of the triple (R, Rbar, R^F) by e^{alpha(z) Q} e^{-beta Q};
// realized as entrywise exponential factors linear in the coordinates.
// alpha-values are supplied already evaluated at the relevant spectral points.

inline CMatrix twist_R(const CMatrix& R, cplx az, cplx aw, cplx beta, const QVec& q) {
    const int N = static_cast<int>(q.size());
    CMatrix out(N * N, N * N);
    for (int r1 = 0; r1 < N; ++r1)
        for (int r2 = 0; r2 < N; ++r2)
            for (int c1 = 0; c1 < N; ++c1)
                for (int c2 = 0; c2 < N; ++c2) {
                    cplx left = std::exp(-az * q[r1] - aw * q[r2] + beta * q[r2]);
                    cplx right = std::exp(az * q[c1] + aw * q[c2] - beta * q[c1]);
                    out(r1 * N + r2, c1 * N + c2) = left * R(r1 * N + r2, c1 * N + c2) * right;
                }
    return out;
}

inline CMatrix twist_Rbar(const CMatrix& Rb, cplx az, cplx beta, cplx hbar, const QVec& q) {
    const int N = static_cast<int>(q.size());
    CMatrix out(N * N, N * N);
    for (int r1 = 0; r1 < N; ++r1)
        for (int r2 = 0; r2 < N; ++r2)
            for (int c1 = 0; c1 < N; ++c1)
                for (int c2 = 0; c2 < N; ++c2) {
                    cplx left = std::exp(hbar * az * (r1 == r2 ? 1.0 : 0.0) - az * q[r1] + beta * q[r2]);
                    cplx right = std::exp(az * q[c1] - beta * q[c1]);
                    out(r1 * N + r2, c1 * N + c2) = left * Rb(r1 * N + r2, c1 * N + c2) * right;
                }
    return out;
}

inline CMatrix twist_RF(const CMatrix& RF, cplx az, cplx aw, cplx beta, cplx hbar, const QVec& q) {
    const int N = static_cast<int>(q.size());
    CMatrix out(N * N, N * N);
    for (int r1 = 0; r1 < N; ++r1)
        for (int r2 = 0; r2 < N; ++r2)
            for (int c1 = 0; c1 < N; ++c1)
                for (int c2 = 0; c2 < N; ++c2) {
                    cplx left = std::exp(-az * q[r1] - aw * q[r2] + 0.5 * hbar * (aw - az) * (r1 == r2 ? 1.0 : 0.0) +
                                         beta * q[r1]);
                    cplx right = std::exp(az * q[c1] + aw * q[c2] + 0.5 * hbar * (aw - az) * (c1 == c2 ? 1.0 : 0.0) -
                                          beta * q[c2]);
                    out(r1 * N + r2, c1 * N + c2) = left * RF(r1 * N + r2, c1 * N + c2) * right;
                }
    return out;
}

}  // namespace dynrmat
