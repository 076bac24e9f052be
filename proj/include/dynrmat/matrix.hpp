#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "dynrmat/complex_util.hpp"

namespace dynrmat {

/// Dense complex matrix, row-major.  Sizes here are tiny (N^slots with
/// N <= 8, slots <= 3), so everything is naive and allocation-friendly.
struct CMatrix {
    int rows = 0, cols = 0;
    std::vector<cplx> d;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), d(static_cast<std::size_t>(r) * c, cplx(0.0)) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    cplx& operator()(int r, int c) { return d[static_cast<std::size_t>(r) * cols + c]; }
    const cplx& operator()(int r, int c) const { return d[static_cast<std::size_t>(r) * cols + c]; }

    CMatrix& operator+=(const CMatrix& o) {
        assert(rows == o.rows && cols == o.cols);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] += o.d[k];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        assert(rows == o.rows && cols == o.cols);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] -= o.d[k];
        return *this;
    }
    CMatrix& operator*=(cplx s) {
        for (auto& v : d) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        assert(a.cols == b.rows);
        CMatrix out(a.rows, b.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    double norm_inf() const {
        double m = 0.0;
        for (const auto& v : d) m = std::max(m, std::abs(v));
        return m;
    }
};

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

/// Max-norm residual between two expressions of the same shape:
/// ||lhs-rhs||_inf / (||lhs||_inf + ||rhs||_inf + 1).
inline double residual(const CMatrix& lhs, const CMatrix& rhs) {
    return (lhs - rhs).norm_inf() / (lhs.norm_inf() + rhs.norm_inf() + 1.0);
}

// ---- tensor-slot bookkeeping -------------------------------------------
//
// Multi-indices use row-major Kronecker order with slot 1 slowest:
// index = i_1 N^{n-1} + ... + i_n.

inline int pow_int(int base, int e) {
    int r = 1;
    while (e-- > 0) r *= base;
    return r;
}

/// Embed a 2-slot matrix m (N^2 x N^2) into slots (a,b) of an n-slot space,
/// identity elsewhere.  Slots are 1-based; a != b; (b,a) order realizes the
/// permutation-conjugated embedding.
inline CMatrix embed(const CMatrix& m, int a, int b, int n_slots, int N) {
    if (a == b || a < 1 || b < 1 || a > n_slots || b > n_slots)
        throw std::invalid_argument("embed: bad slot pair");
    const int dim = pow_int(N, n_slots);
    CMatrix out(dim, dim);
    std::vector<int> ri(n_slots), ci(n_slots);
    for (int r = 0; r < dim; ++r) {
        int t = r;
        for (int s = n_slots - 1; s >= 0; --s) {
            ri[s] = t % N;
            t /= N;
        }
        for (int c = 0; c < dim; ++c) {
            int u = c;
            bool spectate_ok = true;
            for (int s = n_slots - 1; s >= 0; --s) {
                ci[s] = u % N;
                u /= N;
            }
            for (int s = 0; s < n_slots; ++s)
                if (s != a - 1 && s != b - 1 && ri[s] != ci[s]) {
                    spectate_ok = false;
                    break;
                }
            if (!spectate_ok) continue;
            out(r, c) = m(ri[a - 1] * N + ri[b - 1], ci[a - 1] * N + ci[b - 1]);
        }
    }
    return out;
}

/// Swap the two slots of a 2-slot matrix: m21 = C m12 C.
inline CMatrix swap_slots(const CMatrix& m, int N) {
    CMatrix out(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l) out(j * N + i, l * N + k) = m(i * N + j, k * N + l);
    return out;
}

/// Permutation operator C on two slots: C (v ox w) = w ox v.
inline CMatrix permutation_C(int N) {
    CMatrix c(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) c(i * N + j, j * N + i) = 1.0;
    return c;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            cplx v = a(i, j);
            if (v == cplx(0.0)) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l) out(i * b.rows + k, j * b.cols + l) = v * b(k, l);
        }
    return out;
}

/// LU solve with partial pivoting: returns X with A X = B.  Throws
/// degenerate_error when a pivot falls below a conditioning floor.
inline CMatrix lu_solve(CMatrix a, CMatrix b) {
    assert(a.rows == a.cols && a.rows == b.rows);
    const int n = a.rows;
    double scale = a.norm_inf();
    if (scale == 0.0) throw degenerate_error("lu_solve: zero matrix");
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int r = k + 1; r < n; ++r)
            if (std::abs(a(r, k)) > best) {
                best = std::abs(a(r, k));
                piv = r;
            }
        if (best < 1e-13 * scale) throw degenerate_error("lu_solve: singular to working precision");
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            for (int c = 0; c < b.cols; ++c) std::swap(b(k, c), b(piv, c));
        }
        for (int r = k + 1; r < n; ++r) {
            cplx f = a(r, k) / a(k, k);
            if (f == cplx(0.0)) continue;
            for (int c = k; c < n; ++c) a(r, c) -= f * a(k, c);
            for (int c = 0; c < b.cols; ++c) b(r, c) -= f * b(k, c);
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int c = 0; c < b.cols; ++c) {
            cplx s = b(k, c);
            for (int r = k + 1; r < n; ++r) s -= a(k, r) * b(r, c);
            b(k, c) = s / a(k, k);
        }
    }
    return b;
}

inline CMatrix inverse(const CMatrix& a) { return lu_solve(a, CMatrix::identity(a.rows)); }

}  // namespace dynrmat
