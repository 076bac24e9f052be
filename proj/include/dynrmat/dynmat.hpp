#pragma once

// Slot-level operations on dynamical matrices: P-conjugations (coordinate
// shifts keyed to a tensor slot) and the classical bracket-with-P term
// realized as a q-gradient against a diagonal slot projector.

#include <functional>
#include <stdexcept>

#include "dynrmat/matrix.hpp"
#include "dynrmat/rmat.hpp"

namespace dynrmat {

/// A matrix on n slots given as a function of the coordinate vector q; the
/// spectral parameters are already bound inside the closure.
using QMatFn = std::function<CMatrix(const QVec&)>;

inline int slot_index(int flat, int slot, int n_slots, int N) {
    for (int s = n_slots; s > slot; --s) flat /= N;
    return flat % N;
}

/// conj_P(f, k, +1) = P_k^{-1} M P_k : the slot-k column block j is evaluated
/// at q - hbar e_j.  conj_P(f, k, -1) = P_k M P_k^{-1} (shift q + hbar e_j).
/// Requires M diagonal in slot k (the leftover shift operators would
/// otherwise not cancel); violations are detected and reported.
inline CMatrix conj_P(const QMatFn& f, int slot, int sign, int n_slots, int N, const QVec& q, cplx hbar) {
    const int dim = pow_int(N, n_slots);
    CMatrix out(dim, dim);
    for (int j = 0; j < N; ++j) {
        QVec qs = q;
        qs[j] -= static_cast<double>(sign) * hbar;
        CMatrix block = f(qs);
        if (block.rows != dim || block.cols != dim) throw std::invalid_argument("conj_P: shape mismatch");
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                if (slot_index(c, slot, n_slots, N) != j) continue;
                if (slot_index(r, slot, n_slots, N) != j) {
                    if (std::abs(block(r, c)) > 1e-13 * (1.0 + block.norm_inf()))
                        throw std::invalid_argument("conj_P: matrix not diagonal in the conjugated slot");
                    continue;
                }
                out(r, c) = block(r, c);
            }
    }
    return out;
}

/// Classical P_k^{-1}{X, P_k} with {q_i, P_j} = P_j delta_ij:
///   sum_j (dX/dq_j) against E_jj on slot k.
/// grad(j) must return dX/dq_j already embedded in the full n-slot space.
inline CMatrix q_derivative_slot(const std::function<CMatrix(int)>& grad, int slot, int n_slots, int N) {
    const int dim = pow_int(N, n_slots);
    CMatrix out(dim, dim);
    for (int j = 0; j < N; ++j) {
        CMatrix g = grad(j);
        for (int r = 0; r < dim; ++r) {
            if (slot_index(r, slot, n_slots, N) != j) continue;
            for (int c = 0; c < dim; ++c)
                if (slot_index(c, slot, n_slots, N) == j) out(r, c) += g(r, c);
        }
    }
    return out;
}

}  // namespace dynrmat
