#pragma once

// Difference-operator algebra: finite sums of
//     coefficient(q) * (matrix unit E_{row,col}) * (integer shift S_m),
// with the product rule  (c S_m)(d S_n) = c(q) d(q + hbar m) S_{m+n}.
// Shift vectors are integral because every coefficient in this artifact
// depends on q only through the projections q_k - mean(q), on which the
// integer shift e_k acts exactly like the weight-space step eps_bar_k.

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dynrmat/matrix.hpp"
#include "dynrmat/rmat.hpp"

namespace dynrmat {

using CoeffFn = std::function<cplx(const QVec&)>;
using ShiftVec = std::vector<int>;

namespace detail {

inline std::size_t hash_q(const QVec& q) {
    return fnv1a(q.data(), q.size() * sizeof(cplx));
}

// Coefficient evaluations recur at a small set of (possibly shifted) sample
// points; caching per closure keeps deep product trees linear in practice.
inline CoeffFn memoize(CoeffFn f) {
    auto cache = std::make_shared<std::unordered_map<std::size_t, cplx>>();
    return [f = std::move(f), cache](const QVec& q) {
        std::size_t key = hash_q(q);
        auto it = cache->find(key);
        if (it != cache->end()) return it->second;
        cplx v = f(q);
        cache->emplace(key, v);
        return v;
    };
}

// Shared memoized evaluation of a full matrix-valued function of q, for
// lifting dense dynamical matrices into the operator algebra.
struct MatMemo {
    std::function<CMatrix(const QVec&)> fn;
    std::unordered_map<std::size_t, CMatrix> cache;
    const CMatrix& eval(const QVec& q) {
        std::size_t key = hash_q(q);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, fn(q)).first;
        return it->second;
    }
};

}  // namespace detail

struct OpTerm {
    int row, col;
    ShiftVec shift;
    CoeffFn coeff;
};

/// A matrix-valued difference operator in canonical form: at most one term
/// per (row, col, shift) key.  Immutable by convention once built.
struct DifferenceOperator {
    int dim = 1;  // matrix dimension (N^slots)
    int N = 1;    // number of coordinates q_1..q_N
    cplx hbar{};
    std::vector<OpTerm> terms;

    static DifferenceOperator identity(int dim, int N, cplx hbar) {
        DifferenceOperator op{dim, N, hbar, {}};
        for (int i = 0; i < dim; ++i) op.terms.push_back({i, i, ShiftVec(N, 0), [](const QVec&) { return cplx(1.0); }});
        return op;
    }
};

inline QVec shifted_q(const QVec& q, const ShiftVec& m, cplx hbar) {
    QVec qs = q;
    for (std::size_t k = 0; k < qs.size(); ++k)
        if (m[k] != 0) qs[k] += hbar * static_cast<double>(m[k]);
    return qs;
}

namespace detail {

using TermKey = std::tuple<int, int, ShiftVec>;

inline DifferenceOperator from_buckets(int dim, int N, cplx hbar, std::map<TermKey, std::vector<CoeffFn>>&& buckets) {
    DifferenceOperator out{dim, N, hbar, {}};
    out.terms.reserve(buckets.size());
    for (auto& [key, fns] : buckets) {
        CoeffFn sum;
        if (fns.size() == 1)
            sum = std::move(fns.front());
        else
            sum = [fns = std::move(fns)](const QVec& q) {
                cplx acc = 0.0;
                for (const auto& f : fns) acc += f(q);
                return acc;
            };
        out.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), memoize(std::move(sum))});
    }
    return out;
}

}  // namespace detail

inline DifferenceOperator compose(const DifferenceOperator& a, const DifferenceOperator& b) {
    if (a.dim != b.dim || a.N != b.N) throw std::invalid_argument("compose: shape mismatch");
    std::map<detail::TermKey, std::vector<CoeffFn>> buckets;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            if (ta.col != tb.row) continue;
            ShiftVec m(a.N);
            for (int k = 0; k < a.N; ++k) m[k] = ta.shift[k] + tb.shift[k];
            CoeffFn f = [fa = ta.coeff, fb = tb.coeff, ma = ta.shift, h = a.hbar](const QVec& q) {
                return fa(q) * fb(shifted_q(q, ma, h));
            };
            buckets[{ta.row, tb.col, std::move(m)}].push_back(std::move(f));
        }
    return detail::from_buckets(a.dim, a.N, a.hbar, std::move(buckets));
}

inline DifferenceOperator add(const DifferenceOperator& a, const DifferenceOperator& b, cplx cb = 1.0) {
    if (a.dim != b.dim || a.N != b.N) throw std::invalid_argument("add: shape mismatch");
    std::map<detail::TermKey, std::vector<CoeffFn>> buckets;
    for (const auto& t : a.terms) buckets[{t.row, t.col, t.shift}].push_back(t.coeff);
    for (const auto& t : b.terms)
        buckets[{t.row, t.col, t.shift}].push_back([f = t.coeff, cb](const QVec& q) { return cb * f(q); });
    return detail::from_buckets(a.dim, a.N, a.hbar, std::move(buckets));
}

inline DifferenceOperator scale(const DifferenceOperator& a, cplx c) {
    DifferenceOperator out{a.dim, a.N, a.hbar, {}};
    for (const auto& t : a.terms)
        out.terms.push_back({t.row, t.col, t.shift, [f = t.coeff, c](const QVec& q) { return c * f(q); }});
    return out;
}

/// Left-multiply by a plain function of q (no shift).
inline DifferenceOperator scale_fn(const DifferenceOperator& a, CoeffFn g) {
    DifferenceOperator out{a.dim, a.N, a.hbar, {}};
    for (const auto& t : a.terms)
        out.terms.push_back({t.row, t.col, t.shift, [f = t.coeff, g](const QVec& q) { return g(q) * f(q); }});
    return out;
}

/// Lift a dense matrix-valued function of q into a zero-shift operator.
inline DifferenceOperator lift_matrix(int dim, int N, cplx hbar, std::function<CMatrix(const QVec&)> fn) {
    auto memo = std::make_shared<detail::MatMemo>();
    memo->fn = std::move(fn);
    DifferenceOperator out{dim, N, hbar, {}};
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            out.terms.push_back({r, c, ShiftVec(N, 0), [memo, r, c](const QVec& q) { return memo->eval(q)(r, c); }});
    return out;
}

/// Embed an N x N operator into slot `slot` of a 2-slot space.
inline DifferenceOperator lift_slot2(const DifferenceOperator& a, int slot) {
    if (a.dim != a.N) throw std::invalid_argument("lift_slot2: expects a one-slot operator");
    const int N = a.N;
    DifferenceOperator out{N * N, N, a.hbar, {}};
    for (const auto& t : a.terms)
        for (int b = 0; b < N; ++b) {
            int r = slot == 1 ? t.row * N + b : b * N + t.row;
            int c = slot == 1 ? t.col * N + b : b * N + t.col;
            out.terms.push_back({r, c, t.shift, t.coeff});
        }
    return out;
}

/// Trace over all matrix slots: scalar operator (dim 1).
inline DifferenceOperator trace_op(const DifferenceOperator& a) {
    std::map<detail::TermKey, std::vector<CoeffFn>> buckets;
    for (const auto& t : a.terms)
        if (t.row == t.col) buckets[{0, 0, t.shift}].push_back(t.coeff);
    return detail::from_buckets(1, a.N, a.hbar, std::move(buckets));
}

/// Max coefficient discrepancy between canonical forms at the supplied
/// q-points, over the union of (row, col, shift) keys, normalized by the
/// largest coefficient magnitude seen.
inline double op_residual(const DifferenceOperator& a, const DifferenceOperator& b, const std::vector<QVec>& q_samples) {
    if (a.dim != b.dim || a.N != b.N) throw std::invalid_argument("op_residual: shape mismatch");
    std::map<detail::TermKey, std::pair<const CoeffFn*, const CoeffFn*>> keys;
    for (const auto& t : a.terms) keys[{t.row, t.col, t.shift}].first = &t.coeff;
    for (const auto& t : b.terms) keys[{t.row, t.col, t.shift}].second = &t.coeff;
    double worst = 0.0, scale = 0.0;
    for (const auto& q : q_samples)
        for (const auto& [key, fns] : keys) {
            cplx va = fns.first ? (*fns.first)(q) : cplx(0.0);
            cplx vb = fns.second ? (*fns.second)(q) : cplx(0.0);
            worst = std::max(worst, std::abs(va - vb));
            scale = std::max(scale, std::max(std::abs(va), std::abs(vb)));
        }
    return worst / (scale + 1.0);
}

/// Evaluate the operator against a finite list of q-points as a dense matrix
/// of coefficients per shift; used by the CLI dump.
struct OpDump {
    struct Entry {
        int row, col;
        ShiftVec shift;
        std::vector<cplx> samples;
    };
    std::vector<Entry> entries;
};

inline OpDump dump_operator(const DifferenceOperator& a, const std::vector<QVec>& q_samples) {
    OpDump d;
    for (const auto& t : a.terms) {
        OpDump::Entry e{t.row, t.col, t.shift, {}};
        for (const auto& q : q_samples) e.samples.push_back(t.coeff(q));
        d.entries.push_back(std::move(e));
    }
    return d;
}

}  // namespace dynrmat
