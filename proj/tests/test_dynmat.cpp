#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrmat/dynmat.hpp"
#include "dynrmat/sampling.hpp"

using namespace dynrmat;

namespace {
const EllipticContext ctx(cplx(0.31, 1.27));
const cplx hb(0.17, 0.03);
}  // namespace

TEST_CASE("embed: permutation operator squares to identity") {
    for (int N : {2, 3}) {
        CMatrix c2 = embed(permutation_C(N), 1, 2, 2, N);
        CHECK(residual(c2 * c2, CMatrix::identity(N * N)) < 1e-15);
    }
}

TEST_CASE("embed with swapped slots equals permutation conjugation") {
    Rng rng(21);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    CMatrix m = r_classical(draw_spectral(rng, ctx), draw_spectral(rng, ctx), q, ctx);
    CMatrix lhs = embed(m, 2, 1, 2, N);
    CMatrix c = permutation_C(N);
    CHECK(residual(lhs, c * embed(m, 1, 2, 2, N) * c) < 1e-15);
}

TEST_CASE("embed r into slots (1,3) of 3 against brute-force index bookkeeping") {
    Rng rng(22);
    int N = 2;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx);
    CMatrix r = r_classical(z, w, q, ctx);
    CMatrix got = embed(r, 1, 3, 3, N);
    // independent bookkeeping: flat = i1*4 + i2*2 + i3
    for (int i1 = 0; i1 < N; ++i1)
        for (int i2 = 0; i2 < N; ++i2)
            for (int i3 = 0; i3 < N; ++i3)
                for (int j1 = 0; j1 < N; ++j1)
                    for (int j2 = 0; j2 < N; ++j2)
                        for (int j3 = 0; j3 < N; ++j3) {
                            cplx want = (i2 == j2) ? r(i1 * N + i3, j1 * N + j3) : cplx(0.0);
                            CHECK(std::abs(got(i1 * 4 + i2 * 2 + i3, j1 * 4 + j2 * 2 + j3) - want) == 0.0);
                        }
}

TEST_CASE("conj_P: inverse shifts restore, constants unchanged") {
    Rng rng(23);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx);
    auto build = [&](const QVec& qq) { return embed(rbar_quantum(hb, z, qq, ctx), 1, 2, 3, N); };
    auto once = [&](const QVec& qq) { return conj_P(build, 3, +1, 3, N, qq, hb); };
    CMatrix back = conj_P(once, 3, -1, 3, N, q, hb);
    CHECK(residual(back, build(q)) < 1e-12);

    auto constant = [&](const QVec&) { return CMatrix::identity(N * N * N); };
    CHECK(residual(conj_P(constant, 2, +1, 3, N, q, hb), CMatrix::identity(N * N * N)) < 1e-15);
}

TEST_CASE("conj_P against a hand-expanded 8x8 block matrix at N=2") {
    Rng rng(24);
    int N = 2;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx);
    auto build = [&](const QVec& qq) { return embed(rbar_quantum(hb, z, qq, ctx), 1, 2, 3, N); };
    CMatrix got = conj_P(build, 3, +1, 3, N, q, hb);
    // hand expansion: slot-3 diagonal blocks with q -> q - hbar e_j
    CMatrix want(8, 8);
    for (int j3 = 0; j3 < N; ++j3) {
        QVec qs = q;
        qs[j3] -= hb;
        CMatrix rb = rbar_quantum(hb, z, qs, ctx);
        for (int i1 = 0; i1 < N; ++i1)
            for (int i2 = 0; i2 < N; ++i2)
                for (int j1 = 0; j1 < N; ++j1)
                    for (int j2 = 0; j2 < N; ++j2)
                        want(i1 * 4 + i2 * 2 + j3, j1 * 4 + j2 * 2 + j3) = rb(i1 * N + i2, j1 * N + j2);
    }
    CHECK(residual(got, want) < 1e-15);
}

TEST_CASE("conj_P refuses matrices that mix the conjugated slot") {
    int N = 2;
    QVec q{cplx(0.1), cplx(-0.2)};
    auto mixer = [&](const QVec&) {
        CMatrix m = CMatrix::identity(8);
        m(0, 1) = 1.0;  // mixes slot 3
        return m;
    };
    CHECK_THROWS_AS(conj_P(mixer, 3, +1, 3, N, q, hb), std::invalid_argument);
}

TEST_CASE("q_derivative_slot: zero on constants, finite-difference oracle") {
    Rng rng(25);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx);
    CMatrix zero = q_derivative_slot([&](int) { return CMatrix(27, 27); }, 3, 3, N);
    CHECK(zero.norm_inf() == 0.0);

    CMatrix analytic =
        q_derivative_slot([&](int m) { return embed(rbar_classical_dq(m, z, q, ctx), 1, 2, 3, N); }, 3, 3, N);
    const double h = 1e-5;
    CMatrix fd = q_derivative_slot(
        [&](int m) {
            QVec qp = q, qm = q;
            qp[m] += h;
            qm[m] -= h;
            CMatrix d = embed(rbar_classical(z, qp, ctx), 1, 2, 3, N);
            d -= embed(rbar_classical(z, qm, ctx), 1, 2, 3, N);
            d *= 1.0 / (2.0 * h);
            return d;
        },
        3, 3, N);
    CHECK(residual(analytic, fd) < 1e-6);
}

TEST_CASE("rbar derivative at N=2: only the spectral-kernel entries survive") {
    // d/dq_m rbar has no contribution from the diagonal -u(z) entries.
    Rng rng(26);
    int N = 2;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx);
    for (int m = 0; m < N; ++m) {
        CMatrix d = rbar_classical_dq(m, z, q, ctx);
        for (int i = 0; i < N; ++i) CHECK(std::abs(d(i * N + i, i * N + i)) == 0.0);
        // off-diagonal entries match the explicit kernel partials
        double sgn = (m == 0) ? 1.0 : -1.0;
        cplx q01 = q[0] - q[1];
        CHECK(std::abs(d(0 * N + 1, 0 * N + 1) - sgn * phi_reg_deriv(q01, ctx)) < 1e-12);
        CHECK(std::abs(d(0 * N + 1, 1 * N + 1) + sgn * phi_ds(z, q01, ctx)) < 1e-12);
    }
}

TEST_CASE("residual: reflexivity and scaling lower bound") {
    Rng rng(27);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    CMatrix m = r_classical(draw_spectral(rng, ctx), draw_spectral(rng, ctx), q, ctx);
    CHECK(residual(m, m) == 0.0);
    CMatrix two = m;
    two *= 2.0;
    if (m.norm_inf() > 10.0) CHECK(residual(m, two) > 0.2);
}

TEST_CASE("every constructor is invariant under uniform coordinate shifts") {
    Rng rng(28);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    QVec qs = q;
    for (auto& v : qs) v += cplx(0.173, -0.041);
    cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx);
    CHECK(residual(r_classical(z, w, q, ctx), r_classical(z, w, qs, ctx)) < 1e-12);
    CHECK(residual(bold_r(z, w, q, ctx), bold_r(z, w, qs, ctx)) < 1e-12);
    CHECK(residual(bold_rbar(z, q, ctx), bold_rbar(z, qs, ctx)) < 1e-12);
    CHECK(residual(quantum_R(hb, z, w, q, ctx), quantum_R(hb, z, w, qs, ctx)) < 1e-12);
    CHECK(residual(rbar_quantum(hb, z, q, ctx), rbar_quantum(hb, z, qs, ctx)) < 1e-12);
    CHECK(residual(felder_RF(hb, z - w, q, ctx), felder_RF(hb, z - w, qs, ctx)) < 1e-12);
}

TEST_CASE("lu_solve: round trip and singularity detection") {
    Rng rng(29);
    int n = 5;
    CMatrix a(n, n), b(n, 2);
    for (auto& v : a.d) v = cplx(rng.in(-1, 1), rng.in(-1, 1));
    for (auto& v : b.d) v = cplx(rng.in(-1, 1), rng.in(-1, 1));
    CMatrix x = lu_solve(a, b);
    CHECK(residual(a * x, b) < 1e-12);
    CMatrix sing(2, 2);
    sing(0, 0) = 1.0;
    sing(0, 1) = 2.0;
    sing(1, 0) = 2.0;
    sing(1, 1) = 4.0;
    CHECK_THROWS_AS(lu_solve(sing, CMatrix::identity(2)), degenerate_error);
}
