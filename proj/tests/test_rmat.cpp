#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrmat/relations.hpp"

using namespace dynrmat;

namespace {
const EllipticContext ctx(cplx(0.31, 1.27));
const cplx hb(0.17, 0.03);
}  // namespace

TEST_CASE("r and bold r are skew-symmetric") {
    Rng rng(31);
    for (int N : {2, 3}) {
        auto q = draw_q(rng, N, ctx);
        cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx);
        CMatrix a = r_classical(z, w, q, ctx);
        CMatrix b = swap_slots(r_classical(w, z, q, ctx), N);
        CHECK(residual(a, cplx(-1.0) * b) < 1e-13);
        CMatrix ba = bold_r(z, w, q, ctx);
        CMatrix bb = swap_slots(bold_r(w, z, q, ctx), N);
        CHECK(residual(ba, cplx(-1.0) * bb) < 1e-13);
    }
}

TEST_CASE("quantum R at N=2 against the longhand entry table") {
    Rng rng(32);
    int N = 2;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx);
    cplx q01 = q[0] - q[1], q10 = -q01;
    auto u = [&](cplx x) { return phi_reg(x, ctx); };
    cplx D = u(hb) + u(z - w) - u(z + hb) + u(w);
    CMatrix want(4, 4);
    want(0, 0) = D;
    want(3, 3) = D;
    want(1, 1) = phi(hb, q01, ctx);
    want(2, 2) = phi(hb, q10, ctx);
    want(1, 2) = phi(z - w, q01, ctx);
    want(2, 1) = phi(z - w, q10, ctx);
    want(1, 3) = -phi(z + hb, q01, ctx);
    want(2, 0) = -phi(z + hb, q10, ctx);
    want(2, 3) = phi(w, q01, ctx);
    want(1, 0) = phi(w, q10, ctx);
    CHECK(residual(quantum_R_hat(hb, z, w, q, ctx), want) < 1e-14);
}

TEST_CASE("Rbar inverse closes: product is the identity") {
    Rng rng(33);
    for (int N : {2, 3, 4}) {
        auto q = draw_q(rng, N, ctx);
        cplx z = draw_spectral(rng, ctx);
        CMatrix prod = rbar_quantum(hb, z, q, ctx) * rbar_quantum_inv(hb, z, q, ctx);
        CHECK(residual(prod, CMatrix::identity(N * N)) < 1e-10);
    }
}

TEST_CASE("Rbar and its inverse have the triangular index pattern") {
    Rng rng(34);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx);
    for (const CMatrix& m : {rbar_quantum(hb, z, q, ctx), rbar_quantum_inv(hb, z, q, ctx)}) {
        for (int r1 = 0; r1 < N; ++r1)
            for (int r2 = 0; r2 < N; ++r2)
                for (int c1 = 0; c1 < N; ++c1)
                    for (int c2 = 0; c2 < N; ++c2) {
                        // only E_ii ox E_jj and E_ij ox E_jj patterns occur
                        bool allowed = (r2 == c2) && (r1 == c1 || c1 == c2);
                        if (!allowed) CHECK(std::abs(m(r1 * N + r2, c1 * N + c2)) == 0.0);
                    }
    }
}

TEST_CASE("Felder R depends on the spectral difference only") {
    Rng rng(35);
    int N = 3;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx), c(0.21, -0.07);
    CMatrix a = swap_slots(rbar_quantum(hb, w, q, ctx), N) * quantum_R(hb, z, w, q, ctx) *
                rbar_quantum_inv(hb, z, q, ctx);
    CMatrix b = swap_slots(rbar_quantum(hb, w + c, q, ctx), N) * quantum_R(hb, z + c, w + c, q, ctx) *
                rbar_quantum_inv(hb, z + c, q, ctx);
    CHECK(residual(a, b) < 1e-12);
}

TEST_CASE("normalization scalar ties to the kernel product") {
    Rng rng(36);
    cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx);
    cplx f = f_norm(z - w, hb, ctx);
    cplx prod = phi(hb, z - w, ctx) * phi(hb, -(z - w), ctx);
    CHECK(std::abs(f * f - prod) < 1e-11 * (1.0 + std::abs(prod)));
}

TEST_CASE("unitarity of R as a residual example") {
    Rng rng(37);
    rel::Env env{&ctx, 3, hb, cplx(0.23, -0.05)};
    CHECK(rel::unit(env, rng) < 1e-10);
}

TEST_CASE("identity twist leaves the triple untouched") {
    Rng rng(38);
    int N = 2;
    auto q = draw_q(rng, N, ctx);
    cplx z = draw_spectral(rng, ctx), w = draw_spectral(rng, ctx);
    CMatrix R = quantum_R(hb, z, w, q, ctx);
    CHECK(residual(twist_R(R, 0.0, 0.0, 0.0, q), R) < 1e-15);
    CMatrix Rb = rbar_quantum(hb, z, q, ctx);
    CHECK(residual(twist_Rbar(Rb, 0.0, 0.0, hb, q), Rb) < 1e-15);
    CMatrix RF = felder_RF(hb, z - w, q, ctx);
    CHECK(residual(twist_RF(RF, 0.0, 0.0, 0.0, hb, q), RF) < 1e-15);
}

TEST_CASE("semiclassical slope sits in the first-order band") {
    Rng rng(39);
    rel::Env env{&ctx, 2, hb, cplx(0.23, -0.05)};
    CHECK(rel::semi(env, rng) < 0.1);
}

TEST_CASE("relation samplers at a smoke-test level") {
    rel::Env env2{&ctx, 2, hb, cplx(0.23, -0.05)};
    Rng rng(40);
    CHECK(rel::qyb(env2, rng) < 1e-11);
    CHECK(rel::gg(env2, rng) < 1e-11);
    CHECK(rel::rf_sum(env2, rng) < 1e-11);
    CHECK(rel::cgnf(env2, rng) < 1e-11);
    CHECK(rel::wz(env2, rng) < 1e-13);
}
