#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrmat/elliptic.hpp"
#include "dynrmat/matrix.hpp"
#include "dynrmat/sampling.hpp"

using namespace dynrmat;

namespace {

const EllipticContext ctx_i(cplx(0.0, 1.0));
const EllipticContext ctx(cplx(0.31, 1.27));
// loose pole guard for limit-style oracles that probe close to the lattice
const EllipticContext ctx_limit(cplx(0.31, 1.27), 1e-12, 1e-9);

// Independent oracle: Jacobi triple product for the odd theta function,
// nome q = e^{i pi tau}, cutoff 200.
cplx theta_triple_product(cplx z, cplx tau) {
    cplx q = std::exp(iu * pi * tau);
    cplx out = 2.0 * std::pow(q, 0.25) * std::sin(pi * z);
    for (int m = 1; m <= 200; ++m) {
        cplx q2m = std::pow(q, 2.0 * m);
        out *= (1.0 - q2m) * (1.0 - 2.0 * q2m * std::cos(2.0 * pi * z) + q2m * q2m);
    }
    return out;
}

}  // namespace

TEST_CASE("theta is odd and vanishes at the origin") {
    CHECK(std::abs(theta(cplx(0.0), ctx_i)) < 1e-12);
    Rng rng(7);
    for (int k = 0; k < 10; ++k) {
        cplx z = draw_spectral(rng, ctx);
        CHECK(std::abs(theta(-z, ctx) + theta(z, ctx)) < 1e-12 * (1.0 + std::abs(theta(z, ctx))));
    }
}

TEST_CASE("theta against the triple-product oracle") {
    CHECK(std::abs(theta(cplx(0.3), ctx_i) - theta_triple_product(cplx(0.3), ctx_i.tau)) < 1e-12);
    Rng rng(8);
    for (int k = 0; k < 5; ++k) {
        cplx z = draw_spectral(rng, ctx);
        cplx want = theta_triple_product(z, ctx.tau);
        CHECK(std::abs(theta(z, ctx) - want) < 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("theta quasi-periodicity") {
    cplx z(0.23, 0.11);
    CHECK(std::abs(theta(z + 1.0, ctx) + theta(z, ctx)) < 1e-13);
    cplx want = -std::exp(-iu * pi * ctx.tau - 2.0 * pi * iu * z) * theta(z, ctx);
    CHECK(std::abs(theta(z + ctx.tau, ctx) - want) < 1e-12 * std::abs(want));
}

TEST_CASE("theta derivatives: parity, limits, finite differences") {
    Rng rng(9);
    cplx z = draw_spectral(rng, ctx);
    CHECK(std::abs(theta_prime(-z, ctx) - theta_prime(z, ctx)) < 1e-12 * std::abs(theta_prime(z, ctx)));
    CHECK(std::abs(ctx.th1) > 0.1);
    // theta(eps)/eps approaches theta'(0) quadratically; the eps^2 term is
    // |zeta(1/2) theta'(0)| eps^2, a few times 1e-8 here
    cplx eps(1e-4, 0.0);
    CHECK(std::abs(theta(eps, ctx) / eps - ctx.th1) < 1e-7);
    CHECK(std::abs(theta(eps * 0.1, ctx) / (eps * 0.1) - ctx.th1) < 1e-9);
    for (int k = 0; k < 20; ++k) {
        cplx zz = draw_spectral(rng, ctx);
        const double h = 1e-5;
        cplx fd = (theta(zz + h, ctx) - theta(zz - h, ctx)) / (2.0 * h);
        CHECK(std::abs(theta_prime(zz, ctx) - fd) / std::abs(fd) < 1e-6);
    }
}

TEST_CASE("theta_char: lattice periodicity and direct-sum oracle") {
    int N = 2, j = 1;
    cplx z(0.2, 0.0);
    CHECK(std::abs(theta_char(j, z, N, ctx_i) - theta_char(j + N, z, N, ctx_i)) < 1e-13);
    cplx brute = 0.0;
    for (int n = -100; n <= 100; ++n) {
        cplx nn(N / 2.0 - j + N * n, 0.0);
        brute += std::exp(2.0 * pi * iu * (nn * (z + 0.5) + nn * nn * ctx_i.tau / (2.0 * cplx(N))));
    }
    CHECK(std::abs(theta_char(j, z, N, ctx_i) - brute) < 1e-12);
}

TEST_CASE("theta_char matrix at generic points is invertible") {
    Rng rng(11);
    for (int N : {2, 3}) {
        cplx z = draw_spectral(rng, ctx);
        std::vector<cplx> v(N);
        for (auto& x : v) x = draw_spectral(rng, ctx);
        CMatrix m(N, N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) m(a, b) = theta_char(a + 1, z / static_cast<double>(N) - v[b], N, ctx);
        CMatrix minv = inverse(m);  // throws if singular to working precision
        CHECK(residual(m * minv, CMatrix::identity(N)) < 1e-11);
    }
}

TEST_CASE("Dedekind eta: positivity, classical value at tau = i") {
    CHECK(std::abs(dedekind_eta(ctx)) > 0.0);
    // Gamma(1/4) / (2 pi^{3/4})
    const double gamma_quarter = 3.6256099082219083119;
    double want = gamma_quarter / (2.0 * std::pow(pi, 0.75));
    CHECK(std::abs(dedekind_eta(ctx_i) - want) < 1e-6);
    CHECK(std::abs(dedekind_eta(ctx_i).imag()) < 1e-12);
}

TEST_CASE("phi: symmetry, residue, wp identity") {
    Rng rng(12);
    cplx z = draw_spectral(rng, ctx), s = draw_spectral(rng, ctx);
    CHECK(std::abs(phi(z, s, ctx) - phi(s, z, ctx)) < 1e-12 * std::abs(phi(z, s, ctx)));
    cplx tiny(1e-5, 0.0);
    CHECK(std::abs(tiny * phi(z, tiny, ctx_limit) - 1.0) < 1e-4);
    for (int k = 0; k < 50; ++k) {
        cplx zz = draw_spectral(rng, ctx), ss = draw_spectral(rng, ctx);
        cplx lhs = phi(zz, ss, ctx) * phi(zz, -ss, ctx);
        cplx rhs = weierstrass_p(zz, ctx) - weierstrass_p(ss, ctx);
        CHECK(std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0) < 1e-10);
    }
}

TEST_CASE("phi_reg: parity, limit oracle, coinciding-point identity") {
    Rng rng(13);
    cplx s = draw_spectral(rng, ctx);
    CHECK(std::abs(phi_reg(-s, ctx) + phi_reg(s, ctx)) < 1e-11 * (1.0 + std::abs(phi_reg(s, ctx))));
    cplx eps(1e-5, 0.0);
    CHECK(std::abs(phi(eps, s, ctx_limit) - 1e5 - phi_reg(s, ctx)) < 1e-4);
    for (int k = 0; k < 20; ++k) {
        cplx z = draw_spectral(rng, ctx), x = draw_spectral(rng, ctx), y = draw_spectral(rng, ctx);
        cplx lhs = phi(z, x, ctx) * phi(z, y, ctx);
        cplx rhs = phi(z, x + y, ctx) * (phi_reg(z, ctx) + phi_reg(x, ctx) + phi_reg(y, ctx) - phi_reg(z + x + y, ctx));
        CHECK(std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0) < 1e-10);
    }
}

TEST_CASE("weierstrass functions: parity, sigma limit, lattice-sum oracle") {
    Rng rng(14);
    cplx z = draw_spectral(rng, ctx);
    CHECK(std::abs(weierstrass_p(-z, ctx) - weierstrass_p(z, ctx)) < 1e-11 * std::abs(weierstrass_p(z, ctx)));
    cplx eps(1e-5, 0.0);
    CHECK(std::abs(sigma(eps, ctx) / eps - 1.0) < 1e-6);
    // truncated symmetric lattice sum
    cplx zz(0.21, 0.13);
    cplx acc = 1.0 / (zz * zz);
    for (int m = -60; m <= 60; ++m)
        for (int n = -60; n <= 60; ++n) {
            if (m == 0 && n == 0) continue;
            cplx om = cplx(m) + cplx(n) * ctx.tau;
            acc += 1.0 / ((zz - om) * (zz - om)) - 1.0 / (om * om);
        }
    CHECK(std::abs(weierstrass_p(zz, ctx) - acc) / std::abs(acc) < 1e-6);
    // zeta is the log-derivative of sigma
    const double h = 1e-6;
    cplx fd = (sigma(z + h, ctx) - sigma(z - h, ctx)) / (2.0 * h * sigma(z, ctx));
    CHECK(std::abs(zeta_w(z, ctx) - fd) < 1e-5 * (1.0 + std::abs(fd)));
}

TEST_CASE("derivative exchange relation and kernel homogeneity") {
    Rng rng(15);
    for (int k = 0; k < 20; ++k) {
        cplx z = draw_spectral(rng, ctx), s = draw_spectral(rng, ctx);
        cplx lhs = phi_dz(z, s, ctx);
        cplx rhs = phi_ds(z, s, ctx) - (phi_reg(z, ctx) - phi_reg(s, ctx)) * phi(z, s, ctx);
        CHECK(std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0) < 1e-12);
    }
    // the addition identity holds for both kernel normalizations
    cplx a(0.13, 0.21), b(-0.09, 0.17), x(0.23, -0.12), y(0.31, 0.08);
    for (bool mero : {false, true}) {
        auto ph = [&](cplx u, cplx v) { return mero ? phi_mero(u, v, ctx) : phi(u, v, ctx); };
        cplx lhs = ph(a, x) * ph(b, y);
        cplx rhs = ph(a, x - y) * ph(a + b, y) + ph(a + b, x) * ph(b, y - x);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
    }
}

TEST_CASE("partials match central finite differences") {
    Rng rng(16);
    for (int k = 0; k < 20; ++k) {
        cplx z = draw_spectral(rng, ctx), s = draw_spectral(rng, ctx);
        const double h = 1e-5;
        cplx fdz = (phi(z + h, s, ctx) - phi(z - h, s, ctx)) / (2.0 * h);
        cplx fds = (phi(z, s + h, ctx) - phi(z, s - h, ctx)) / (2.0 * h);
        CHECK(std::abs(phi_dz(z, s, ctx) - fdz) / (std::abs(fdz) + 1.0) < 1e-6);
        CHECK(std::abs(phi_ds(z, s, ctx) - fds) / (std::abs(fds) + 1.0) < 1e-6);
    }
}

TEST_CASE("doubling the truncation order changes nothing") {
    EllipticContext wide = ctx;
    wide.n_max *= 2;
    Rng rng(17);
    for (int k = 0; k < 10; ++k) {
        cplx z = draw_spectral(rng, ctx);
        CHECK(std::abs(ctx.theta_d(z, 0) - wide.theta_d(z, 0)) < 1e-12 * (1.0 + std::abs(wide.theta_d(z, 0))));
        CHECK(std::abs(ctx.theta_d(z, 2) - wide.theta_d(z, 2)) < 1e-11 * (1.0 + std::abs(wide.theta_d(z, 2))));
    }
}

TEST_CASE("error paths: bad context and pole rejection") {
    CHECK_THROWS_AS(EllipticContext(cplx(0.3, -1.0)), std::invalid_argument);
    CHECK_THROWS_AS(EllipticContext(cplx(0.3, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(phi(cplx(1e-9, 0.0), cplx(0.3, 0.1), ctx), pole_error);
    CHECK_THROWS_AS(phi_reg(ctx.tau, ctx), pole_error);
    CHECK_THROWS_AS(weierstrass_p(cplx(1.0, 0.0) + ctx.tau, ctx), pole_error);
}
