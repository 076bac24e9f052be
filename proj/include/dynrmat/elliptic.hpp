#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dynrmat/complex_util.hpp"

namespace dynrmat {

/// Evaluation context for all special functions on the torus with periods
/// 1 and tau.  Immutable after construction; cheap to copy; safe to share
/// across threads.
///
/// The odd Jacobi theta function used throughout is
///   theta(z) = -sum_n exp[2 pi i (z+1/2)(n+1/2) + i pi tau (n+1/2)^2],
/// all other functions (sigma, zeta, wp, Phi) are derived from it.
struct EllipticContext {
    cplx tau;
    double tol = 1e-12;
    double pole_threshold = 1e-3;
    int n_max = 0;            // series half-width, derived from tol
    cplx p{};                 // nome e^{2 pi i tau}
    cplx th1{};               // theta'(0)
    cplx th3{};               // theta'''(0)
    cplx zeta_half{};         // zeta(1/2) = -theta'''(0) / (6 theta'(0))
    cplx eta{};               // Dedekind eta(tau)

    EllipticContext() : EllipticContext(cplx(0.0, 1.0)) {}

    explicit EllipticContext(cplx tau_, double tol_ = 1e-12, double pole_threshold_ = 1e-3)
        : tau(tau_), tol(tol_), pole_threshold(pole_threshold_) {
        if (!(tau.imag() > 0.0)) throw std::invalid_argument("EllipticContext: Im tau must be positive");
        if (!(tol > 0.0)) throw std::invalid_argument("EllipticContext: tol must be positive");
        p = std::exp(2.0 * pi * iu * tau);
        // theta terms decay like |p|^{n^2/2}; first dropped term below tol.
        n_max = static_cast<int>(std::ceil(std::sqrt(-std::log(tol) / (pi * tau.imag())))) + 2;
        th1 = theta_d(cplx(0.0), 1);
        th3 = theta_d(cplx(0.0), 3);
        zeta_half = -th3 / (6.0 * th1);
        eta = compute_eta();
    }

    // k-th z-derivative of theta, term-wise differentiated series.  The
    // summation window is recentred on the dominant term so the policy stays
    // accurate for any Im z, not just the fundamental cell.
    cplx theta_d(cplx z, int k) const {
        const double centre = -z.imag() / tau.imag();  // maximizes |term| over n+1/2
        const int c = static_cast<int>(std::lround(centre - 0.5));
        cplx sum = 0.0;
        for (int n = c - n_max - 1; n <= c + n_max + 1; ++n) {
            const cplx h(n + 0.5, 0.0);
            cplx term = std::exp(2.0 * pi * iu * (z + 0.5) * h + iu * pi * tau * h * h);
            if (k > 0) {
                cplx d = 2.0 * pi * iu * h;
                for (int j = 0; j < k; ++j) term *= d;
            }
            sum += term;
        }
        return -sum;
    }

  private:
    cplx compute_eta() const {
        const double lp = std::abs(p);
        int m_max = lp > 0.0 ? static_cast<int>(std::ceil(std::log(tol) / std::log(lp))) + 1 : 1;
        cplx prod = 1.0;
        cplx pm = 1.0;
        for (int m = 1; m <= m_max; ++m) {
            pm *= p;
            prod *= (1.0 - pm);
        }
        return std::exp(2.0 * pi * iu * tau / 24.0) * prod;
    }
};

inline cplx theta(cplx z, const EllipticContext& ctx) { return ctx.theta_d(z, 0); }
inline cplx theta_prime(cplx z, const EllipticContext& ctx) { return ctx.theta_d(z, 1); }
inline cplx theta_prime_prime(cplx z, const EllipticContext& ctx) { return ctx.theta_d(z, 2); }

/// theta with characteristic j on the level-N lattice:
///   theta_j(z) = sum_{n in N/2 - j + N Z} exp 2 pi i [ n(z+1/2) + n^2 tau / (2N) ].
inline cplx theta_char(int j, cplx z, int N, const EllipticContext& ctx) {
    if (j < 1) throw std::invalid_argument("theta_char: j must be >= 1");
    // Indices j and j+N sum over the same lattice.
    const double base = 0.5 * N - static_cast<double>(((j - 1) % N) + 1);
    // Dominant n for |exp| is n* = -N Im z / Im tau; recentre k accordingly.
    const double nstar = -static_cast<double>(N) * z.imag() / ctx.tau.imag();
    const int kc = static_cast<int>(std::lround((nstar - base) / N));
    const int W = ctx.n_max + 2;
    cplx sum = 0.0;
    for (int k = kc - W; k <= kc + W; ++k) {
        const cplx n(base + static_cast<double>(N) * k, 0.0);
        sum += std::exp(2.0 * pi * iu * (n * (z + 0.5) + n * n * ctx.tau / (2.0 * static_cast<double>(N))));
    }
    return sum;
}

inline cplx dedekind_eta(const EllipticContext& ctx) { return ctx.eta; }

namespace detail {
inline void require_off_lattice(cplx z, const EllipticContext& ctx, const char* who) {
    if (lattice_distance(z, ctx.tau) < ctx.pole_threshold) throw pole_error(who);
}
}  // namespace detail

/// Logarithmic derivative theta'(z)/theta(z); the regular part of Phi(eps, z)
/// at eps -> 0.  Odd, simple pole at each lattice point.
inline cplx phi_reg(cplx z, const EllipticContext& ctx) {
    detail::require_off_lattice(z, ctx, "phi_reg: argument on lattice");
    return ctx.theta_d(z, 1) / ctx.theta_d(z, 0);
}

// d/dz of phi_reg = theta''/theta - (theta'/theta)^2.
inline cplx phi_reg_deriv(cplx z, const EllipticContext& ctx) {
    detail::require_off_lattice(z, ctx, "phi_reg_deriv: argument on lattice");
    cplx t0 = ctx.theta_d(z, 0), t1 = ctx.theta_d(z, 1), t2 = ctx.theta_d(z, 2);
    cplx u = t1 / t0;
    return t2 / t0 - u * u;
}

/// The elliptic kernel Phi(z,s) = theta'(0) theta(z+s) / (theta(z) theta(s)).
/// Symmetric in (z,s); residue 1 at s = 0 (and z = 0).
inline cplx phi(cplx z, cplx s, const EllipticContext& ctx) {
    detail::require_off_lattice(z, ctx, "phi: z on lattice");
    detail::require_off_lattice(s, ctx, "phi: s on lattice");
    return ctx.th1 * ctx.theta_d(z + s, 0) / (ctx.theta_d(z, 0) * ctx.theta_d(s, 0));
}

/// Same kernel without the theta'(0) normalization; used where a formula is
/// transcribed verbatim in the theta(z+s)/(theta(z)theta(s)) convention.
inline cplx phi_mero(cplx z, cplx s, const EllipticContext& ctx) {
    detail::require_off_lattice(z, ctx, "phi_mero: z on lattice");
    detail::require_off_lattice(s, ctx, "phi_mero: s on lattice");
    return ctx.theta_d(z + s, 0) / (ctx.theta_d(z, 0) * ctx.theta_d(s, 0));
}

inline cplx phi_dz(cplx z, cplx s, const EllipticContext& ctx) {
    return phi(z, s, ctx) * (phi_reg(z + s, ctx) - phi_reg(z, ctx));
}

inline cplx phi_ds(cplx z, cplx s, const EllipticContext& ctx) {
    return phi(z, s, ctx) * (phi_reg(z + s, ctx) - phi_reg(s, ctx));
}

/// Weierstrass P-function, from log-derivatives of theta:
///   wp(z) = (theta'/theta)^2(z) - theta''(z)/theta(z) + theta'''(0)/(3 theta'(0)).
inline cplx weierstrass_p(cplx z, const EllipticContext& ctx) {
    detail::require_off_lattice(z, ctx, "weierstrass_p: argument on lattice");
    cplx t0 = ctx.theta_d(z, 0), t1 = ctx.theta_d(z, 1), t2 = ctx.theta_d(z, 2);
    cplx u = t1 / t0;
    return u * u - t2 / t0 + ctx.th3 / (3.0 * ctx.th1);
}

/// Weierstrass sigma, via theta(z) = theta'(0) e^{-zeta(1/2) z^2} sigma(z).
inline cplx sigma(cplx z, const EllipticContext& ctx) {
    return ctx.theta_d(z, 0) / ctx.th1 * std::exp(ctx.zeta_half * z * z);
}

/// Weierstrass zeta = d/dz log sigma.
inline cplx zeta_w(cplx z, const EllipticContext& ctx) {
    detail::require_off_lattice(z, ctx, "zeta_w: argument on lattice");
    return phi_reg(z, ctx) + 2.0 * ctx.zeta_half * z;
}

/// Scalar normalization of the quantum R-matrix:
///   f(d) = sqrt(wp(hbar) - wp(d)),   d = z - w,
/// principal branch per d value (all verified relations evaluate f at equal
/// spectral differences, so one branch per d is consistent; R(-hbar) flips
/// the sign explicitly).
inline cplx f_norm(cplx d, cplx hbar, const EllipticContext& ctx) {
    return std::sqrt(weierstrass_p(hbar, ctx) - weierstrass_p(d, ctx));
}

}  // namespace dynrmat
