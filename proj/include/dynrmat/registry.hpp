#pragma once

// The relation registry: one entry per verified identity, carrying its
// stable id, suite, tolerance, N sweep, and a per-sample residual evaluator.
// Ids are the strings accepted by `verify --relations ...`.

#include "dynrmat/llh.hpp"
#include "dynrmat/relations.hpp"

namespace dynrmat {

struct RelationDef {
    std::string id;
    std::string suite;
    std::string what;
    double tol;
    std::vector<int> Ns;
    int samples_override = 0;  // 0: use config.samples
    bool negative = false;     // pass iff residual > tol (defect detector)
    std::function<double(const rel::Env&, Rng&)> fn;
};

namespace reg {

inline OpEnv openv(const rel::Env& e) { return OpEnv{e.c, e.N, e.hbar, e.gamma}; }

// ---- elliptic suite --------------------------------------------------------

inline double ab_third(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    cplx x = draw_spectral(rng, c), y = draw_spectral(rng, c);
    cplx lhs = phi(z, x, c) * phi(w, y, c);
    cplx rhs = phi(z, x - y, c) * phi(z + w, y, c) + phi(z + w, x, c) * phi(w, y - x, c);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

// same identity, kernel without the theta'(0) factor: the relation is
// homogeneous in the kernel, so the normalization cannot matter
inline double ab_third_mero(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    cplx x = draw_spectral(rng, c), y = draw_spectral(rng, c);
    cplx lhs = phi_mero(z, x, c) * phi_mero(w, y, c);
    cplx rhs = phi_mero(z, x - y, c) * phi_mero(z + w, y, c) + phi_mero(z + w, x, c) * phi_mero(w, y - x, c);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

inline double ab_lim(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c), x = draw_spectral(rng, c), y = draw_spectral(rng, c);
    cplx lhs = phi(z, x, c) * phi(z, y, c);
    cplx rhs = phi(z, x + y, c) * (phi_reg(z, c) + phi_reg(x, c) + phi_reg(y, c) - phi_reg(z + x + y, c));
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

inline double ab_cub(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    cplx x = draw_spectral(rng, c), y = draw_spectral(rng, c);
    cplx a = draw_spectral(rng, c), b = draw_spectral(rng, c);
    cplx lhs = phi(z - w, a - b, c) * phi(z, x + b, c) * phi(w, y + a, c) -
               phi(z - w, x - y, c) * phi(z, y + a, c) * phi(w, x + b, c);
    cplx rhs = phi(z, x + a, c) * phi(w, y + b, c) *
               (phi_reg(a - b, c) + phi_reg(x + b, c) - phi_reg(x - y, c) - phi_reg(a + y, c));
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

inline double ab_wp(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c), s = draw_spectral(rng, c);
    cplx lhs = phi(z, s, c) * phi(z, -s, c);
    cplx rhs = weierstrass_p(z, c) - weierstrass_p(s, c);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

inline double ab_deriv(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c), s = draw_spectral(rng, c);
    cplx lhs = phi_dz(z, s, c);
    cplx rhs = phi_ds(z, s, c) - (phi_reg(z, c) - phi_reg(s, c)) * phi(z, s, c);
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
}

inline double theta_qp(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    cplx z = draw_spectral(rng, c);
    cplx t = theta(z, c);
    double r1 = std::abs(theta(z + 1.0, c) + t) / (std::abs(t) + 1.0);
    cplx qp = -std::exp(-iu * pi * c.tau - 2.0 * pi * iu * z) * t;
    double r2 = std::abs(theta(z + c.tau, c) - qp) / (std::abs(qp) + 1.0);
    return std::max(r1, r2);
}

inline double partials_fd(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    const double h = 1e-5;
    // finite differences need points well clear of the poles, where the
    // third derivative stays moderate
    auto draw_far = [&](double floor_dist) {
        for (;;) {
            cplx z = draw_spectral(rng, c);
            if (lattice_distance(z, c.tau) > floor_dist) return z;
        }
    };
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        cplx z = draw_far(0.08), s = draw_far(0.08);
        if (lattice_distance(z + s, c.tau) < 0.08) {
            --k;
            continue;
        }
        cplx fd = (theta(z + h, c) - theta(z - h, c)) / (2.0 * h);
        worst = std::max(worst, std::abs(theta_prime(z, c) - fd) / (std::abs(fd) + 1.0));
        cplx fdz = (phi(z + h, s, c) - phi(z - h, s, c)) / (2.0 * h);
        worst = std::max(worst, std::abs(phi_dz(z, s, c) - fdz) / (std::abs(fdz) + 1.0));
        cplx fds = (phi(z, s + h, c) - phi(z, s - h, c)) / (2.0 * h);
        worst = std::max(worst, std::abs(phi_ds(z, s, c) - fds) / (std::abs(fds) + 1.0));
    }
    return worst;
}

inline double truncation(const rel::Env& e, Rng& rng) {
    EllipticContext wide = *e.c;
    wide.n_max *= 2;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        cplx z = draw_spectral(rng, *e.c);
        cplx a = e.c->theta_d(z, 0), b = wide.theta_d(z, 0);
        worst = std::max(worst, std::abs(a - b) / (std::abs(b) + 1.0));
    }
    return worst;
}

// ---- face suite ------------------------------------------------------------

inline double ort(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q = draw_q(rng, e.N, c);
    cplx z = draw_spectral(rng, c);
    auto iv = intertwiner(z, q, c);
    CMatrix one = CMatrix::identity(e.N);
    return std::max(residual(iv.Minv * iv.M, one), residual(iv.M * iv.Minv, one));
}

inline double iden(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q = draw_q(rng, e.N, c);
    auto qp = draw_q(rng, e.N, c);
    cplx z = draw_spectral(rng, c);
    return check_iden(z, q, qp, c);
}

inline double weig(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q = draw_q(rng, e.N, c);
    cplx z = draw_spectral(rng, c);
    cplx qij = q[0] - q[1 % e.N];
    double worst = 0.0;
    // closed forms against direct theta ratios
    worst = std::max(worst, std::abs(face_weight(FaceCase::DIAG, z, 0.0, e.hbar, c) -
                                     theta(z + e.hbar, c) / theta(e.hbar, c)));
    worst = std::max(worst, std::abs(face_weight(FaceCase::CROSS, z, qij, e.hbar, c) -
                                     theta(-z + qij, c) / theta(qij, c)));
    worst = std::max(worst, std::abs(face_weight(FaceCase::MIX, z, qij, e.hbar, c) -
                                     theta(z, c) * theta(e.hbar + qij, c) / (theta(e.hbar, c) * theta(qij, c))));
    // z = 0 specials
    worst = std::max(worst, std::abs(face_weight(FaceCase::DIAG, 0.0, 0.0, e.hbar, c) - 1.0));
    worst = std::max(worst, std::abs(face_weight(FaceCase::CROSS, 0.0, qij, e.hbar, c) - 1.0));
    worst = std::max(worst, std::abs(face_weight(FaceCase::MIX, 0.0, qij, e.hbar, c)));
    return worst;
}

inline double rint_dual(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q = draw_q(rng, e.N, c);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    CMatrix RB = belavin_R(z, w, e.hbar, q, c);
    return check_dual(RB, z, w, e.hbar, q, c);
}

inline double rb_props(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q1 = draw_q(rng, e.N, c), q2 = draw_q(rng, e.N, c);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    cplx shift(rng.in(-0.2, 0.2), rng.in(-0.2, 0.2));
    CMatrix a = belavin_R(z, w, e.hbar, q1, c);
    CMatrix b = belavin_R(z, w, e.hbar, q2, c);
    CMatrix d = belavin_R(z + shift, w + shift, e.hbar, q1, c);
    return std::max(residual(a, b), residual(a, d));
}

inline double rb_qybe(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q = draw_q(rng, e.N, c);
    cplx z1 = draw_spectral(rng, c), z2 = draw_spectral(rng, c), z3 = draw_spectral(rng, c);
    CMatrix r12 = belavin_R(z1, z2, e.hbar, q, c);
    CMatrix r13 = belavin_R(z1, z3, e.hbar, q, c);
    CMatrix r23 = belavin_R(z2, z3, e.hbar, q, c);
    CMatrix lhs = embed(r12, 1, 2, 3, e.N) * embed(r13, 1, 3, 3, e.N) * embed(r23, 2, 3, 3, e.N);
    CMatrix rhs = embed(r23, 2, 3, 3, e.N) * embed(r13, 1, 3, 3, e.N) * embed(r12, 1, 2, 3, e.N);
    return residual(lhs, rhs);
}

inline double rb_pattern(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    const int N = e.N;
    auto q = draw_q(rng, N, c);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    CMatrix RB = belavin_R(z, w, e.hbar, q, c);
    double off = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int ip = 0; ip < N; ++ip)
                for (int jp = 0; jp < N; ++jp)
                    if ((i + j) % N != (ip + jp) % N) off = std::max(off, std::abs(RB(ip * N + jp, i * N + j)));
    return off / (RB.norm_inf() + 1.0);
}

inline double rb_inversion(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    auto q = draw_q(rng, e.N, c);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    CMatrix prod = belavin_R(z, w, e.hbar, q, c) * swap_slots(belavin_R(w, z, e.hbar, q, c), e.N);
    cplx kappa = 0.0;
    for (int d = 0; d < prod.rows; ++d) kappa += prod(d, d);
    kappa /= static_cast<double>(prod.rows);
    if (std::abs(kappa) < 1e-12) throw degenerate_error("rb_inversion: vanishing proportionality scalar");
    CMatrix target = CMatrix::identity(prod.rows);
    target *= kappa;
    return residual(prod, target);
}

inline double rll_lhat(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    QVec probe = draw_q(rng, e.N, c);
    CMatrix RB = belavin_R(z, w, e.hbar, probe, c);
    return check_RLL(Lhat_op(z, oe), Lhat_op(w, oe), RB, oe, qs);
}

inline double rll_gauge(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    QVec probe = draw_q(rng, e.N, c);
    CMatrix RB = belavin_R(z, w, e.hbar, probe, c);
    DifferenceOperator gz = gauge_map_op(L_RS_op(z, oe), z, oe);
    DifferenceOperator gw = gauge_map_op(L_RS_op(w, oe), w, oe);
    return check_RLL(gz, gw, RB, oe, qs);
}

inline double equiv_prop(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c);
    return proportionality_spread(gauge_map_op(L_RS_op(z, oe), z, oe), Lhat_op(z, oe), qs);
}

inline double tl_closed(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c);
    return op_residual(Ltilde_contracted_op(z, oe), Ltilde_closed_op(z, oe), qs);
}

// ---- operator suite --------------------------------------------------------

inline double lq(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c);
    return check_LQ(L_RS_op(z, oe), oe, qs);
}

inline double lf(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    return check_LF(L_RS_op(z, oe), L_RS_op(w, oe), z, w, oe, qs);
}

inline double lop(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    return check_Lop(L_RS_op(z, oe), L_RS_op(w, oe), z, w, oe, qs);
}

inline double lff(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    DifferenceOperator Lz = L_RS_op(z, oe), Lw = L_RS_op(w, oe);
    double r1 = check_LFF_transcription(Lz, Lw, z, w, oe, qs);
    double r2 = check_LFF_algebra(Lz, Lw, z, w, oe, qs);
    return std::max(r1, r2);
}

inline double form(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx w = draw_spectral(rng, c);
    cplx alpha(rng.in(-0.5, 0.5), rng.in(-0.5, 0.5));
    return check_form(L_RS_op(w, oe), alpha, oe, qs);
}

inline double quasiper(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c);
    return check_quasi_periodicity(z, oe, qs);
}

inline double shift_lemma(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    cplx z = draw_spectral(rng, c);
    return check_shift_lemma(z, oe, draw_q(rng, e.N, c));
}

inline double qq_rel(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    DifferenceOperator Lz = L_RS_op(z, oe), Lw = L_RS_op(w, oe);
    DifferenceOperator Tz = qq_transform_op(Lz, oe, true), Tw = qq_transform_op(Lw, oe, true);
    double r1 = op_residual(qq_transform_op(Tz, oe, false), Lz, qs);
    double r2 = check_LF(Tz, Tw, z, w, oe, qs);
    return std::max(r1, r2);
}

inline double cf(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    double worst = check_commuting_family(z, w, oe, qs);
    // I_1(z) factors as Phi(z, gamma) * (z-independent operator)
    DifferenceOperator i1z = family_Ik(1, z, oe), i1w = family_Ik(1, w, oe);
    cplx ratio = phi(z, e.gamma, c) / phi(w, e.gamma, c);
    worst = std::max(worst, op_residual(i1z, scale(i1w, ratio), qs));
    return worst;
}

inline double trace_lemma(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    return check_trace_lemma(L_RS_op(z, oe), L_RS_op(w, oe), z, oe, qs);
}

inline double llh(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 6);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    double r1 = check_LLH_factor(z, w, oe, qs);
    double r2 = check_delta_decomposition(qs[0], e.hbar, c);
    return std::max(r1, r2);
}

inline double delta_decomp(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    return check_delta_decomposition(draw_q(rng, e.N, c), e.hbar, c);
}

inline double llh_printed_rhs(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 4);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    return check_LLH_printed_rhs(z, w, oe, qs);
}

inline double homogeneity(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    return check_LF(L_RS_op(z, oe, 3.7), L_RS_op(w, oe, 3.7), z, w, oe, qs);
}

// Trigonometric degeneration of the coupling coefficients: at large Im tau
// and small coordinates, gamma^{N-1} b_j tracks prod (q_aj+gamma)/q_aj.
inline double b_trend(const rel::Env& e, Rng& rng) {
    EllipticContext degen(cplx(0.31, 8.0), e.c->tol, 1e-6);
    const int N = e.N;
    QVec q(N);
    for (int k = 0; k < N; ++k) q[k] = cplx(rng.in(0.02, 0.04) + 0.06 * k, rng.in(-0.005, 0.005));
    cplx gamma(rng.in(0.02, 0.04), rng.in(-0.005, 0.005));
    double worst = 0.0;
    for (int j = 0; j < N; ++j) {
        cplx b = b_coeff(j, gamma, q, degen);
        for (int n = 1; n < N; ++n) b *= gamma;
        cplx rat = 1.0;
        for (int a = 0; a < N; ++a)
            if (a != j) rat *= (q[a] - q[j] + gamma) / (q[a] - q[j]);
        worst = std::max(worst, std::abs(b / rat - 1.0));
    }
    return worst;
}

// ---- negative controls -----------------------------------------------------

inline double neg_gamma(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    OpEnv oe_bad = oe;
    oe_bad.gamma += 1e-3;
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    DifferenceOperator lhs = compose(compose(compose(lift_R12(z, w, oe), lift_slot2(L_RS_op(z, oe), 1)),
                                             lift_Rbar21(w, oe)),
                                     lift_slot2(L_RS_op(w, oe), 2));
    DifferenceOperator rhs = compose(compose(compose(lift_slot2(L_RS_op(w, oe_bad), 2), lift_Rbar12(z, oe)),
                                             lift_slot2(L_RS_op(z, oe_bad), 1)),
                                     lift_RF12(z - w, oe));
    return op_residual(lhs, rhs, qs);
}

inline double neg_rb_identity(const rel::Env& e, Rng& rng) {
    const auto& c = *e.c;
    OpEnv oe = openv(e);
    auto qs = draw_q_samples(rng, e.N, c, 8);
    cplx z = draw_spectral(rng, c), w = draw_spectral(rng, c);
    return check_RLL(Lhat_op(z, oe), Lhat_op(w, oe), CMatrix::identity(e.N * e.N), oe, qs);
}

}  // namespace reg

inline std::vector<RelationDef> make_registry() {
    using F = std::function<double(const rel::Env&, Rng&)>;
    std::vector<RelationDef> defs;
    auto addf = [&](std::string id, std::string suite, std::string what, double tol, std::vector<int> Ns, int samples,
                    bool negative, F fn) {
        defs.push_back({std::move(id), std::move(suite), std::move(what), tol, std::move(Ns), samples, negative,
                        std::move(fn)});
    };
    const std::vector<int> n234{2, 3, 4}, n23{2, 3}, n2{2}, n3{3}, n34{3, 4};

    // elliptic
    addf("AB_THIRD", "elliptic", "three-term kernel addition identity", 1e-10, n2, 100, false, reg::ab_third);
    addf("AB_HOMOG", "elliptic", "addition identity, unnormalized kernel", 1e-10, n2, 100, false, reg::ab_third_mero);
    addf("AB_LIM", "elliptic", "coinciding-point limit identity", 1e-10, n2, 100, false, reg::ab_lim);
    addf("AB_CUB", "elliptic", "cubic kernel identity", 1e-10, n2, 100, false, reg::ab_cub);
    addf("AB_WP", "elliptic", "kernel product equals wp difference", 1e-10, n2, 100, false, reg::ab_wp);
    addf("AB_DERIV", "elliptic", "kernel derivative exchange relation", 1e-9, n2, 100, false, reg::ab_deriv);
    addf("THETA_QP", "elliptic", "theta quasi-periodicity", 1e-12, n2, 50, false, reg::theta_qp);
    addf("PARTIALS_FD", "elliptic", "analytic partials vs central differences", 1e-6, n2, 5, false, reg::partials_fd);
    addf("TRUNCATION", "elliptic", "series stable under doubled cutoff", 1e-12, n2, 5, false, reg::truncation);

    // classical
    addf("CYB_BOLD", "classical", "classical Yang-Baxter equation, bold r", 1e-10, n234, 0, false, rel::cyb_bold);
    addf("JCR_BOLD", "classical", "quadratic bracket equation, bold rbar", 1e-10, n234, 0, false, rel::jcr_bold);
    addf("JRCR_BOLD", "classical", "mixed bracket equation, bold pair", 1e-10, n234, 0, false, rel::jrcr_bold);
    addf("RDER", "classical", "derivative-modified CYBE for r", 1e-10, n234, 0, false, rel::rder);
    addf("CHRR", "classical", "derivative-modified rbar equation", 1e-10, n234, 0, false, rel::chrr);
    addf("RCHRD", "classical", "derivative-modified mixed equation", 1e-10, n234, 0, false, rel::rchrd);
    addf("RER", "classical", "first-order-operator CYBE, expanded", 1e-10, n234, 0, false, rel::rer);
    addf("RF_SUM", "classical", "Felder r as r + rbar difference", 1e-10, n234, 0, false, rel::rf_sum);
    addf("CGNF", "classical", "classical dynamical Yang-Baxter equation", 1e-10, n234, 0, false, rel::cgnf);

    // quantum
    addf("UNIT", "quantum", "unitarity of R", 1e-10, n234, 0, false, rel::unit);
    addf("QYB", "quantum", "shifted quantum Yang-Baxter equation", 1e-10, n234, 0, false, rel::qyb);
    addf("MIN", "quantum", "R at negated quantization parameter", 1e-11, n234, 0, false, rel::min_rel);
    addf("RRC", "quantum", "Rbar compatibility with shifts", 1e-10, n234, 0, false, rel::rrc);
    addf("RRCRC", "quantum", "mixed R/Rbar compatibility", 1e-10, n234, 0, false, rel::rrcrc);
    addf("TWIST", "quantum", "twist construction matches Felder R", 1e-10, n234, 0, false, rel::twist);
    addf("GNF", "quantum", "dynamical Yang-Baxter equation for Felder R", 1e-10, n234, 0, false, rel::gnf);
    addf("WZ", "quantum", "weight-zero condition", 1e-12, n234, 0, false, rel::wz);
    addf("GG", "quantum", "R factorization through Felder R", 1e-10, n234, 0, false, rel::gg);
    addf("RFCHR", "quantum", "Felder R / Rbar exchange relation", 1e-10, n234, 0, false, rel::rfchr);
    addf("SEMI", "quantum", "first-order semiclassical slope", 0.1, n23, 10, false, rel::semi);
    addf("TR_GNF", "quantum", "twist-transformed Felder R satisfies GNF", 1e-10, n23, 0, false, rel::tr_gnf);
    addf("TR_RRCRC", "quantum", "twist-transformed triple, shifted relation", 1e-10, n23, 0, false, rel::tr_rrcrc);
    addf("TR_CONJ", "quantum", "twist-transformed unitarity/twist/factorization", 1e-10, n23, 0, false,
         rel::tr_unit_twist_gg);

    // face
    addf("ORT", "face", "intertwiner orthogonality", 1e-11, n23, 0, false, reg::ort);
    addf("IDEN", "face", "height-summed intertwiner identity", 1e-9, n23, 0, false, reg::iden);
    addf("WEIG", "face", "Boltzmann weight closed forms", 1e-12, n23, 0, false, reg::weig);
    addf("RINT_DUAL", "face", "dual intertwining relation", 1e-10, n23, 20, false, reg::rint_dual);
    addf("RB_PROPS", "face", "vertex R-matrix height and shift independence", 1e-9, n23, 20, false, reg::rb_props);
    addf("RB_QYBE", "face", "vertex R-matrix Yang-Baxter equation", 1e-9, n23, 20, false, reg::rb_qybe);
    addf("RB_PATTERN", "face", "vertex R-matrix eight-vertex zero pattern", 1e-12, n2, 20, false, reg::rb_pattern);
    addf("RB_PATTERN_ZN", "face", "vertex R-matrix charge conservation pattern", 1e-11, n3, 20, false,
         reg::rb_pattern);
    addf("RB_INVERSION", "face", "vertex R-matrix inversion proportionality", 1e-9, n23, 20, false, reg::rb_inversion);
    addf("RLL_LHAT", "face", "RLL exchange for the face-gauge L", 1e-9, n23, 3, false, reg::rll_lhat);
    addf("RLL_GAUGE", "face", "RLL exchange for the gauge-mapped L", 1e-9, n23, 3, false, reg::rll_gauge);
    addf("EQUIV_PROP", "face", "gauge image proportional to face-gauge L", 1e-8, n23, 3, false, reg::equiv_prop);
    addf("TL_CLOSED", "face", "contracted L equals closed form", 1e-9, n23, 5, false, reg::tl_closed);

    // operator
    addf("LQ", "operator", "coordinate commutator with L", 1e-12, n23, 4, false, reg::lq);
    addf("LF", "operator", "quadratic L exchange algebra", 1e-8, n23, 4, false, reg::lf);
    addf("LOP", "operator", "L exchange algebra, twist spelled out", 1e-8, n23, 4, false, reg::lop);
    addf("LFF", "operator", "component expansion: transcription and algebra", 1e-8, n23, 4, false, reg::lff);
    addf("FORM", "operator", "exponential-coordinate exchange formula", 1e-10, n23, 4, false, reg::form);
    addf("QUASIPER", "operator", "L-operator quasi-periodicity", 1e-9, n23, 4, false, reg::quasiper);
    addf("SHIFT_LEMMA", "operator", "integer vs weight-space shifts", 1e-12, n23, 4, false, reg::shift_lemma);
    addf("QQ", "operator", "canonical momentum transform keeps the algebra", 1e-9, n23, 3, false, reg::qq_rel);
    addf("CF", "operator", "commuting family of normal-ordered minors", 1e-9, n23, 3, false, reg::cf);
    addf("TRACE_LEMMA", "operator", "trace factorization lemma", 1e-9, n23, 3, false, reg::trace_lemma);
    addf("LLH", "operator", "face-form components equal scaled expansion", 1e-8, n2, 2, false, reg::llh);
    addf("DELTA_DECOMP", "operator", "height-sum collapsing theta-ratio identity", 1e-10, n34, 20, false,
         reg::delta_decomp);
    addf("LLH_PRINTED_RHS", "operator", "verbatim printed face-form rhs (documented discrepancy)", 1e-4, n2, 2, true,
         reg::llh_printed_rhs);
    addf("HOMOGENEITY", "operator", "exchange algebra invariant under L rescale", 1e-8, n23, 2, false,
         reg::homogeneity);
    addf("B_TREND", "operator", "trigonometric degeneration of couplings", 0.05, n23, 4, false, reg::b_trend);

    // controls
    addf("NEG_GAMMA", "controls", "perturbed coupling must break the algebra", 1e-4, n2, 2, true, reg::neg_gamma);
    addf("NEG_RB_IDENTITY", "controls", "identity vertex matrix must break RLL", 1e-4, n23, 2, true,
         reg::neg_rb_identity);
    return defs;
}

}  // namespace dynrmat
