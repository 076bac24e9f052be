// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances and runtime budgets are pinned here, not configurable.

#include <chrono>
#include <cstdio>

#include "dynrmat/runner.hpp"

using namespace dynrmat;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int criterion, bool ok, const std::string& text) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, text.c_str());
    if (!ok) ++failures;
}

const RelationResult* find(const Report& r, const std::string& id) {
    for (const auto& x : r.relations)
        if (x.id == id) return &x;
    return nullptr;
}

bool rel_ok(const Report& r, const std::string& id, double tol) {
    const auto* x = find(r, id);
    return x && x->pass && x->tol <= tol;
}

std::string res_str(const Report& r, const std::string& id) {
    const auto* x = find(r, id);
    if (!x) return id + "=missing";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s=%.2e", id.c_str(), x->max_residual);
    return buf;
}

double run_suite(const char* suite, Report& out) {
    SampleConfig cfg;
    cfg.suites = {suite};
    auto t0 = clock_type::now();
    out = run(cfg);
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main() {
    Report ell, cls, qm, face, op, ctl;
    double t_ell = run_suite("elliptic", ell);
    double t_cls = run_suite("classical", cls);
    double t_qm = run_suite("quantum", qm);
    double t_face = run_suite("face", face);
    double t_op = run_suite("operator", op);
    double t_ctl = run_suite("controls", ctl);

    // 1. basic kernel identity sweep: 100 samples, < 1e-10, < 1 s
    {
        bool ok = true;
        std::string detail;
        for (const char* id : {"AB_THIRD", "AB_LIM", "AB_CUB", "AB_WP", "AB_DERIV"}) {
            const auto* x = find(ell, id);
            ok = ok && x && x->pass && x->max_residual < 1e-10 && x->samples_used >= 100;
            detail += res_str(ell, id) + " ";
        }
        ok = ok && t_ell < 1.0;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "(%.2fs)", t_ell);
        line(1, ok, "kernel identity suite " + detail + buf);
    }

    // 2. classical suite, N in {2,3,4}, 50 samples, < 1e-10, < 20 s
    {
        bool ok = t_cls < 20.0;
        std::string detail;
        for (const char* id : {"CYB_BOLD", "JCR_BOLD", "JRCR_BOLD", "RDER", "CHRR", "RCHRD", "RER", "RF_SUM", "CGNF"}) {
            const auto* x = find(cls, id);
            ok = ok && x && x->pass && x->max_residual < 1e-10;
            detail += res_str(cls, id) + " ";
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "(%.1fs)", t_cls);
        line(2, ok, "classical suite " + detail + buf);
    }

    // 3. quantum suite, N in {2,3,4}, < 30 s
    {
        bool ok = t_qm < 30.0;
        ok = ok && rel_ok(qm, "UNIT", 1e-10) && rel_ok(qm, "QYB", 1e-10) && rel_ok(qm, "MIN", 1e-11) &&
             rel_ok(qm, "RRC", 1e-10) && rel_ok(qm, "RRCRC", 1e-10) && rel_ok(qm, "TWIST", 1e-10) &&
             rel_ok(qm, "GNF", 1e-10) && rel_ok(qm, "WZ", 1e-12) && rel_ok(qm, "GG", 1e-10) &&
             rel_ok(qm, "RFCHR", 1e-10);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "quantum suite %s %s %s %s (%.1fs)", res_str(qm, "QYB").c_str(),
                      res_str(qm, "WZ").c_str(), res_str(qm, "GG").c_str(), res_str(qm, "RFCHR").c_str(), t_qm);
        line(3, ok, buf);
    }

    // 4. semiclassical slope in [0.4, 0.6] at hbar = 1e-2 for all three pairs
    {
        const auto* x = find(qm, "SEMI");
        bool ok = x && x->pass && x->max_residual <= 0.1;
        line(4, ok, "semiclassical slopes " + res_str(qm, "SEMI") + " (band half-width 0.1)");
    }

    // 5. operator algebra at N in {2,3}: LQ to 1e-12, LF/LOP/LFF to 1e-8, < 60 s
    {
        bool ok = t_op < 60.0 && rel_ok(op, "LQ", 1e-12) && rel_ok(op, "LF", 1e-8) && rel_ok(op, "LOP", 1e-8) &&
                  rel_ok(op, "LFF", 1e-8);
        char buf[192];
        std::snprintf(buf, sizeof(buf), "operator algebra %s %s %s %s (%.1fs)", res_str(op, "LQ").c_str(),
                      res_str(op, "LF").c_str(), res_str(op, "LOP").c_str(), res_str(op, "LFF").c_str(), t_op);
        line(5, ok, buf);
    }

    // 6. commuting family and trace lemma to 1e-9
    {
        bool ok = rel_ok(op, "CF", 1e-9) && rel_ok(op, "TRACE_LEMMA", 1e-9);
        line(6, ok, "commuting family " + res_str(op, "CF") + " " + res_str(op, "TRACE_LEMMA"));
    }

    // 7. face/vertex suite at N in {2,3}
    {
        bool ok = rel_ok(face, "ORT", 1e-11) && rel_ok(face, "IDEN", 1e-9) && rel_ok(face, "RB_PROPS", 1e-9) &&
                  rel_ok(face, "RB_QYBE", 1e-9) && rel_ok(face, "RLL_LHAT", 1e-9) && rel_ok(face, "RLL_GAUGE", 1e-9) &&
                  rel_ok(face, "EQUIV_PROP", 1e-8);
        line(7, ok,
             "face/vertex suite " + res_str(face, "ORT") + " " + res_str(face, "IDEN") + " " +
                 res_str(face, "RB_QYBE") + " " + res_str(face, "RLL_LHAT") + " " + res_str(face, "EQUIV_PROP"));
    }

    // 8. face-form components equal the scaled expansion; collapsing identity
    {
        bool ok = rel_ok(op, "LLH", 1e-8) && rel_ok(op, "DELTA_DECOMP", 1e-10);
        line(8, ok, "face-form components " + res_str(op, "LLH") + " " + res_str(op, "DELTA_DECOMP"));
    }

    // 9. determinism and negative controls
    {
        SampleConfig cfg;
        cfg.suites = {"elliptic"};
        cfg.samples = 10;
        std::string r1 = report_to_json(run(cfg));
        std::string r2 = report_to_json(run(cfg));
        bool ok = (r1 == r2) && rel_ok(ctl, "NEG_GAMMA", 1e-4) && rel_ok(ctl, "NEG_RB_IDENTITY", 1e-4);
        line(9, ok,
             std::string("determinism ") + (r1 == r2 ? "byte-identical" : "MISMATCH") + ", controls " +
                 res_str(ctl, "NEG_GAMMA") + " " + res_str(ctl, "NEG_RB_IDENTITY"));
    }

    // 10. the full default sweep finishes within the runtime budget
    {
        double total = t_ell + t_cls + t_qm + t_face + t_op + t_ctl;
        bool ok = total < 180.0;
        bool suites_pass = ell.all_pass && cls.all_pass && qm.all_pass && face.all_pass && op.all_pass && ctl.all_pass;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "full sweep %s in %.1fs (budget 180s)", suites_pass ? "passes" : "HAS FAILURES",
                      total);
        line(10, ok && suites_pass, buf);
    }

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
