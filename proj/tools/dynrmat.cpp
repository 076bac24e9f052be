// dynrmat: verification harness and evaluator for the elliptic
// Ruijsenaars-Schneider dynamical R-matrix family.
//
//   dynrmat verify [--config cfg.json] [--suite S] [--relations A,B] [--json out.json]
//   dynrmat eval --object R --N 2 --tau 0.31+1.27i --hbar 0.17+0.03i --z 0.4 --w 0.1
//   dynrmat family --N 3 --z 0.4 [--json out.json]
//
// Complex arguments use a+bi syntax; reports and dumps are JSON with complex
// numbers as [re, im] pairs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynrmat/oprel.hpp"
#include "dynrmat/runner.hpp"

using namespace dynrmat;
using nlohmann::json;

namespace {

cplx json_complex(const json& j) {
    if (j.is_array() && j.size() == 2) return cplx(j[0].get<double>(), j[1].get<double>());
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw std::invalid_argument("expected complex as [re, im], number, or \"a+bi\"");
}

SampleConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j = json::parse(in);
    SampleConfig c;
    if (j.contains("N")) c.N = j["N"].get<int>();
    if (j.contains("tau")) c.tau = json_complex(j["tau"]);
    if (j.contains("hbar")) c.hbar = json_complex(j["hbar"]);
    if (j.contains("gamma")) c.gamma = json_complex(j["gamma"]);
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("pole_threshold")) c.pole_threshold = j["pole_threshold"].get<double>();
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
    if (j.contains("relations")) c.relations = j["relations"].get<std::vector<std::string>>();
    return c;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string matrix_json(const CMatrix& m) {
    std::string s = "[";
    for (int r = 0; r < m.rows; ++r) {
        if (r) s += ",";
        s += "[";
        for (int c = 0; c < m.cols; ++c) {
            if (c) s += ",";
            s += fmt17(m(r, c));
        }
        s += "]";
    }
    return s + "]";
}

std::string qvec_json(const QVec& q) {
    std::string s = "[";
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k) s += ",";
        s += fmt17(q[k]);
    }
    return s + "]";
}

std::string operator_json(const DifferenceOperator& op, const std::vector<QVec>& qpts) {
    OpDump d = dump_operator(op, qpts);
    std::string s = "{\"dim\":" + std::to_string(op.dim) + ",\"q_points\":[";
    for (std::size_t k = 0; k < qpts.size(); ++k) {
        if (k) s += ",";
        s += qvec_json(qpts[k]);
    }
    s += "],\"terms\":[";
    for (std::size_t k = 0; k < d.entries.size(); ++k) {
        const auto& t = d.entries[k];
        if (k) s += ",";
        s += "{\"row\":" + std::to_string(t.row) + ",\"col\":" + std::to_string(t.col) + ",\"shift\":[";
        for (std::size_t m = 0; m < t.shift.size(); ++m) {
            if (m) s += ",";
            s += std::to_string(t.shift[m]);
        }
        s += "],\"coeff\":[";
        for (std::size_t m = 0; m < t.samples.size(); ++m) {
            if (m) s += ",";
            s += fmt17(t.samples[m]);
        }
        s += "]}";
    }
    return s + "]}";
}

struct EvalArgs {
    std::string object;
    int N = 3;
    std::string tau = "0.31+1.27i", hbar = "0.17+0.03i", gamma = "0.23-0.05i";
    std::string z = "0.4", w = "0.1", s = "0.25", d, qlist;
    int k = 1;
    int char_j = 1;
    std::uint64_t seed = 20170831;
};

int run_eval(const EvalArgs& a) {
    EllipticContext ctx(parse_complex(a.tau));
    cplx hbar = parse_complex(a.hbar), gamma = parse_complex(a.gamma);
    cplx z = parse_complex(a.z), w = parse_complex(a.w), sarg = parse_complex(a.s);
    QVec q;
    if (!a.qlist.empty())
        for (const auto& t : split_list(a.qlist)) q.push_back(parse_complex(t));
    else {
        Rng rng = stream_for(a.seed, "eval_q", 0);
        q = draw_q(rng, a.N, ctx);
    }
    if (static_cast<int>(q.size()) != a.N) throw std::invalid_argument("--q must supply N entries");
    OpEnv oe{&ctx, a.N, hbar, gamma};
    std::vector<QVec> qpts;
    {
        Rng rng = stream_for(a.seed, "eval_qpts", 0);
        for (int i = 0; i < 8; ++i) qpts.push_back(draw_q(rng, a.N, ctx));
    }
    const std::string& id = a.object;
    std::string body;
    if (id == "theta")
        body = fmt17(theta(z, ctx));
    else if (id == "theta_prime")
        body = fmt17(theta_prime(z, ctx));
    else if (id == "theta_char")
        body = fmt17(theta_char(a.char_j, z, a.N, ctx));
    else if (id == "phi")
        body = fmt17(phi(z, sarg, ctx));
    else if (id == "phi_reg")
        body = fmt17(phi_reg(z, ctx));
    else if (id == "wp")
        body = fmt17(weierstrass_p(z, ctx));
    else if (id == "sigma")
        body = fmt17(sigma(z, ctx));
    else if (id == "zeta")
        body = fmt17(zeta_w(z, ctx));
    else if (id == "eta")
        body = fmt17(dedekind_eta(ctx));
    else if (id == "r")
        body = matrix_json(r_classical(z, w, q, ctx));
    else if (id == "rbar")
        body = matrix_json(rbar_classical(z, q, ctx));
    else if (id == "bold_r")
        body = matrix_json(bold_r(z, w, q, ctx));
    else if (id == "rF")
        body = matrix_json(rF_classical(z - w, q, ctx));
    else if (id == "s_matrix")
        body = matrix_json(s_matrix(z, q, ctx));
    else if (id == "R")
        body = matrix_json(quantum_R(hbar, z, w, q, ctx));
    else if (id == "Rbar")
        body = matrix_json(rbar_quantum(hbar, z, q, ctx));
    else if (id == "Rbar_inv")
        body = matrix_json(rbar_quantum_inv(hbar, z, q, ctx));
    else if (id == "RF")
        body = matrix_json(felder_RF(hbar, z - w, q, ctx));
    else if (id == "RB") {
        cplx zz = z, ww = w;
        if (!a.d.empty()) {
            zz = parse_complex(a.d);
            ww = 0.0;
        }
        body = matrix_json(belavin_R(zz, ww, hbar, q, ctx));
    } else if (id == "L_RS")
        body = operator_json(L_RS_op(z, oe), qpts);
    else if (id == "Lhat")
        body = operator_json(Lhat_op(z, oe), qpts);
    else if (id == "Ltilde")
        body = operator_json(Ltilde_closed_op(z, oe), qpts);
    else if (id == "I_k")
        body = operator_json(family_Ik(a.k, z, oe), qpts);
    else {
        std::cerr << "unknown object id: " << id << "\n";
        return 2;
    }
    std::cout << "{\"object\":\"" << id << "\",\"q\":" << qvec_json(q) << ",\"value\":" << body << "}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic Ruijsenaars-Schneider dynamical R-matrix verifier"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run identity suites and report residuals");
    std::string cfg_path, suite_arg, relations_arg, json_out;
    std::string v_tau, v_hbar, v_gamma;
    int v_samples = -1, v_N = -1;
    std::uint64_t v_seed = 0;
    bool v_have_seed = false;
    double v_tol = -1.0, v_pole = -1.0;
    verify->add_option("--config", cfg_path, "JSON config file");
    verify->add_option("--suite", suite_arg, "suite filter: elliptic,classical,quantum,face,operator,controls,all");
    verify->add_option("--relations", relations_arg, "comma-separated relation ids");
    verify->add_option("--json", json_out, "write the JSON report to this file");
    verify->add_option("--tau", v_tau, "modulus, a+bi");
    verify->add_option("--hbar", v_hbar, "quantization parameter, a+bi");
    verify->add_option("--gamma", v_gamma, "coupling constant, a+bi");
    verify->add_option("--samples", v_samples, "sample count for matrix suites");
    verify->add_option("--seed", v_seed, "RNG seed")->each([&](const std::string&) { v_have_seed = true; });
    verify->add_option("--tol", v_tol, "override tolerance for non-control relations");
    verify->add_option("--pole-threshold", v_pole, "lattice-distance rejection threshold");
    verify->add_option("--N", v_N, "(recorded in config echo; suites sweep their own N)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one named object and dump it as JSON");
    EvalArgs ea;
    eval->add_option("--object,--fn,--matrix", ea.object, "object id")->required();
    eval->add_option("--N", ea.N, "dimension");
    eval->add_option("--tau", ea.tau, "modulus, a+bi");
    eval->add_option("--hbar", ea.hbar, "quantization parameter, a+bi");
    eval->add_option("--gamma", ea.gamma, "coupling constant, a+bi");
    eval->add_option("--z", ea.z, "first spectral parameter, a+bi");
    eval->add_option("--w", ea.w, "second spectral parameter, a+bi");
    eval->add_option("--s", ea.s, "second kernel argument, a+bi");
    eval->add_option("--d", ea.d, "spectral difference for RB, a+bi");
    eval->add_option("--q", ea.qlist, "comma-separated coordinates (default: seeded draw)");
    eval->add_option("--k", ea.k, "which commuting-family member");
    eval->add_option("--j", ea.char_j, "theta characteristic index");
    eval->add_option("--seed", ea.seed, "seed for the default coordinate draw");

    // family
    auto* family = app.add_subcommand("family", "dump the commuting family I_1..I_N");
    EvalArgs fa;
    std::string family_json_out;
    family->add_option("--N", fa.N, "dimension");
    family->add_option("--tau", fa.tau, "modulus, a+bi");
    family->add_option("--hbar", fa.hbar, "quantization parameter, a+bi");
    family->add_option("--gamma", fa.gamma, "coupling constant, a+bi");
    family->add_option("--z", fa.z, "spectral parameter, a+bi");
    family->add_option("--seed", fa.seed, "seed for coefficient sample points");
    family->add_option("--json", family_json_out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) ? 2 : 0;
    }

    try {
        if (verify->parsed()) {
            SampleConfig cfg;
            if (!cfg_path.empty()) cfg = load_config(cfg_path);
            if (!v_tau.empty()) cfg.tau = parse_complex(v_tau);
            if (!v_hbar.empty()) cfg.hbar = parse_complex(v_hbar);
            if (!v_gamma.empty()) cfg.gamma = parse_complex(v_gamma);
            if (v_samples > 0) cfg.samples = v_samples;
            if (v_have_seed) cfg.seed = v_seed;
            if (v_tol > 0) cfg.tol = v_tol;
            if (v_pole > 0) cfg.pole_threshold = v_pole;
            if (v_N > 0) cfg.N = v_N;
            if (!suite_arg.empty()) cfg.suites = split_list(suite_arg);
            if (!relations_arg.empty()) cfg.relations = split_list(relations_arg);
            Report rep = run(cfg);
            for (const auto& r : rep.relations) {
                std::printf("%-18s %-9s %s  max_residual=%.3e  tol=%.1e  samples=%d rejected=%d%s\n", r.id.c_str(),
                            r.suite.c_str(), r.pass ? "PASS" : "FAIL", r.max_residual, r.tol, r.samples_used,
                            r.rejected, r.negative ? "  [defect detector]" : "");
            }
            std::printf("%s\n", rep.all_pass ? "ALL PASS" : "FAILURES PRESENT");
            if (!json_out.empty()) {
                std::ofstream out(json_out, std::ios::binary);
                out << report_to_json(rep);
            }
            return rep.all_pass ? 0 : 1;
        }
        if (eval->parsed()) return run_eval(ea);
        if (family->parsed()) {
            EllipticContext ctx(parse_complex(fa.tau));
            OpEnv oe{&ctx, fa.N, parse_complex(fa.hbar), parse_complex(fa.gamma)};
            std::vector<QVec> qpts;
            Rng rng = stream_for(fa.seed, "eval_qpts", 0);
            for (int i = 0; i < 8; ++i) qpts.push_back(draw_q(rng, fa.N, ctx));
            std::string s = "{\"family\":[";
            for (int k = 1; k <= fa.N; ++k) {
                if (k > 1) s += ",";
                s += operator_json(family_Ik(k, parse_complex(fa.z), oe), qpts);
            }
            s += "]}";
            if (!family_json_out.empty()) {
                std::ofstream out(family_json_out, std::ios::binary);
                out << s;
            } else
                std::cout << s << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& err) {
        std::cerr << "configuration error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
