#pragma once

// Suite orchestration: deterministic fan-out of (relation, N, sample) tasks
// over a worker pool.  Each task owns an independent RNG stream derived from
// (seed, relation id, N, sample index), so the report is bitwise identical
// whatever the thread count or relation filter.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "dynrmat/registry.hpp"
#include "dynrmat/report.hpp"

namespace dynrmat {

inline int worker_count() {
    if (const char* env = std::getenv("DYNRMAT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 2;
}

namespace detail {

struct Task {
    const RelationDef* def;
    int N;
    std::uint64_t sample_index;
};

struct TaskOutcome {
    double residual = 0.0;
    int rejected = 0;
    bool exhausted = false;
};

inline TaskOutcome run_task(const Task& t, const SampleConfig& cfg, const EllipticContext& ctx) {
    TaskOutcome out;
    rel::Env env{&ctx, t.N, cfg.hbar, cfg.gamma};
    Rng rng = stream_for(cfg.seed, t.def->id + "#" + std::to_string(t.N), t.sample_index);
    const int max_attempts = 300;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            out.residual = t.def->fn(env, rng);
            return out;
        } catch (const pole_error&) {
            ++out.rejected;
        } catch (const degenerate_error&) {
            ++out.rejected;
        }
    }
    out.exhausted = true;
    return out;
}

}  // namespace detail

inline bool suite_selected(const SampleConfig& cfg, const std::string& suite) {
    if (cfg.suites.empty()) return true;
    for (const auto& s : cfg.suites)
        if (s == suite || s == "all") return true;
    return false;
}

inline bool relation_selected(const SampleConfig& cfg, const std::string& id) {
    if (cfg.relations.empty()) return true;
    return std::find(cfg.relations.begin(), cfg.relations.end(), id) != cfg.relations.end();
}

inline Report run(const SampleConfig& cfg) {
    if (!(cfg.tau.imag() > 0.0)) throw std::invalid_argument("config: Im tau must be positive");
    if (cfg.samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    EllipticContext ctx(cfg.tau, 1e-12, cfg.pole_threshold);

    auto defs = make_registry();
    std::vector<const RelationDef*> selected;
    for (const auto& d : defs)
        if (suite_selected(cfg, d.suite) && relation_selected(cfg, d.id)) selected.push_back(&d);

    std::vector<detail::Task> tasks;
    for (const auto* d : selected) {
        int samples = d->samples_override > 0 ? d->samples_override : cfg.samples;
        for (int N : d->Ns)
            for (int k = 0; k < samples; ++k) tasks.push_back({d, N, static_cast<std::uint64_t>(k)});
    }

    std::vector<detail::TaskOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) break;
            outcomes[k] = detail::run_task(tasks[k], cfg, ctx);
        }
    };
    int nw = std::min<int>(worker_count(), static_cast<int>(tasks.size()) > 0 ? static_cast<int>(tasks.size()) : 1);
    std::vector<std::thread> pool;
    for (int k = 1; k < nw; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Report rep;
    rep.cfg = cfg;
    std::string canon = config_to_json(cfg);
    rep.config_hash = fnv1a(canon);
    for (const auto* d : selected) {
        RelationResult res;
        res.id = d->id;
        res.suite = d->suite;
        res.what = d->what;
        res.tol = cfg.tol > 0.0 && !d->negative ? cfg.tol : d->tol;
        res.negative = d->negative;
        bool exhausted = false;
        for (std::size_t k = 0; k < tasks.size(); ++k) {
            if (tasks[k].def != d) continue;
            res.samples_used += 1;
            res.rejected += outcomes[k].rejected;
            res.max_residual = std::max(res.max_residual, outcomes[k].residual);
            exhausted = exhausted || outcomes[k].exhausted;
        }
        int attempts = res.samples_used + res.rejected;
        bool reject_ok = res.rejected * 2 < (attempts > 0 ? attempts : 1);
        if (d->negative)
            res.pass = !exhausted && res.max_residual > res.tol;
        else
            res.pass = !exhausted && reject_ok && res.max_residual < res.tol;
        if (exhausted) res.note = "sampling exhausted";
        rep.relations.push_back(std::move(res));
    }
    std::sort(rep.relations.begin(), rep.relations.end(),
              [](const RelationResult& a, const RelationResult& b) { return a.id < b.id; });
    rep.all_pass = std::all_of(rep.relations.begin(), rep.relations.end(),
                               [](const RelationResult& r) { return r.pass; });
    return rep;
}

}  // namespace dynrmat
