#pragma once

#include <string>
#include <vector>

#include "dynrmat/sampling.hpp"

namespace dynrmat {

/// One registry entry's outcome.  For `negative` relations (injected-defect
/// detectors) pass means the residual EXCEEDS the threshold.
struct RelationResult {
    std::string id;
    std::string suite;
    std::string what;  // human-readable identity description
    int samples_used = 0;
    int rejected = 0;
    double max_residual = 0.0;
    double tol = 0.0;
    bool negative = false;
    bool pass = false;
    std::string note;
};

struct Report {
    SampleConfig cfg;
    std::uint64_t config_hash = 0;
    std::vector<RelationResult> relations;
    bool all_pass = false;
};

// Canonical config serialization: also the hashing pre-image, so identical
// configs map to identical hashes and identical report bytes.
inline std::string config_to_json(const SampleConfig& c) {
    std::string s = "{";
    s += "\"schema\":1";
    s += ",\"N\":" + std::to_string(c.N);
    s += ",\"tau\":" + fmt17(c.tau);
    s += ",\"hbar\":" + fmt17(c.hbar);
    s += ",\"gamma\":" + fmt17(c.gamma);
    s += ",\"samples\":" + std::to_string(c.samples);
    s += ",\"seed\":" + std::to_string(c.seed);
    s += ",\"tol\":" + fmt17(c.tol);
    s += ",\"pole_threshold\":" + fmt17(c.pole_threshold);
    auto list = [](const std::vector<std::string>& v) {
        std::string o = "[";
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k) o += ",";
            o += "\"" + v[k] + "\"";
        }
        return o + "]";
    };
    s += ",\"suites\":" + list(c.suites);
    s += ",\"relations\":" + list(c.relations);
    s += "}";
    return s;
}

inline std::string report_to_json(const Report& r) {
    std::string s = "{";
    s += "\"schema\":1";
    s += ",\"config\":" + config_to_json(r.cfg);
    s += ",\"config_hash\":\"" + std::to_string(r.config_hash) + "\"";
    s += ",\"relations\":[";
    for (std::size_t k = 0; k < r.relations.size(); ++k) {
        const auto& x = r.relations[k];
        if (k) s += ",";
        s += "{\"id\":\"" + x.id + "\"";
        s += ",\"suite\":\"" + x.suite + "\"";
        s += ",\"what\":\"" + x.what + "\"";
        s += ",\"samples\":" + std::to_string(x.samples_used);
        s += ",\"rejected\":" + std::to_string(x.rejected);
        s += ",\"max_residual\":" + fmt17(x.max_residual);
        s += ",\"tol\":" + fmt17(x.tol);
        s += std::string(",\"negative\":") + (x.negative ? "true" : "false");
        s += std::string(",\"pass\":") + (x.pass ? "true" : "false");
        if (!x.note.empty()) s += ",\"note\":\"" + x.note + "\"";
        s += "}";
    }
    s += "],\"all_pass\":";
    s += r.all_pass ? "true" : "false";
    s += "}";
    return s;
}

}  // namespace dynrmat
