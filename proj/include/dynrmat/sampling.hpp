#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynrmat/complex_util.hpp"
#include "dynrmat/elliptic.hpp"

namespace dynrmat {

/// Everything a verification run needs; identical config + seed produces
/// bitwise-identical reports.
struct SampleConfig {
    int N = 3;
    cplx tau{0.31, 1.27};
    cplx hbar{0.17, 0.03};
    cplx gamma{0.23, -0.05};
    int samples = 50;
    std::uint64_t seed = 20170831;
    double tol = 0.0;  // 0 = per-relation default
    double pole_threshold = 1e-3;
    std::vector<std::string> suites;     // empty = all
    std::vector<std::string> relations;  // empty = no filter
};

// splitmix64: tiny, seedable, platform-stable.  Each (relation, sample)
// pair owns an independent stream, so results are independent of thread
// scheduling and of which relations run.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * u01(); }
};

inline Rng stream_for(std::uint64_t seed, const std::string& relation_id, std::uint64_t sample_index) {
    std::uint64_t h = fnv1a(relation_id, seed ^ 0x51ed270b7a2cf345ull);
    h ^= 0x2545f4914f6cdd1dull * (sample_index + 1);
    return Rng(h);
}

// Sampling bands: points live well inside the fundamental cell; the pole
// guard on every kernel evaluation rejects the rare draw that still lands
// near a lattice point or a derived pole.
inline cplx draw_spectral(Rng& r, const EllipticContext& c) {
    return cplx(r.in(-0.45, 0.45), r.in(-0.45, 0.45) * c.tau.imag());
}

inline std::vector<cplx> draw_q(Rng& r, int N, const EllipticContext& c) {
    std::vector<cplx> q(N);
    for (auto& v : q) v = cplx(r.in(-0.4, 0.4), r.in(-0.2, 0.2) * c.tau.imag());
    return q;
}

}  // namespace dynrmat
