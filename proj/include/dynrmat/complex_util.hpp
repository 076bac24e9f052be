#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dynrmat {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline const cplx iu{0.0, 1.0};

// Distance from z to the lattice Z + tau*Z, measured in the plane after
// reducing the lattice coordinates of z to the nearest lattice point.
inline double lattice_distance(cplx z, cplx tau) {
    double y = z.imag() / tau.imag();
    double x = z.real() - y * tau.real();
    double fx = x - std::round(x);
    double fy = y - std::round(y);
    return std::abs(cplx(fx + fy * tau.real(), fy * tau.imag()));
}

// Thrown by kernel evaluations when an argument is too close to a pole of
// the requested function.  The sampler treats this as "resample", never as
// a test failure.
struct pole_error : std::runtime_error {
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a linear solve meets a (numerically) singular matrix, e.g. a
// degenerate intertwiner.  Also a resample signal.
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a sample stream cannot produce an admissible point.
struct sampling_error : std::runtime_error {
    explicit sampling_error(const std::string& what) : std::runtime_error(what) {}
};

// Parses "a+bi" style complex literals: "0.3", "-1.2e-3i", "0.31+1.27i",
// "1-2i".  Whitespace is not allowed; 'i' must be the final character of the
// imaginary part.
inline cplx parse_complex(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    // Split at the last '+'/'-' that is not part of an exponent and not
    // leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        char c = s[k];
        if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto to_double = [](const std::string& t) {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("bad numeric literal: " + t);
        return v;
    };
    bool imag_tail = s.back() == 'i' || s.back() == 'I';
    if (split == std::string::npos) {
        if (imag_tail) {
            std::string t = s.substr(0, s.size() - 1);
            if (t.empty() || t == "+" || t == "-") t += "1";
            return cplx(0.0, to_double(t));
        }
        return cplx(to_double(s), 0.0);
    }
    if (!imag_tail) throw std::invalid_argument("complex literal must end in 'i': " + s);
    std::string re = s.substr(0, split);
    std::string im = s.substr(split, s.size() - split - 1);
    if (im == "+" || im == "-") im += "1";
    return cplx(to_double(re), to_double(im));
}

// 17 significant digits: enough for exact double round-trip.
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string fmt17(cplx z) {
    return "[" + fmt17(z.real()) + "," + fmt17(z.imag()) + "]";
}

// FNV-1a, used to derive per-relation RNG streams and config hashes.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < n; ++k) {
        h ^= p[k];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    return fnv1a(s.data(), s.size(), h);
}

}  // namespace dynrmat
