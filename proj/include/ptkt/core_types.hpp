// core_types.hpp — model parameters, Bloch-sphere points, phase-space grids and
// the flat `key = value` parameter file format shared by every other header.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ptkt {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Raised when a numerical routine cannot produce a trustworthy result
/// (singular matrix, failed convergence, ill-conditioned decomposition).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * pi);  // [-pi, pi]
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

// ---------------------------------------------------------------------------
// Spin size

/// Total spin L, integer or half-integer. Stored as 2L so that the
/// Hilbert-space dimension 2L+1 is exact.
class SpinL {
public:
    constexpr SpinL() = default;

    static SpinL from_twice(int twice_l) {
        if (twice_l < 1) throw std::invalid_argument("SpinL: L must be >= 1/2");
        SpinL s;
        s.twice_ = twice_l;
        return s;
    }

    static SpinL from_value(double l) {
        const double twice = 2.0 * l;
        const double rounded = std::round(twice);
        if (std::abs(twice - rounded) > 1e-9)
            throw std::invalid_argument("SpinL: 2L must be an integer");
        return from_twice(static_cast<int>(rounded));
    }

    [[nodiscard]] constexpr int twice() const { return twice_; }
    [[nodiscard]] constexpr double value() const { return 0.5 * twice_; }
    [[nodiscard]] constexpr int dim() const { return twice_ + 1; }
    /// Magnetic quantum number of basis row i (row 0 is m = L).
    [[nodiscard]] constexpr double m_of_row(int i) const { return value() - i; }

    friend constexpr bool operator==(SpinL, SpinL) = default;

private:
    int twice_ = 2;
};

// ---------------------------------------------------------------------------
// Model parameters

struct TopParams {
    double p = 2.0;        // linear precession about x
    double epsilon = 0.0;  // Hermitian detuning along z
    double gamma = 0.0;    // gain/loss rate along z
    double k = 1.0;        // torsion (kick) strength
    double tau = 1.0;      // kick period
    double eta = 0.0;      // strength of the additional Ly^2 kick
    SpinL spin = SpinL::from_twice(40);

    [[nodiscard]] bool pt_symmetric() const { return epsilon == 0.0; }

    void validate() const {
        if (!(tau > 0.0)) throw std::invalid_argument("TopParams: tau must be > 0");
        if (!(gamma >= 0.0)) throw std::invalid_argument("TopParams: gamma must be >= 0");
        for (double v : {p, epsilon, gamma, k, tau, eta})
            if (!std::isfinite(v)) throw std::invalid_argument("TopParams: non-finite parameter");
    }
};

// ---------------------------------------------------------------------------
// Classical phase space

/// Point on the unit sphere s = <L>/L.
struct BlochPoint {
    double sx = 0.0;
    double sy = 0.0;
    double sz = 1.0;

    [[nodiscard]] double norm() const { return std::sqrt(sx * sx + sy * sy + sz * sz); }

    [[nodiscard]] BlochPoint normalized() const {
        const double n = norm();
        return {sx / n, sy / n, sz / n};
    }

    /// Azimuth in (-pi, pi]; the poles map to 0.
    [[nodiscard]] double phi() const {
        if (sx == 0.0 && sy == 0.0) return 0.0;
        double a = std::atan2(sy, sx);
        if (a == -pi) a = pi;
        return a;
    }

    [[nodiscard]] double z() const { return std::clamp(sz, -1.0, 1.0); }

    static BlochPoint from_cylindrical(double phi, double z) {
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    static BlochPoint from_spherical(double theta, double phi) {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }

    friend double distance(const BlochPoint& a, const BlochPoint& b) {
        return std::sqrt((a.sx - b.sx) * (a.sx - b.sx) + (a.sy - b.sy) * (a.sy - b.sy) +
                         (a.sz - b.sz) * (a.sz - b.sz));
    }
};

struct Cylindrical {
    double phi;
    double z;
};

inline Cylindrical to_cylindrical(const BlochPoint& point) { return {point.phi(), point.z()}; }

/// Classical point together with its intensity (semiclassical norm).
struct IntensityState {
    BlochPoint point;
    double n = 1.0;
};

// ---------------------------------------------------------------------------
// Cell-centred, area-uniform grid over (phi, z) in (-pi, pi] x [-1, 1]

struct GridSpec {
    int n_phi = 400;
    int n_z = 400;

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(n_phi) * static_cast<std::size_t>(n_z);
    }
    [[nodiscard]] double phi(int i) const { return -pi + (i + 0.5) * (2.0 * pi / n_phi); }
    [[nodiscard]] double z(int j) const { return -1.0 + (j + 0.5) * (2.0 / n_z); }
    [[nodiscard]] std::size_t index(int i_phi, int j_z) const {
        return static_cast<std::size_t>(j_z) * static_cast<std::size_t>(n_phi) +
               static_cast<std::size_t>(i_phi);
    }
    [[nodiscard]] BlochPoint point(std::size_t idx) const {
        const int i = static_cast<int>(idx % static_cast<std::size_t>(n_phi));
        const int j = static_cast<int>(idx / static_cast<std::size_t>(n_phi));
        return BlochPoint::from_cylindrical(phi(i), z(j));
    }

    void validate() const {
        if (n_phi < 1 || n_z < 1) throw std::invalid_argument("GridSpec: empty grid");
    }
};

/// Scalar field sampled on a GridSpec; values are stored z-row major
/// (phi varies fastest).
struct GridField {
    GridSpec grid;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(GridSpec g) : grid(g), values(g.size(), 0.0) {}

    [[nodiscard]] double at(int i_phi, int j_z) const { return values[grid.index(i_phi, j_z)]; }
    double& at(int i_phi, int j_z) { return values[grid.index(i_phi, j_z)]; }
};

// ---------------------------------------------------------------------------
// Flat `key = value` parameter files

using KeyValueMap = std::map<std::string, std::string>;

namespace detail {
inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

inline double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: cannot parse value for '" + key + "': " + text);
    }
    if (detail::trim(std::string_view(text).substr(used)).size() != 0)
        throw std::invalid_argument("config: trailing characters for '" + key + "': " + text);
    return v;
}
}  // namespace detail

/// Parses `key = value` lines. `#` and `;` start comments, `[section]`
/// headers are skipped (they are meaningful only to the CLI), and later
/// keys override earlier ones.
inline KeyValueMap parse_key_values(std::istream& in) {
    KeyValueMap out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        const std::string body = detail::trim(std::string_view(line).substr(0, hash));
        if (body.empty() || body.front() == '[') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) + " has no '='");
        std::string key = detail::trim(std::string_view(body).substr(0, eq));
        std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) throw std::invalid_argument("config: empty key on line " + std::to_string(lineno));
        out[key] = value;
    }
    return out;
}

/// Applies recognised keys to `params`; unknown keys are left for the caller.
/// Accepts both `spin_l` and the CLI spelling `spin-l`.
inline TopParams apply_key_values(TopParams params, const KeyValueMap& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "p") params.p = detail::parse_double(key, value);
        else if (key == "epsilon") params.epsilon = detail::parse_double(key, value);
        else if (key == "gamma") params.gamma = detail::parse_double(key, value);
        else if (key == "k") params.k = detail::parse_double(key, value);
        else if (key == "tau") params.tau = detail::parse_double(key, value);
        else if (key == "eta") params.eta = detail::parse_double(key, value);
        else if (key == "spin_l" || key == "spin-l")
            params.spin = SpinL::from_value(detail::parse_double(key, value));
    }
    params.validate();
    return params;
}

inline TopParams read_params(std::istream& in, TopParams defaults = {}) {
    return apply_key_values(defaults, parse_key_values(in));
}

inline TopParams read_params_file(const std::string& path, TopParams defaults = {}) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return read_params(in, defaults);
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void write_params(std::ostream& out, const TopParams& params) {
    out << "p = " << format_double(params.p) << '\n'
        << "epsilon = " << format_double(params.epsilon) << '\n'
        << "gamma = " << format_double(params.gamma) << '\n'
        << "k = " << format_double(params.k) << '\n'
        << "tau = " << format_double(params.tau) << '\n'
        << "eta = " << format_double(params.eta) << '\n'
        << "spin_l = " << format_double(params.spin.value()) << '\n';
}

inline std::string params_to_string(const TopParams& params) {
    std::ostringstream os;
    write_params(os, params);
    return os.str();
}

/// FNV-1a hash of the canonical parameter text; used to tag dumped matrices.
inline std::uint64_t params_hash(const TopParams& params) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : params_to_string(params)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Deterministic seeding

/// SplitMix64 mixing of (master seed, task index) into an independent
/// per-task seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace ptkt
