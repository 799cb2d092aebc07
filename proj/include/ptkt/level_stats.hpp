// level_stats.hpp — unfolding of complex quasienergy clouds, nearest-neighbour
// spacings, analytic reference laws, random-matrix samplers, KS comparison and
// parameter sweeps.

#pragma once

#include "ptkt/core_types.hpp"
#include "ptkt/floquet.hpp"
#include "ptkt/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ptkt::stats {

// ---------------------------------------------------------------------------
// Analytic reference laws

/// Nearest-neighbour law of uncorrelated points in the plane.
inline double poisson2d_pdf(double s) {
    if (s < 0.0) throw std::domain_error("poisson2d_pdf: s must be >= 0");
    return 0.5 * pi * s * std::exp(-0.25 * pi * s * s);
}

inline double poisson2d_cdf(double s) {
    if (s <= 0.0) return 0.0;
    return -std::expm1(-0.25 * pi * s * s);
}

/// Constant quoted for the large-N Ginibre law; ginibre_constant() recomputes it.
inline constexpr double ginibre_constant_quoted = 1.1429;

/// Large-N Ginibre nearest-neighbour law truncated at n_max, without a
/// convergence check. With x = (Cs)^2, t_n = e^{-x} x^n / n! and
/// Q_n = e^{-x} e_n(x) = P[Poisson(x) <= n]:
///   P(s) = C prod_{n=1}^{n_max-1} Q_n * 2 C s sum_{n=1}^{n_max-1} t_n / Q_n.
inline double ginibre_pdf_truncated(double s, int n_max, double c = ginibre_constant_quoted) {
    if (s < 0.0) throw std::domain_error("ginibre_pdf: s must be >= 0");
    if (n_max < 2) throw std::invalid_argument("ginibre_pdf: n_max must be >= 2");
    if (s == 0.0) return 0.0;
    const double cs = c * s;
    const double x = cs * cs;
    const double lx = std::log(x);
    const int top = n_max - 1;
    // Upper tails P[Poisson(x) > n] summed from far beyond the truncation
    // point down, so the cumulative sum stays accurate.
    const int far = top + 60 + static_cast<int>(x + 10.0 * std::sqrt(x));
    std::vector<double> tail(static_cast<std::size_t>(top) + 1, 0.0);
    double acc = 0.0;
    for (int m = far; m > 0; --m) {
        acc += std::exp(-x + m * lx - std::lgamma(m + 1.0));
        if (m - 1 <= top) tail[static_cast<std::size_t>(m - 1)] = acc;  // P[N > m-1]
    }
    // Below the Poisson mean the lower sum is the accurate one, above it the
    // complement of the upper tail.
    double log_prod = 0.0;
    double sum = 0.0;
    double head = 0.0;
    for (int n = 0; n <= top; ++n) {
        const double tn = std::exp(-x + n * lx - std::lgamma(n + 1.0));
        head += tn;
        if (n == 0) continue;
        const double t = tail[static_cast<std::size_t>(n)];
        const double qn = n < x ? head : 1.0 - t;
        log_prod += n < x ? std::log(head) : std::log1p(-t);
        sum += tn / qn;
    }
    return c * std::exp(log_prod) * 2.0 * cs * sum;
}

/// Ginibre law with the doubling test: n_max and 2 n_max must agree to 1e-8.
inline double ginibre_pdf(double s, int n_max = 200, double c = ginibre_constant_quoted) {
    if (n_max < 50) throw std::invalid_argument("ginibre_pdf: n_max must be >= 50");
    const double a = ginibre_pdf_truncated(s, n_max, c);
    const double b = ginibre_pdf_truncated(s, 2 * n_max, c);
    if (!(std::abs(a - b) < 1e-8)) throw NumericalError("ginibre_pdf: truncation not converged at s = " + format_double(s));
    return b;
}

namespace detail {
/// Composite Simpson rule of f on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}
}  // namespace detail

/// The scale C fixing <s> = 1: the mean spacing of the C = 1 law.
inline double ginibre_constant(int n_max = 200) {
    return detail::simpson([&](double s) { return s * ginibre_pdf_truncated(s, n_max, 1.0); }, 0.0, 8.0, 4000);
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 pairs");
    double mx = 0.0, my = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Reference curves

/// A spacing law either tabulated on an s-grid (analytic laws) or given by a
/// sorted sample (random-matrix ensembles); both expose pdf and cdf.
struct ReferenceCurve {
    std::string name;
    std::vector<double> s;
    std::vector<double> pdf;
    std::vector<double> cdf;
    std::vector<double> sample;  // sorted; non-empty for sampled ensembles
    std::function<double(double)> exact_cdf;

    [[nodiscard]] bool sampled() const { return !sample.empty(); }

    [[nodiscard]] double cdf_at(double x) const {
        if (sampled()) {
            const auto it = std::upper_bound(sample.begin(), sample.end(), x);
            return static_cast<double>(it - sample.begin()) / static_cast<double>(sample.size());
        }
        if (exact_cdf) return exact_cdf(x);
        return interpolate(cdf, x);
    }

    [[nodiscard]] double pdf_at(double x) const { return interpolate(pdf, x); }

private:
    [[nodiscard]] double interpolate(const std::vector<double>& v, double x) const {
        if (x <= s.front()) return v.front();
        if (x >= s.back()) return v.back();
        const auto it = std::upper_bound(s.begin(), s.end(), x);
        const auto i = static_cast<std::size_t>(it - s.begin());
        const double w = (x - s[i - 1]) / (s[i] - s[i - 1]);
        return (1.0 - w) * v[i - 1] + w * v[i];
    }
};

namespace detail {
inline void cumulative_trapezoid(ReferenceCurve& c) {
    c.cdf.assign(c.s.size(), 0.0);
    for (std::size_t i = 1; i < c.s.size(); ++i)
        c.cdf[i] = c.cdf[i - 1] + 0.5 * (c.pdf[i] + c.pdf[i - 1]) * (c.s[i] - c.s[i - 1]);
}
}  // namespace detail

inline ReferenceCurve poisson2d_curve(double s_max = 6.0, int points = 6001) {
    ReferenceCurve c;
    c.name = "poisson2d";
    for (int i = 0; i < points; ++i) {
        const double s = s_max * i / (points - 1);
        c.s.push_back(s);
        c.pdf.push_back(poisson2d_pdf(s));
        c.cdf.push_back(poisson2d_cdf(s));
    }
    c.exact_cdf = poisson2d_cdf;
    return c;
}

inline ReferenceCurve ginibre_curve(double c_const = ginibre_constant_quoted, int n_max = 200,
                                    double s_max = 6.0, int points = 3001) {
    ReferenceCurve c;
    c.name = "ginibre";
    c.s.resize(static_cast<std::size_t>(points));
    c.pdf.resize(static_cast<std::size_t>(points));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < points; ++i) {
        const double s = s_max * i / (points - 1);
        c.s[static_cast<std::size_t>(i)] = s;
        c.pdf[static_cast<std::size_t>(i)] = ginibre_pdf_truncated(s, n_max, c_const);
    }
    // The doubling test is applied on a coarse subset of the grid.
    for (int i = 0; i < points; i += 50) (void)ginibre_pdf(c.s[static_cast<std::size_t>(i)], n_max, c_const);
    detail::cumulative_trapezoid(c);
    return c;
}

/// Reference built from pooled sample spacings; the pdf table is a
/// histogram on [0, s_max] for plotting, the cdf is the empirical one.
inline ReferenceCurve sampled_curve(std::string name, std::vector<double> spacings, double s_max = 4.0,
                                    int bins = 80) {
    if (spacings.empty()) throw std::invalid_argument("sampled_curve: empty sample");
    std::sort(spacings.begin(), spacings.end());
    ReferenceCurve c;
    c.name = std::move(name);
    const double w = s_max / bins;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double v : spacings) {
        const auto b = static_cast<int>(v / w);
        if (b >= 0 && b < bins) counts[static_cast<std::size_t>(b)] += 1.0;
    }
    for (int b = 0; b < bins; ++b) {
        c.s.push_back((b + 0.5) * w);
        c.pdf.push_back(counts[static_cast<std::size_t>(b)] / (w * static_cast<double>(spacings.size())));
    }
    c.sample = std::move(spacings);
    for (double x : c.s) c.cdf.push_back(c.cdf_at(x));
    return c;
}

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

/// KS distance of a sample from a reference: one-sample against analytic
/// laws, two-sample against sampled ensembles.
inline double ks_against(const std::vector<double>& sample, const ReferenceCurve& ref) {
    if (ref.sampled()) return ks_two_sample(sample, ref.sample);
    return ks_statistic(sample, [&](double x) { return ref.cdf_at(x); });
}

// ---------------------------------------------------------------------------
// Unfolding

/// How the unit-interval staircase is stretched back into an imaginary
/// extent. `isotropic` makes the unfolding locally area-preserving on
/// (geometric) average, `preserve_extent` keeps the original imaginary range,
/// `unit_density` makes the cloud's mean density one point per unit area.
enum class UnfoldScale { isotropic, preserve_extent, unit_density };

struct UnfoldOptions {
    UnfoldScale scale = UnfoldScale::isotropic;
    double real_tol = 1e-8;  // |Im E| below this counts as on the symmetry line; 0 ranks every point

    /// Plain rank/(n+1) staircase stretched to unit density, with no grouping
    /// of numerically real values.
    static UnfoldOptions literal() { return {UnfoldScale::unit_density, 0.0, 0}; }
    int knn = 0;             // window half-width for the density estimate; 0 = auto
};

struct Unfolded {
    std::vector<cplx> points;  // real parts untouched, imaginary parts unfolded
    double scale = 1.0;        // stretch H applied to the unit staircase
    double symmetry_line = 0.0;
    std::size_t on_symmetry_line = 0;
    bool degenerate = false;   // all imaginary parts equal; identity map used
};

/// Maps imaginary parts through the empirical staircase rank/(n+1) and
/// stretches by H. Points within real_tol of the real axis share one
/// mid-rank so the symmetry line stays a line; with real_tol = 0 numerically
/// real values are ranked by their rounding residue instead.
inline Unfolded unfold(const std::vector<cplx>& e, const UnfoldOptions& opt = {}) {
    const std::size_t n = e.size();
    if (n < 10) throw std::invalid_argument("unfold: need at least 10 points");
    Unfolded out;
    out.points = e;
    double lo = e[0].imag(), hi = e[0].imag();
    for (const auto& z : e) {
        lo = std::min(lo, z.imag());
        hi = std::max(hi, z.imag());
    }
    if (hi == lo) {
        std::cerr << "warning: unfold: all imaginary parts equal, leaving them unchanged\n";
        out.degenerate = true;
        out.symmetry_line = lo;
        return out;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a].imag() < e[b].imag(); });

    const double denom = static_cast<double>(n) + 1.0;
    std::vector<double> u(n);
    std::size_t below = 0, on_line = 0;
    for (const auto& z : e) {
        if (std::abs(z.imag()) < opt.real_tol) ++on_line;
        else if (z.imag() < 0.0) ++below;
    }
    const double mid = static_cast<double>(below) + 0.5 * (static_cast<double>(on_line) + 1.0);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = order[r];
        u[i] = std::abs(e[i].imag()) < opt.real_tol ? mid / denom : (static_cast<double>(r) + 1.0) / denom;
    }

    double h = 1.0;
    switch (opt.scale) {
        case UnfoldScale::preserve_extent: h = hi - lo; break;
        case UnfoldScale::unit_density: h = static_cast<double>(n) / (2.0 * pi); break;
        case UnfoldScale::isotropic: {
            // Local staircase slope dU/dIm at every off-line point from a
            // symmetric window of neighbours in the imaginary order.
            std::vector<double> off;
            for (std::size_t r = 0; r < n; ++r)
                if (std::abs(e[order[r]].imag()) >= opt.real_tol) off.push_back(e[order[r]].imag());
            const std::size_t m = off.size();
            if (m < 3) {
                h = hi - lo;
                break;
            }
            const std::size_t k = opt.knn > 0 ? static_cast<std::size_t>(opt.knn)
                                              : std::clamp<std::size_t>(static_cast<std::size_t>(std::sqrt(double(m))), 2, 50);
            double log_sum = 0.0;
            std::size_t used = 0;
            for (std::size_t r = 0; r < m; ++r) {
                const std::size_t a = r >= k ? r - k : 0;
                const std::size_t b = std::min(m - 1, r + k);
                const double span = off[b] - off[a];
                if (!(span > 0.0)) continue;
                log_sum += std::log((static_cast<double>(b - a) / denom) / span);
                ++used;
            }
            h = used ? std::exp(-log_sum / static_cast<double>(used)) : hi - lo;
            break;
        }
    }
    out.scale = h;
    out.symmetry_line = h * mid / denom;
    out.on_symmetry_line = on_line;
    for (std::size_t i = 0; i < n; ++i) out.points[i] = cplx(e[i].real(), h * u[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Nearest-neighbour spacings

struct SpacingOptions {
    double boundary_margin = 0.05;  // fraction of the imaginary range dropped at each end
    double symmetry_margin = 2.0;   // in mean nearest-neighbour distances; <= 0 disables
    bool periodic_re = true;        // quasienergies live on a circle in Re
    double period = 2.0 * pi;
};

struct SpacingSample {
    std::vector<double> spacings;  // mean exactly 1
    double scale = 1.0;            // raw mean spacing the sample was divided by
    std::size_t n_points = 0;
    std::size_t excluded_boundary = 0;
    std::size_t excluded_symmetry = 0;
};

namespace detail {
inline double nn_distance(const std::vector<cplx>& p, std::size_t i, const SpacingOptions& opt) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == i) continue;
        double dx = std::abs(p[i].real() - p[j].real());
        if (opt.periodic_re) dx = std::min(dx, opt.period - std::fmod(dx, opt.period));
        const double dy = p[i].imag() - p[j].imag();
        best = std::min(best, dx * dx + dy * dy);
    }
    return std::sqrt(best);
}

inline void normalise(SpacingSample& s) {
    if (s.spacings.empty()) throw std::invalid_argument("nn_spacings: no reference points left after exclusion");
    const double mean = std::accumulate(s.spacings.begin(), s.spacings.end(), 0.0) / static_cast<double>(s.spacings.size());
    if (!(mean > 0.0)) throw NumericalError("nn_spacings: zero mean spacing");
    s.scale = mean;
    for (double& v : s.spacings) v /= mean;
}
}  // namespace detail

/// Euclidean nearest-neighbour distances of the retained reference points.
/// Excluded points still act as neighbour candidates. `symmetry_line` is the
/// unfolded location of the real axis; without it only the boundary filter
/// applies.
inline SpacingSample nn_spacings(const std::vector<cplx>& points, const SpacingOptions& opt = {},
                                 std::optional<double> symmetry_line = std::nullopt) {
    if (points.size() < 2) throw std::invalid_argument("nn_spacings: need at least 2 points");
    SpacingSample s;
    s.n_points = points.size();
    std::vector<double> nn(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) nn[i] = detail::nn_distance(points, i, opt);
    double lo = points[0].imag(), hi = points[0].imag();
    for (const auto& z : points) {
        lo = std::min(lo, z.imag());
        hi = std::max(hi, z.imag());
    }
    const double cut_lo = lo + opt.boundary_margin * (hi - lo);
    const double cut_hi = hi - opt.boundary_margin * (hi - lo);
    const double mean_nn = std::accumulate(nn.begin(), nn.end(), 0.0) / static_cast<double>(nn.size());
    const bool use_symmetry = symmetry_line.has_value() && opt.symmetry_margin > 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double y = points[i].imag();
        if (opt.boundary_margin > 0.0 && hi > lo && (y < cut_lo || y > cut_hi)) {
            ++s.excluded_boundary;
            continue;
        }
        if (use_symmetry && std::abs(y - *symmetry_line) < opt.symmetry_margin * mean_nn) {
            ++s.excluded_symmetry;
            continue;
        }
        s.spacings.push_back(nn[i]);
    }
    detail::normalise(s);
    return s;
}

/// Bulk spacings of a random-matrix spectrum: reference points restricted to
/// |lambda| < fraction * radius, neighbours taken from the whole spectrum.
inline SpacingSample bulk_spacings(const VectorC& ev, double radius, double fraction = 0.8) {
    std::vector<cplx> pts(ev.data(), ev.data() + ev.size());
    SpacingOptions opt;
    opt.periodic_re = false;
    SpacingSample s;
    s.n_points = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::abs(pts[i]) >= fraction * radius) {
            ++s.excluded_boundary;
            continue;
        }
        s.spacings.push_back(detail::nn_distance(pts, i, opt));
    }
    detail::normalise(s);
    return s;
}

/// Concatenates samples that are each already normalised to mean 1.
inline std::vector<double> pool(const std::vector<SpacingSample>& samples) {
    std::vector<double> out;
    for (const auto& s : samples) out.insert(out.end(), s.spacings.begin(), s.spacings.end());
    return out;
}

// ---------------------------------------------------------------------------
// Random-matrix ensembles

enum class Ensemble { ginibre, transpose_symmetric };

inline const char* ensemble_name(Ensemble e) { return e == Ensemble::ginibre ? "ginibre" : "transpose"; }

/// iid complex Gaussian entries with E|a|^2 = 1/N.
inline MatrixC ginibre_matrix(int n, std::mt19937_64& rng) {
    if (n < 2) throw std::invalid_argument("ginibre_matrix: N must be >= 2");
    std::normal_distribution<double> g(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(2.0 * n);
    MatrixC a(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) {
            const double re = g(rng);
            const double im = g(rng);
            a(r, c) = scale * cplx(re, im);
        }
    return a;
}

/// A = (G + G^T)/2: complex symmetric, not Hermitian.
inline MatrixC transpose_symmetric_matrix(int n, std::mt19937_64& rng) {
    const MatrixC g = ginibre_matrix(n, rng);
    return 0.5 * (g + g.transpose());
}

inline MatrixC ensemble_matrix(Ensemble e, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return e == Ensemble::ginibre ? ginibre_matrix(n, rng) : transpose_symmetric_matrix(n, rng);
}

inline ComplexSpectrum sample_ginibre(int n, std::uint64_t seed) {
    return eig(ensemble_matrix(Ensemble::ginibre, n, seed), {false, false});
}

inline ComplexSpectrum sample_transpose_symmetric(int n, std::uint64_t seed) {
    return eig(ensemble_matrix(Ensemble::transpose_symmetric, n, seed), {false, false});
}

/// Circular-law radius sqrt(N * mean |a_ij|^2) = ||A||_F / sqrt(N).
inline double circular_radius(const MatrixC& a) { return a.norm() / std::sqrt(static_cast<double>(a.rows())); }

/// Pooled bulk spacings of `count` independent matrices; matrix i uses the
/// seed derive_seed(master, i), so the result does not depend on threading.
inline std::vector<double> ensemble_spacings(Ensemble e, int n, int count, std::uint64_t master,
                                             double bulk_fraction = 0.8) {
    if (count < 1) throw std::invalid_argument("ensemble_spacings: count must be >= 1");
    std::vector<SpacingSample> parts(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        const MatrixC a = ensemble_matrix(e, n, derive_seed(master, static_cast<std::uint64_t>(i)));
        const auto spec = eig(a, {false, false});
        parts[static_cast<std::size_t>(i)] = bulk_spacings(spec.eigenvalues, circular_radius(a), bulk_fraction);
    }
    return pool(parts);
}

// ---------------------------------------------------------------------------
// Comparison against a reference

struct Histogram {
    std::vector<double> bin_center;
    std::vector<double> pdf;
    std::vector<double> cdf_empirical;
    std::vector<double> cdf_reference;
};

struct Comparison {
    double ks = 0.0;
    Histogram histogram;
};

/// KS distance plus a binned pdf on [0, s_max]; the CDF columns are
/// evaluated at the bin centres.
inline Comparison compare(const std::vector<double>& spacings, const ReferenceCurve& ref, int bins = 40,
                          double s_max = 3.5) {
    if (spacings.empty()) throw std::invalid_argument("compare: empty sample");
    if (bins < 1 || !(s_max > 0.0)) throw std::invalid_argument("compare: bad binning");
    Comparison c;
    c.ks = ks_against(spacings, ref);
    std::vector<double> sorted = spacings;
    std::sort(sorted.begin(), sorted.end());
    const double w = s_max / bins;
    const auto n = static_cast<double>(sorted.size());
    for (int b = 0; b < bins; ++b) {
        const double lo = b * w, hi = (b + 1) * w, mid = (b + 0.5) * w;
        const auto count = std::lower_bound(sorted.begin(), sorted.end(), hi) -
                           std::lower_bound(sorted.begin(), sorted.end(), lo);
        c.histogram.bin_center.push_back(mid);
        c.histogram.pdf.push_back(static_cast<double>(count) / (n * w));
        c.histogram.cdf_empirical.push_back(
            static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), mid) - sorted.begin()) / n);
        c.histogram.cdf_reference.push_back(ref.cdf_at(mid));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Parameter sweeps

/// Inclusive arithmetic range with the end point protected against rounding.
inline std::vector<double> arange(double start, double stop, double step) {
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("arange: bad range");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v;
    for (long i = 0; i < count; ++i) v.push_back(start + static_cast<double>(i) * step);
    return v;
}

enum class SweepParameter { k, gamma };

struct Realisation {
    double value = 0.0;
    std::vector<cplx> quasienergies;
    bool ok = false;
    std::string error;
};

inline std::vector<Realisation> sweep_spectra(const TopParams& base, const std::vector<double>& values,
                                              SweepParameter which,
                                              FloquetVariant variant = FloquetVariant::standard) {
    if (values.empty()) throw std::invalid_argument("sweep_spectra: no parameter values");
    std::vector<Realisation> out(values.size());
    const auto n = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        auto& r = out[static_cast<std::size_t>(i)];
        r.value = values[static_cast<std::size_t>(i)];
        TopParams p = base;
        (which == SweepParameter::k ? p.k : p.gamma) = r.value;
        try {
            const MatrixC f = build_floquet(FloquetSpec{p, variant, ExpMethod::automatic});
            r.quasienergies = quasienergies(eig(f));
            r.ok = true;
        } catch (const std::exception& ex) {
            r.error = ex.what();
        }
    }
    for (const auto& r : out)
        if (!r.ok) std::cerr << "warning: realisation at " << r.value << " skipped: " << r.error << '\n';
    return out;
}

inline std::vector<Realisation> baker_sweep(int n, const std::vector<double>& gammas) {
    if (gammas.empty()) throw std::invalid_argument("baker_sweep: no gamma values");
    std::vector<Realisation> out(gammas.size());
    const auto m = static_cast<long>(gammas.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < m; ++i) {
        auto& r = out[static_cast<std::size_t>(i)];
        r.value = gammas[static_cast<std::size_t>(i)];
        try {
            r.quasienergies = quasienergies(eig(baker(n, r.value)));
            r.ok = true;
        } catch (const std::exception& ex) {
            r.error = ex.what();
        }
    }
    for (const auto& r : out)
        if (!r.ok) std::cerr << "warning: realisation at " << r.value << " skipped: " << r.error << '\n';
    return out;
}

struct SweepStatistics {
    std::vector<double> spacings;  // pooled, each realisation normalised to mean 1
    std::vector<SpacingSample> per_realisation;
    std::size_t failed = 0;
    std::size_t empty = 0;  // realisations with no reference point left after exclusion
    std::size_t excluded_boundary = 0;
    std::size_t excluded_symmetry = 0;
};

/// Unfolds each realisation separately, collects its spacings and pools.
inline SweepStatistics pooled_spacings(const std::vector<Realisation>& runs, const UnfoldOptions& uopt = {},
                                       const SpacingOptions& sopt = {}) {
    SweepStatistics st;
    for (const auto& r : runs) {
        if (!r.ok) {
            ++st.failed;
            continue;
        }
        const Unfolded u = unfold(r.quasienergies, uopt);
        SpacingSample s;
        try {
            s = nn_spacings(u.points, sopt, u.degenerate ? std::nullopt : std::optional<double>(u.symmetry_line));
        } catch (const std::invalid_argument&) {
            ++st.empty;
            continue;
        }
        st.excluded_boundary += s.excluded_boundary;
        st.excluded_symmetry += s.excluded_symmetry;
        st.per_realisation.push_back(std::move(s));
    }
    st.spacings = pool(st.per_realisation);
    if (st.spacings.empty()) throw std::invalid_argument("pooled_spacings: no spacings collected");
    return st;
}

}  // namespace ptkt::stats
