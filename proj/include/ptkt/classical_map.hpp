// classical_map.hpp — the classical limit of the PT-symmetric kicked top.
//
// One period is F = F_free(tau/2) o F_kick o F_free(tau/2) acting on the unit
// sphere, together with the intensity n that the free flow multiplies by the
// norm factor Gamma and the unitary kick leaves alone.

#pragma once

#include "ptkt/core_types.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace ptkt::classical {

// ---------------------------------------------------------------------------
// Free flow

/// Time-dependent coefficients of the closed-form free flow.
/// With omega^2 = p^2 - gamma^2 they are cos(omega t), sin(omega t)/omega and
/// (1 - cos(omega t))/omega^2, all even in omega and therefore real for
/// gamma > p (hyperbolic continuation) and at gamma = p (polynomial limit).
struct DerivedQuantities {
    double omega_sq = 0.0;
    double cos_term = 1.0;
    double sin_over_omega = 0.0;
    double one_minus_cos_over_omega_sq = 0.0;

    [[nodiscard]] cplx omega() const { return std::sqrt(cplx(omega_sq, 0.0)); }
};

inline DerivedQuantities derived_quantities(double p, double gamma, double t) {
    DerivedQuantities d;
    d.omega_sq = p * p - gamma * gamma;
    const double x2 = d.omega_sq * t * t;
    if (std::abs(x2) < 1e-6) {
        d.cos_term = 1.0 - x2 / 2.0 + x2 * x2 / 24.0 - x2 * x2 * x2 / 720.0;
        d.sin_over_omega = t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0);
        d.one_minus_cos_over_omega_sq =
            t * t * (0.5 - x2 / 24.0 + x2 * x2 / 720.0 - x2 * x2 * x2 / 40320.0);
    } else if (d.omega_sq > 0.0) {
        const double w = std::sqrt(d.omega_sq);
        const double h = std::sin(0.5 * w * t) / w;
        d.cos_term = std::cos(w * t);
        d.sin_over_omega = std::sin(w * t) / w;
        d.one_minus_cos_over_omega_sq = 2.0 * h * h;
    } else {
        const double kappa = std::sqrt(-d.omega_sq);
        const double h = std::sinh(0.5 * kappa * t) / kappa;
        d.cos_term = std::cosh(kappa * t);
        d.sin_over_omega = std::sinh(kappa * t) / kappa;
        d.one_minus_cos_over_omega_sq = 2.0 * h * h;
    }
    return d;
}

struct FreeFlowResult {
    BlochPoint point;
    double gamma_factor = 1.0;  // n(t)/n(0)
};

/// Closed-form free evolution over time t (PT-symmetric case epsilon = 0).
inline FreeFlowResult free_flow_closed(const BlochPoint& s, const TopParams& params, double t) {
    if (params.epsilon != 0.0)
        throw std::invalid_argument("free_flow_closed: closed form requires epsilon == 0");
    const double p = params.p;
    const double g = params.gamma;
    const auto d = derived_quantities(p, g, t);
    const double c = d.cos_term;
    const double so = d.sin_over_omega;
    const double v = d.one_minus_cos_over_omega_sq;

    const double gamma_factor = 1.0 + g * g * v + p * g * v * s.sy + g * so * s.sz;
    FreeFlowResult r;
    r.gamma_factor = gamma_factor;
    r.point.sx = s.sx / gamma_factor;
    r.point.sy = ((c - g * g * v) * s.sy - p * so * s.sz - p * g * v) / gamma_factor;
    r.point.sz = (p * so * s.sy + c * s.sz + g * so) / gamma_factor;
    return r;
}

struct FreeFlowOdeResult {
    BlochPoint point;
    double gamma_factor = 1.0;
    double max_drift = 0.0;  // largest | |s| - 1 | seen before renormalisation
};

namespace detail {
// State (sx, sy, sz, ln n).
using OdeState = std::array<double, 4>;

inline OdeState free_rhs(const OdeState& y, double p, double eps, double g) {
    const double sx = y[0], sy = y[1], sz = y[2];
    return {-eps * sy - g * sz * sx,
            eps * sx - p * sz - g * sz * sy,
            p * sy + g * (1.0 - sz * sz),
            g * sz};
}

inline OdeState axpy(const OdeState& y, double h, const OdeState& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}
}  // namespace detail

/// Fixed-step RK4 integration of the full free equations of motion
/// (any epsilon). The intensity is carried as ln n with d(ln n)/dt = gamma sz.
/// Negative t integrates backwards.
inline FreeFlowOdeResult free_flow_ode(const BlochPoint& s, const TopParams& params, double t,
                                       double dt = 1e-3) {
    if (!(dt > 0.0)) throw std::invalid_argument("free_flow_ode: dt must be > 0");
    const double p = params.p, eps = params.epsilon, g = params.gamma;
    const auto steps = static_cast<long>(std::ceil(std::abs(t) / dt - 1e-12));
    FreeFlowOdeResult r;
    detail::OdeState y{s.sx, s.sy, s.sz, 0.0};
    if (steps == 0) {
        r.point = s;
        return r;
    }
    const double h = t / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
        const auto k1 = detail::free_rhs(y, p, eps, g);
        const auto k2 = detail::free_rhs(detail::axpy(y, 0.5 * h, k1), p, eps, g);
        const auto k3 = detail::free_rhs(detail::axpy(y, 0.5 * h, k2), p, eps, g);
        const auto k4 = detail::free_rhs(detail::axpy(y, h, k3), p, eps, g);
        for (int j = 0; j < 4; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        const double nrm = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        r.max_drift = std::max(r.max_drift, std::abs(nrm - 1.0));
        y[0] /= nrm;
        y[1] /= nrm;
        y[2] /= nrm;
    }
    r.point = {y[0], y[1], y[2]};
    r.gamma_factor = std::exp(y[3]);
    return r;
}

/// Dense output of the free flow, used for trajectory plots.
inline std::vector<BlochPoint> free_flow_trajectory(const BlochPoint& s, const TopParams& params,
                                                    double t_total, int n_out, double dt = 1e-3) {
    if (n_out < 1) throw std::invalid_argument("free_flow_trajectory: n_out must be >= 1");
    std::vector<BlochPoint> out;
    out.reserve(static_cast<std::size_t>(n_out) + 1);
    out.push_back(s);
    BlochPoint cur = s;
    const double seg = t_total / n_out;
    for (int i = 0; i < n_out; ++i) {
        cur = free_flow_ode(cur, params, seg, dt).point;
        out.push_back(cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kick and full period

/// Torsion about z: (sx, sy) rotated by 2 k sz.
inline BlochPoint kick_map(const BlochPoint& s, double k) {
    const double a = 2.0 * k * s.sz;
    const double c = std::cos(a), sn = std::sin(a);
    return {c * s.sx - sn * s.sy, sn * s.sx + c * s.sy, s.sz};
}

struct StepOptions {
    double ode_dt = 1e-3;  // in units of tau, used only when epsilon != 0
};

inline FreeFlowResult half_period(const BlochPoint& s, const TopParams& params, double t,
                                  const StepOptions& opt) {
    if (params.pt_symmetric()) return free_flow_closed(s, params, t);
    const auto r = free_flow_ode(s, params, t, opt.ode_dt * params.tau);
    return {r.point, r.gamma_factor};
}

/// One period of the map; the intensity is multiplied by both half-period
/// Gamma factors.
inline IntensityState step(const IntensityState& state, const TopParams& params,
                           const StepOptions& opt = {}) {
    const double half = 0.5 * params.tau;
    const auto a = half_period(state.point, params, half, opt);
    const auto b = half_period(kick_map(a.point, params.k), params, half, opt);
    return {b.point, state.n * a.gamma_factor * b.gamma_factor};
}

inline BlochPoint step_point(const BlochPoint& s, const TopParams& params,
                             const StepOptions& opt = {}) {
    return step(IntensityState{s, 1.0}, params, opt).point;
}

/// The reversing involution s_z -> -s_z.
inline BlochPoint reflect_z(const BlochPoint& s) { return {s.sx, s.sy, -s.sz}; }

/// Inverse of one period. For epsilon = 0 this is G o F o G, with the
/// intensity multiplied by the forward factor of the reflected point; for
/// epsilon != 0 the free flow is integrated backwards.
inline IntensityState inverse_step(const IntensityState& state, const TopParams& params,
                                   const StepOptions& opt = {}) {
    if (params.pt_symmetric()) {
        const auto fwd = step(IntensityState{reflect_z(state.point), 1.0}, params, opt);
        return {reflect_z(fwd.point), state.n * fwd.n};
    }
    const double half = 0.5 * params.tau;
    const auto a = free_flow_ode(state.point, params, -half, opt.ode_dt * params.tau);
    const auto b = free_flow_ode(kick_map(a.point, -params.k), params, -half, opt.ode_dt * params.tau);
    return {b.point, state.n * a.gamma_factor * b.gamma_factor};
}

struct Trajectory {
    std::vector<IntensityState> states;
    TopParams params;
    double max_drift = 0.0;  // largest | |s| - 1 | before renormalisation
};

/// Iterates the map, renormalising onto the sphere after each step and
/// recording how far the raw image drifted off it.
inline Trajectory iterate(const IntensityState& start, const TopParams& params, int iters,
                          const StepOptions& opt = {}) {
    Trajectory tr;
    tr.params = params;
    tr.states.reserve(static_cast<std::size_t>(iters) + 1);
    tr.states.push_back(start);
    IntensityState cur = start;
    for (int i = 0; i < iters; ++i) {
        cur = step(cur, params, opt);
        tr.max_drift = std::max(tr.max_drift, std::abs(cur.point.norm() - 1.0));
        cur.point = cur.point.normalized();
        tr.states.push_back(cur);
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Fixed points, Jacobian, Lyapunov exponents

/// The two elliptic fixed points of the free flow on the equator. They
/// satisfy s_y = -gamma/p, i.e. phi_1 = -asin(gamma/p) and
/// phi_2 = -pi + asin(gamma/p). Reversibility forces any elliptic fixed point
/// of the kicked map to be one of these.
inline std::array<BlochPoint, 2> elliptic_fixed_points(const TopParams& params) {
    if (!params.pt_symmetric())
        throw std::invalid_argument("elliptic_fixed_points: requires epsilon == 0");
    if (!(params.gamma < params.p))
        throw std::domain_error("elliptic_fixed_points: gamma >= p, fixed points are a sink/source pair");
    const double sy = -params.gamma / params.p;
    const double sx = std::sqrt(1.0 - sy * sy);
    return {BlochPoint{sx, sy, 0.0}, BlochPoint{-sx, sy, 0.0}};
}

/// Jacobian of the full period in the canonical (phi, z) chart by central
/// differences.
inline Eigen::Matrix2d jacobian(const BlochPoint& s, const TopParams& params, double h = 1e-6,
                                const StepOptions& opt = {}) {
    const double phi = s.phi();
    const double z = s.z();
    if (!(std::abs(z) < 1.0 - h)) throw std::domain_error("jacobian: point too close to a pole");
    auto image = [&](double ph, double zz) {
        const auto q = step_point(BlochPoint::from_cylindrical(ph, zz), params, opt);
        return Cylindrical{q.phi(), q.z()};
    };
    const auto pp = image(phi + h, z), pm = image(phi - h, z);
    const auto zp = image(phi, z + h), zm = image(phi, z - h);
    Eigen::Matrix2d J;
    J(0, 0) = wrap_angle(pp.phi - pm.phi) / (2.0 * h);
    J(1, 0) = (pp.z - pm.z) / (2.0 * h);
    J(0, 1) = wrap_angle(zp.phi - zm.phi) / (2.0 * h);
    J(1, 1) = (zp.z - zm.z) / (2.0 * h);
    return J;
}

/// Benettin estimate: a companion point at distance delta is carried along,
/// the separation is renormalised every step, and the mean log stretch per
/// step is returned.
inline double lyapunov_exponent(const BlochPoint& s, const TopParams& params, int iters = 2000,
                                double delta = 1e-7, const StepOptions& opt = {}) {
    if (iters < 10) throw std::invalid_argument("lyapunov_exponent: iters must be >= 10");
    if (!(delta > 0.0)) throw std::invalid_argument("lyapunov_exponent: delta must be > 0");
    Eigen::Vector3d x(s.sx, s.sy, s.sz);
    x.normalize();
    Eigen::Vector3d a(0.48, 0.6, 0.64);
    Eigen::Vector3d u = a - a.dot(x) * x;
    if (u.norm() < 1e-3) {
        a = Eigen::Vector3d(0.64, -0.48, 0.6);
        u = a - a.dot(x) * x;
    }
    Eigen::Vector3d y = (x + delta * u.normalized()).normalized();
    double sum = 0.0;
    for (int i = 0; i < iters; ++i) {
        const auto fx = step_point({x[0], x[1], x[2]}, params, opt);
        const auto fy = step_point({y[0], y[1], y[2]}, params, opt);
        x = Eigen::Vector3d(fx.sx, fx.sy, fx.sz).normalized();
        Eigen::Vector3d yy = Eigen::Vector3d(fy.sx, fy.sy, fy.sz).normalized();
        Eigen::Vector3d sep = yy - x;
        double d = sep.norm();
        if (d == 0.0) {
            // Collapsed onto the reference orbit (sink); restart the separation.
            sum += std::log(std::numeric_limits<double>::min());
            sep = a - a.dot(x) * x;
            d = sep.norm();
        } else {
            sum += std::log(d / delta);
        }
        y = (x + delta * sep / d).normalized();
    }
    return sum / iters;
}

// ---------------------------------------------------------------------------
// Sampling and ensembles

/// Area-uniform points on the sphere: z ~ U[-1, 1], phi ~ U(-pi, pi].
inline std::vector<BlochPoint> uniform_sphere_sample(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> uphi(-pi, pi);
    std::vector<BlochPoint> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double z = uz(rng);
        const double phi = uphi(rng);
        pts.push_back(BlochPoint::from_cylindrical(phi, z));
    }
    return pts;
}

/// Iterates every point independently for `iters` periods.
inline std::vector<IntensityState> propagate_ensemble(const std::vector<BlochPoint>& points,
                                                      const TopParams& params, int iters,
                                                      const StepOptions& opt = {}) {
    if (points.empty()) throw std::invalid_argument("propagate_ensemble: no points");
    if (iters < 0) throw std::invalid_argument("propagate_ensemble: iters must be >= 0");
    std::vector<IntensityState> out(points.size());
    const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        IntensityState st{points[static_cast<std::size_t>(i)], 1.0};
        for (int j = 0; j < iters; ++j) {
            st = step(st, params, opt);
            st.point = st.point.normalized();
        }
        out[static_cast<std::size_t>(i)] = st;
    }
    return out;
}

/// Backwards counterpart of propagate_ensemble.
inline std::vector<IntensityState> propagate_ensemble_backwards(const std::vector<BlochPoint>& points,
                                                                const TopParams& params, int iters,
                                                                const StepOptions& opt = {}) {
    if (points.empty()) throw std::invalid_argument("propagate_ensemble_backwards: no points");
    std::vector<IntensityState> out(points.size());
    const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        IntensityState st{points[static_cast<std::size_t>(i)], 1.0};
        for (int j = 0; j < iters; ++j) {
            st = inverse_step(st, params, opt);
            st.point = st.point.normalized();
        }
        out[static_cast<std::size_t>(i)] = st;
    }
    return out;
}

/// Poincare orbits from the given seeds; orbit[i][j] is the j-th iterate.
inline std::vector<std::vector<BlochPoint>> poincare_orbits(const std::vector<BlochPoint>& seeds,
                                                            const TopParams& params, int iters,
                                                            bool backwards = false,
                                                            const StepOptions& opt = {}) {
    std::vector<std::vector<BlochPoint>> orbits(seeds.size());
    const auto n = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        auto& orb = orbits[static_cast<std::size_t>(i)];
        orb.reserve(static_cast<std::size_t>(iters) + 1);
        IntensityState st{seeds[static_cast<std::size_t>(i)], 1.0};
        orb.push_back(st.point);
        for (int j = 0; j < iters; ++j) {
            st = backwards ? inverse_step(st, params, opt) : step(st, params, opt);
            st.point = st.point.normalized();
            st.n = 1.0;
            orb.push_back(st.point);
        }
    }
    return orbits;
}

/// Number of grid cells holding at least one point (box-counting occupancy).
inline std::size_t occupied_cells(const std::vector<BlochPoint>& points, const GridSpec& grid) {
    std::vector<char> hit(grid.size(), 0);
    for (const auto& q : points) {
        const auto c = to_cylindrical(q);
        int i = static_cast<int>((c.phi + pi) / (2.0 * pi) * grid.n_phi);
        int j = static_cast<int>((c.z + 1.0) / 2.0 * grid.n_z);
        i = std::clamp(i, 0, grid.n_phi - 1);
        j = std::clamp(j, 0, grid.n_z - 1);
        hit[grid.index(i, j)] = 1;
    }
    std::size_t count = 0;
    for (char h : hit) count += static_cast<std::size_t>(h);
    return count;
}

// ---------------------------------------------------------------------------
// Grid sweeps

/// Final intensity n after `iters` periods as a function of the initial
/// cell centre.
inline GridField intensity_field(const GridSpec& grid, const TopParams& params, int iters,
                                 const StepOptions& opt = {}) {
    grid.validate();
    if (iters < 1) throw std::invalid_argument("intensity_field: iters must be >= 1");
    GridField field(grid);
    const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
    for (long idx = 0; idx < n; ++idx) {
        IntensityState st{grid.point(static_cast<std::size_t>(idx)), 1.0};
        for (int j = 0; j < iters; ++j) {
            st = step(st, params, opt);
            st.point = st.point.normalized();
        }
        field.values[static_cast<std::size_t>(idx)] = st.n;
    }
    return field;
}

inline GridField lyapunov_field(const GridSpec& grid, const TopParams& params, int iters = 2000,
                                double delta = 1e-7, const StepOptions& opt = {}) {
    grid.validate();
    GridField field(grid);
    const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long idx = 0; idx < n; ++idx) {
        field.values[static_cast<std::size_t>(idx)] =
            lyapunov_exponent(grid.point(static_cast<std::size_t>(idx)), params, iters, delta, opt);
    }
    return field;
}

// ---------------------------------------------------------------------------
// Strange-attractor skeleton

struct Skeleton {
    std::vector<BlochPoint> polyline;  // closed curve, first point not repeated
    BlochPoint centre;                 // image of the north pole
    double winding = 0.0;              // turns of the curve about the centre, pole to pole, both halves
    int phi_cut_crossings = 0;         // wraps of the plain azimuth through the +-pi cut
};

/// Number of times phi wraps through the +-pi cut along a closed polyline.
inline int phi_cut_crossings(const std::vector<BlochPoint>& polyline) {
    int crossings = 0;
    for (std::size_t i = 0; i < polyline.size(); ++i) {
        const double a = polyline[i].phi();
        const double b = polyline[(i + 1) % polyline.size()].phi();
        if (std::abs(b - a) > pi) ++crossings;
    }
    return crossings;
}

/// Net unwrapped azimuth, in turns, of an open polyline about the axis c.
inline double turns_about(const std::vector<BlochPoint>& path, const BlochPoint& c) {
    const Eigen::Vector3d axis = Eigen::Vector3d(c.sx, c.sy, c.sz).normalized();
    Eigen::Vector3d e1 = axis.unitOrthogonal();
    const Eigen::Vector3d e2 = axis.cross(e1);
    double total = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Eigen::Vector3d q(path[i].sx, path[i].sy, path[i].sz);
        const double psi = std::atan2(q.dot(e2), q.dot(e1));
        if (i > 0) total += wrap_angle(psi - prev);
        prev = psi;
    }
    return total / (2.0 * pi);
}

/// Image of the meridian great circle sx^2 + sz^2 = 1 under the torsion with
/// strength k followed by the Hermitian half-period rotation about x by
/// p tau / 2. The gain/loss term is ignored on purpose: the skeleton lives in
/// the Hermitian map. The winding counts the turns of each pole-to-pole half
/// about the image of the north pole.
inline Skeleton great_circle_skeleton(const TopParams& params, int n_samples) {
    if (n_samples < 100) throw std::invalid_argument("great_circle_skeleton: n_samples must be >= 100");
    TopParams hermitian = params;
    hermitian.gamma = 0.0;
    hermitian.epsilon = 0.0;
    const double t = 0.5 * params.tau;
    auto image = [&](const BlochPoint& s) {
        return free_flow_closed(kick_map(s, params.k), hermitian, t).point;
    };
    Skeleton sk;
    sk.polyline.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double beta = 2.0 * pi * i / n_samples;
        sk.polyline.push_back(image(BlochPoint{std::cos(beta), 0.0, std::sin(beta)}));
    }
    sk.centre = image(BlochPoint{0.0, 0.0, 1.0});
    sk.phi_cut_crossings = phi_cut_crossings(sk.polyline);
    for (double side : {1.0, -1.0}) {
        std::vector<BlochPoint> half;
        const int m = n_samples / 2;
        for (int i = 0; i <= m; ++i) {
            const double beta = -0.5 * pi + pi * (i + 0.5) / (m + 1);
            half.push_back(image(BlochPoint{side * std::cos(beta), 0.0, std::sin(beta)}));
        }
        sk.winding += std::abs(turns_about(half, sk.centre));
    }
    return sk;
}

}  // namespace ptkt::classical
