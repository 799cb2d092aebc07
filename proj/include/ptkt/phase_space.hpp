// phase_space.hpp — spin coherent states, Husimi distributions of states and
// of Schur subspaces, Bloch-vector expectations and stroboscopic evolution.

#pragma once

#include "ptkt/core_types.hpp"
#include "ptkt/floquet.hpp"
#include "ptkt/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace ptkt {

namespace detail {
/// Log-magnitudes of the coherent-state amplitudes for row n = L - m:
/// 0.5 ln C(2L, n) + (2L - n) ln cos(theta/2) + n ln sin(theta/2).
/// Uses z = cos(theta) to stay accurate near the poles.
inline Eigen::VectorXd coherent_magnitudes(SpinL spin, double z) {
    const int d = spin.dim();
    const int two_l = spin.twice();
    const double c2 = 0.5 * (1.0 + z);  // cos^2(theta/2)
    const double s2 = 0.5 * (1.0 - z);  // sin^2(theta/2)
    const double lc = 0.5 * std::log(c2);
    const double ls = 0.5 * std::log(s2);
    const double lg = std::lgamma(two_l + 1.0);
    Eigen::VectorXd r(d);
    for (int n = 0; n < d; ++n) {
        double e = 0.5 * (lg - std::lgamma(n + 1.0) - std::lgamma(two_l - n + 1.0));
        if (two_l - n > 0) e += (two_l - n) * lc;
        if (n > 0) e += n * ls;
        r(n) = std::exp(e);
    }
    return r;
}
}  // namespace detail

/// Spin coherent state |theta, phi> with amplitudes
/// sqrt(C(2L, L-m)) cos^{L+m}(theta/2) sin^{L-m}(theta/2) e^{+i(L-m)phi}.
/// This phase makes <L>/L = (sin theta cos phi, sin theta sin phi, cos theta).
inline VectorC coherent_state(SpinL spin, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= pi)) throw std::invalid_argument("coherent_state: theta outside [0, pi]");
    const Eigen::VectorXd r = detail::coherent_magnitudes(spin, std::cos(theta));
    VectorC psi(spin.dim());
    for (int n = 0; n < spin.dim(); ++n) psi(n) = r(n) * std::exp(cplx(0.0, n * phi));
    return psi / psi.norm();
}

inline VectorC coherent_state(SpinL spin, const BlochPoint& s) {
    const double z = std::clamp(s.sz / s.norm(), -1.0, 1.0);
    return coherent_state(spin, std::acos(z), s.phi());
}

// ---------------------------------------------------------------------------
// Husimi distributions

enum class HusimiNorm { raw, max_one, integral_one };

namespace detail {
inline void apply_husimi_norm(GridField& g, HusimiNorm norm) {
    if (norm == HusimiNorm::raw) return;
    double s = 0.0;
    if (norm == HusimiNorm::max_one) {
        for (double v : g.values) s = std::max(s, v);
    } else {
        for (double v : g.values) s += v;
        s *= 4.0 * pi / static_cast<double>(g.values.size());  // equal-area cells
    }
    if (s > 0.0)
        for (double& v : g.values) v /= s;
}
}  // namespace detail

/// Mean over the columns of `states` of |<theta, phi|psi>|^2 / <psi|psi> on a
/// (phi, z) grid. Each z-row is a single matrix product against the phase
/// table e^{-i n phi}, n = L - m.
inline GridField husimi_mean(const MatrixC& states, SpinL spin, const GridSpec& grid,
                             HusimiNorm norm = HusimiNorm::max_one) {
    grid.validate();
    const int d = spin.dim();
    if (states.rows() != d) throw std::invalid_argument("husimi: state dimension must be 2L+1");
    if (states.cols() < 1) throw std::invalid_argument("husimi: no states");
    MatrixC unit = states;
    for (Eigen::Index c = 0; c < unit.cols(); ++c) {
        const double nrm = unit.col(c).norm();
        if (!(nrm > 0.0)) throw std::invalid_argument("husimi: zero state");
        unit.col(c) /= nrm;
    }
    MatrixC phase(grid.n_phi, d);
    for (int i = 0; i < grid.n_phi; ++i)
        for (int n = 0; n < d; ++n) phase(i, n) = std::exp(cplx(0.0, -n * grid.phi(i)));

    GridField out(grid);
    const double inv_count = 1.0 / static_cast<double>(unit.cols());
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < grid.n_z; ++j) {
        const Eigen::VectorXd r = detail::coherent_magnitudes(spin, grid.z(j));
        const MatrixC weighted = r.cast<cplx>().asDiagonal() * unit;
        const MatrixC overlaps = phase * weighted;  // n_phi x n_states
        const Eigen::VectorXd row = overlaps.cwiseAbs2().rowwise().sum() * inv_count;
        for (int i = 0; i < grid.n_phi; ++i) out.at(i, j) = row(i);
    }
    detail::apply_husimi_norm(out, norm);
    return out;
}

inline GridField husimi(const VectorC& state, SpinL spin, const GridSpec& grid,
                        HusimiNorm norm = HusimiNorm::max_one) {
    return husimi_mean(MatrixC(state), spin, grid, norm);
}

/// Average Husimi distribution of the Schur vectors whose quasienergies have
/// Im E > threshold (the growing invariant subspace by default).
inline GridField husimi_schur(const SchurForm& schur, SpinL spin, const GridSpec& grid,
                              double threshold = 0.0, HusimiNorm norm = HusimiNorm::max_one) {
    std::vector<Eigen::Index> cols;
    for (std::size_t i = 0; i < schur.key.size(); ++i)
        if (schur.key[i] > threshold) cols.push_back(static_cast<Eigen::Index>(i));
    if (cols.empty()) throw std::invalid_argument("husimi_schur: empty subset");
    MatrixC sub(schur.q.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = schur.q.col(cols[c]);
    return husimi_mean(sub, spin, grid, norm);
}

// ---------------------------------------------------------------------------
// Expectations and evolution

struct BlochExpectation {
    BlochPoint s;
    double norm_sq = 1.0;  // <psi|psi>
};

/// s_j = <psi|L_j|psi> / (L <psi|psi>), using the tridiagonal ladder structure.
inline BlochExpectation expectation_bloch(const VectorC& psi, SpinL spin) {
    const int d = spin.dim();
    if (psi.size() != d) throw std::invalid_argument("expectation_bloch: dimension mismatch");
    const double nsq = psi.squaredNorm();
    if (!(nsq > 0.0)) throw std::invalid_argument("expectation_bloch: zero state");
    const double l = spin.value();
    double lz = 0.0;
    cplx lplus = 0.0;  // <psi|L+|psi>
    for (int i = 0; i < d; ++i) {
        const double m = spin.m_of_row(i);
        lz += m * std::norm(psi(i));
        if (i > 0) lplus += std::conj(psi(i - 1)) * std::sqrt(l * (l + 1.0) - m * (m + 1.0)) * psi(i);
    }
    BlochExpectation e;
    e.norm_sq = nsq;
    e.s = {lplus.real() / (l * nsq), lplus.imag() / (l * nsq), lz / (l * nsq)};
    return e;
}

struct EvolutionStep {
    VectorC state;        // normalised
    double norm_factor;   // ||F psi||^2 / ||psi||^2 for this step
};

/// Repeated application of F with renormalisation after every step.
inline std::vector<EvolutionStep> evolve(const VectorC& psi0, const MatrixC& f, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("evolve: n_steps must be >= 1");
    if (f.cols() != psi0.size()) throw std::invalid_argument("evolve: dimension mismatch");
    const double n0 = psi0.norm();
    if (!(n0 > 0.0)) throw std::invalid_argument("evolve: zero state");
    std::vector<EvolutionStep> out;
    out.reserve(static_cast<std::size_t>(n_steps));
    VectorC cur = psi0 / n0;
    for (int s = 0; s < n_steps; ++s) {
        VectorC next = f * cur;
        const double nsq = next.squaredNorm();
        if (!(nsq > 0.0) || !std::isfinite(nsq)) throw NumericalError("evolve: state norm degenerated");
        next /= std::sqrt(nsq);
        out.push_back({next, nsq});
        cur = std::move(next);
    }
    return out;
}

/// Basis state |m> with m = L - row.
inline VectorC basis_state(SpinL spin, int row) {
    if (row < 0 || row >= spin.dim()) throw std::invalid_argument("basis_state: row out of range");
    VectorC v = VectorC::Zero(spin.dim());
    v(row) = 1.0;
    return v;
}

}  // namespace ptkt
