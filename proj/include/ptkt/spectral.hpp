// spectral.hpp — eigenvalues and quasienergies of non-normal Floquet matrices,
// Schur forms ordered by growth rate, and resolvent-norm grids. The dense
// eigenproblems go through LAPACK, several times faster than the Eigen
// solvers at the matrix sizes used for level statistics.

#pragma once

#include "ptkt/core_types.hpp"
#include "ptkt/floquet.hpp"

#include <Eigen/Dense>

#ifndef LAPACK_COMPLEX_CPP
#define LAPACK_COMPLEX_CPP
#endif
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ptkt {

// ---------------------------------------------------------------------------
// Eigenvalues and quasienergies

struct ComplexSpectrum {
    VectorC eigenvalues;
    std::optional<MatrixC> eigenvectors;  // columns, unit 2-norm
    double eigvec_condition = 1.0;        // 1-norm condition estimate of the eigenvector matrix
};

struct EigOptions {
    bool eigenvectors = false;
    bool balance = true;  // permute and scale before the QR iteration
};

/// Dense non-Hermitian eigensolver (LAPACK zgeevx).
inline ComplexSpectrum eig(const MatrixC& f, const EigOptions& opt = {}) {
    if (f.rows() != f.cols() || f.rows() == 0) throw std::invalid_argument("eig: matrix must be square and non-empty");
    if (!f.allFinite()) throw NumericalError("eig: non-finite input");
    const auto n = static_cast<lapack_int>(f.rows());
    MatrixC a = f;
    ComplexSpectrum spec;
    spec.eigenvalues.resize(n);
    MatrixC vr;
    if (opt.eigenvectors) vr.resize(n, n);
    lapack_int ilo = 0, ihi = 0;
    double abnrm = 0.0;
    Eigen::VectorXd scale(n), rconde(n), rcondv(n);
    const lapack_int info = LAPACKE_zgeevx(
        LAPACK_COL_MAJOR, opt.balance ? 'B' : 'N', 'N', opt.eigenvectors ? 'V' : 'N', 'N', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n,
        reinterpret_cast<lapack_complex_double*>(spec.eigenvalues.data()), nullptr, 1,
        opt.eigenvectors ? reinterpret_cast<lapack_complex_double*>(vr.data()) : nullptr, n, &ilo, &ihi,
        scale.data(), &abnrm, rconde.data(), rcondv.data());
    if (info > 0) throw NumericalError("eig: QR iteration failed to converge at eigenvalue " + std::to_string(info));
    if (info < 0) throw std::invalid_argument("eig: bad argument " + std::to_string(-info));
    if (opt.eigenvectors) {
        Eigen::PartialPivLU<MatrixC> lu(vr);
        const double rc = lu.rcond();
        spec.eigvec_condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
        spec.eigenvectors = std::move(vr);
    }
    return spec;
}

/// E = i ln(lambda) on the principal branch: Re E = -arg(lambda) in (-pi, pi],
/// Im E = ln|lambda|, so growing modes have Im E > 0.
inline cplx quasienergy(cplx lambda) {
    if (lambda == cplx(0.0, 0.0)) throw std::domain_error("quasienergy: zero eigenvalue");
    return {wrap_angle(-std::arg(lambda)), std::log(std::abs(lambda))};
}

inline std::vector<cplx> quasienergies(const VectorC& eigenvalues) {
    std::vector<cplx> e;
    e.reserve(static_cast<std::size_t>(eigenvalues.size()));
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) e.push_back(quasienergy(eigenvalues(i)));
    return e;
}

inline std::vector<cplx> quasienergies(const ComplexSpectrum& s) { return quasienergies(s.eigenvalues); }

/// Greedy nearest pairing of two eigenvalue multisets; returns the largest
/// matched distance (infinity for size mismatch).
inline double multiset_distance(const VectorC& a, const VectorC& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<char> used(static_cast<std::size_t>(b.size()), 0);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index arg = -1;
        for (Eigen::Index j = 0; j < b.size(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double d = std::abs(a(i) - b(j));
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        used[static_cast<std::size_t>(arg)] = 1;
        worst = std::max(worst, best);
    }
    return worst;
}

/// Largest violation of the PT pairing rule: each eigenvalue is either
/// unimodular (within unit_tol) or has a partner with lambda1 conj(lambda2) = 1.
inline double pt_pairing_violation(const VectorC& ev, double unit_tol = 1e-6) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(std::abs(ev(i)) - 1.0) <= unit_tol) continue;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < ev.size(); ++j) {
            if (j == i) continue;
            best = std::min(best, std::abs(ev(i) * std::conj(ev(j)) - 1.0));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Ordered Schur form

struct SchurForm {
    MatrixC q;                  // unitary Schur vectors
    MatrixC t;                  // upper triangular
    std::vector<double> key;    // Im E of each diagonal entry, in order

    [[nodiscard]] std::size_t count_growing(double tol = 0.0) const {
        return static_cast<std::size_t>(std::count_if(key.begin(), key.end(), [&](double k) { return k > tol; }));
    }
};

/// Complex Schur decomposition F = Q T Q^H with the diagonal sorted by
/// descending Im E = ln|lambda|; the leading columns of Q span the invariant
/// subspace of the fastest-growing modes. LAPACK zgees, then a selection sort
/// of the diagonal by ztrexc adjacent exchanges.
inline SchurForm schur_sorted(const MatrixC& f) {
    if (f.rows() != f.cols() || f.rows() == 0) throw std::invalid_argument("schur_sorted: matrix must be square");
    if (!f.allFinite()) throw NumericalError("schur_sorted: non-finite input");
    const auto n = static_cast<lapack_int>(f.rows());
    SchurForm s{MatrixC(n, n), f, {}};
    VectorC w(n);
    lapack_int sdim = 0;
    lapack_int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n,
                                    reinterpret_cast<lapack_complex_double*>(s.t.data()), n, &sdim,
                                    reinterpret_cast<lapack_complex_double*>(w.data()),
                                    reinterpret_cast<lapack_complex_double*>(s.q.data()), n);
    if (info != 0) throw NumericalError("schur_sorted: zgees failed, info " + std::to_string(info));
    auto key = [&](lapack_int i) {
        const double m = std::abs(s.t(i, i));
        return m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity();
    };
    for (lapack_int pos = 0; pos < n; ++pos) {
        lapack_int best = pos;
        double best_key = key(pos);
        for (lapack_int j = pos + 1; j < n; ++j) {
            const double kj = key(j);
            if (kj > best_key) {
                best_key = kj;
                best = j;
            }
        }
        if (best == pos) continue;
        info = LAPACKE_ztrexc(LAPACK_COL_MAJOR, 'V', n, reinterpret_cast<lapack_complex_double*>(s.t.data()), n,
                              reinterpret_cast<lapack_complex_double*>(s.q.data()), n, best + 1, pos + 1);
        if (info != 0) throw NumericalError("schur_sorted: reordering failed, info " + std::to_string(info));
    }
    s.t.triangularView<Eigen::StrictlyLower>().setZero();
    s.key.resize(static_cast<std::size_t>(n));
    for (lapack_int i = 0; i < n; ++i) s.key[static_cast<std::size_t>(i)] = key(i);
    return s;
}

/// || F Q_j - Q_j T_jj || for the leading j Schur vectors.
inline double invariant_subspace_residual(const MatrixC& f, const SchurForm& s, Eigen::Index j) {
    if (j <= 0) return 0.0;
    return (f * s.q.leftCols(j) - s.q.leftCols(j) * s.t.topLeftCorner(j, j)).norm();
}

// ---------------------------------------------------------------------------
// Resolvent norm

inline constexpr double resolvent_cap = 1e300;

struct ResolventGrid {
    std::vector<double> re;      // node abscissae
    std::vector<double> im;      // node ordinates
    std::vector<double> values;  // im-row major, re fastest
    // Values above this are below the rounding level eps * ||F|| of sigma_min
    // and are not resolved in double precision.
    double resolution_limit = resolvent_cap;

    [[nodiscard]] double at(std::size_t i_re, std::size_t j_im) const { return values[j_im * re.size() + i_re]; }
};

/// Singular values in descending order, LAPACK zgesvd without vectors.
inline Eigen::VectorXd singular_values(MatrixC a) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    Eigen::VectorXd sv(std::min(m, n));
    std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(1, std::min(m, n) - 1)));
    const lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n,
                                           reinterpret_cast<lapack_complex_double*>(a.data()), m, sv.data(), nullptr,
                                           1, nullptr, 1, superb.data());
    if (info != 0) throw NumericalError("zgesvd failed, info = " + std::to_string(info));
    return sv;
}

inline double resolvent_norm(const MatrixC& f, cplx z) {
    MatrixC a = f;
    a.diagonal().array() -= z;
    const auto sv = singular_values(std::move(a));
    const double smin = sv(sv.size() - 1);
    if (!(smin > 1.0 / resolvent_cap)) return resolvent_cap;
    return 1.0 / smin;
}

/// 1 / (n eps ||F||_2): the largest resolvent norm a backward-stable SVD of
/// the double-precision F can resolve.
inline double resolvent_resolution_limit(const MatrixC& f) {
    return 1.0 / (static_cast<double>(f.rows()) * std::numeric_limits<double>::epsilon() * singular_values(f)(0));
}

/// ||(F - lambda I)^{-1}||_2 = 1/sigma_min on an inclusive node grid.
inline ResolventGrid resolvent_grid(const MatrixC& f, double re_min, double re_max, double im_min,
                                    double im_max, int n_re, int n_im) {
    if (n_re < 2 || n_im < 2) throw std::invalid_argument("resolvent_grid: resolution must be >= 2 per axis");
    if (!(re_max > re_min) || !(im_max > im_min)) throw std::invalid_argument("resolvent_grid: empty range");
    ResolventGrid g;
    for (int i = 0; i < n_re; ++i) g.re.push_back(re_min + (re_max - re_min) * i / (n_re - 1));
    for (int j = 0; j < n_im; ++j) g.im.push_back(im_min + (im_max - im_min) * j / (n_im - 1));
    g.values.assign(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im), 0.0);
    g.resolution_limit = resolvent_resolution_limit(f);
    const long total = static_cast<long>(g.values.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long idx = 0; idx < total; ++idx) {
        const auto i = static_cast<std::size_t>(idx % n_re);
        const auto j = static_cast<std::size_t>(idx / n_re);
        g.values[static_cast<std::size_t>(idx)] = resolvent_norm(f, cplx(g.re[i], g.im[j]));
    }
    return g;
}

}  // namespace ptkt
