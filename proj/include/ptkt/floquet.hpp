// floquet.hpp — spin operators, the non-unitary kicked-top Floquet matrices,
// parity, the PT defect, and the unitary / PT triadic Baker maps.

#pragma once

#include "ptkt/core_types.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ptkt {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

/// Row 0 is m = L for the top and position 0 for the Baker map.
enum class Basis { lz, position };

inline const char* basis_name(Basis b) { return b == Basis::lz ? "lz" : "position"; }

struct AngularMomentum {
    MatrixC lx, ly, lz;
};

/// Spin-L matrices in the Lz eigenbasis with the standard normalisation
/// [Lx, Ly] = i Lz.
inline AngularMomentum angular_momentum(SpinL spin) {
    const int d = spin.dim();
    const double l = spin.value();
    MatrixC lplus = MatrixC::Zero(d, d);
    AngularMomentum am;
    am.lz = MatrixC::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const double m = spin.m_of_row(i);
        am.lz(i, i) = m;
        // L+ |m> = c |m+1>, and m+1 lives in row i-1.
        if (i > 0) lplus(i - 1, i) = std::sqrt(l * (l + 1.0) - m * (m + 1.0));
    }
    const MatrixC lminus = lplus.adjoint();
    am.lx = 0.5 * (lplus + lminus);
    am.ly = cplx(0.0, -0.5) * (lplus - lminus);
    return am;
}

/// Exchange matrix |m> -> |-m>.
inline MatrixC parity_matrix(SpinL spin) {
    const int d = spin.dim();
    MatrixC j = MatrixC::Zero(d, d);
    for (int i = 0; i < d; ++i) j(i, d - 1 - i) = 1.0;
    return j;
}

// ---------------------------------------------------------------------------
// Matrix exponential

enum class ExpMethod { automatic, eigen, pade };

struct ExpDiagnostics {
    ExpMethod used = ExpMethod::eigen;
    double condition = 1.0;  // eigenvector condition estimate (1 for Hermitian)
};

/// exp(-i (p Lx + (eps + i gamma) Lz) t).
///
/// The Hermitian case (gamma = 0) goes through a unitary eigendecomposition.
/// Otherwise the eigendecomposition is used while the eigenvector basis is
/// well conditioned; beyond a condition number of 1e8, for instance near
/// the exceptional point, scaling-and-squaring Pade takes over. The 2x2
/// generator's eigenvector condition raised to the power 2L predicts the
/// full one, so hopeless cases skip the eigensolver entirely.
inline MatrixC exp_generator(const AngularMomentum& am, double p, double epsilon, double gamma,
                             double t, ExpMethod method = ExpMethod::automatic,
                             ExpDiagnostics* diag = nullptr) {
    const int d = static_cast<int>(am.lz.rows());
    const cplx minus_i(0.0, -1.0);
    const MatrixC h = p * am.lx + cplx(epsilon, gamma) * am.lz;
    ExpDiagnostics local;

    if (gamma == 0.0 && method != ExpMethod::pade) {
        Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
        if (es.info() != Eigen::Success) throw NumericalError("exp_generator: Hermitian eigensolver failed");
        const VectorC phase = (minus_i * t * es.eigenvalues().cast<cplx>()).array().exp();
        local.used = ExpMethod::eigen;
        if (diag) *diag = local;
        return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    }

    constexpr double cond_limit = 1e8;
    bool try_eigen = method == ExpMethod::eigen;
    if (method == ExpMethod::automatic) {
        // 2x2 generator: p sx/2 + (eps + i gamma) sz/2; eigenvector condition
        // of [[c, p], [p, -c]] with c = eps + i gamma.
        Eigen::Matrix2cd g2;
        g2 << cplx(epsilon, gamma), p, p, -cplx(epsilon, gamma);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es2(g2);
        const Eigen::Matrix2cd v = es2.eigenvectors();
        const double disc = std::abs(es2.eigenvalues()(0) - es2.eigenvalues()(1));
        double log_kappa = std::numeric_limits<double>::infinity();
        if (disc > 1e-12 && std::abs(v.determinant()) > 1e-14) {
            const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(v);
            log_kappa = std::log(svd.singularValues()(0) / svd.singularValues()(1));
        }
        try_eigen = (d - 1) * log_kappa < std::log(cond_limit);
    }

    if (try_eigen) {
        Eigen::ComplexEigenSolver<MatrixC> es(h);
        if (es.info() == Eigen::Success) {
            const MatrixC& v = es.eigenvectors();
            Eigen::PartialPivLU<MatrixC> lu(v);
            const double rc = lu.rcond();
            local.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
            if (local.condition <= cond_limit || method == ExpMethod::eigen) {
                const VectorC phase = (minus_i * t * es.eigenvalues()).array().exp();
                local.used = ExpMethod::eigen;
                if (diag) *diag = local;
                return v * phase.asDiagonal() * lu.inverse();
            }
        } else if (method == ExpMethod::eigen) {
            throw NumericalError("exp_generator: eigensolver failed");
        }
    }

    const MatrixC a = (minus_i * t) * h;
    MatrixC e = a.exp();
    if (!e.allFinite()) throw NumericalError("exp_generator: Pade exponential overflowed");
    local.used = ExpMethod::pade;
    if (diag) *diag = local;
    return e;
}

// ---------------------------------------------------------------------------
// Floquet operators

enum class FloquetVariant { standard, modified };

struct FloquetSpec {
    TopParams params;
    FloquetVariant variant = FloquetVariant::standard;
    ExpMethod exp_method = ExpMethod::automatic;
};

struct FloquetResult {
    MatrixC f;
    ExpDiagnostics exp_diag;
};

/// F = E K_z (K_y) E with E = exp(-i(p Lx + (eps + i gamma) Lz) tau/2),
/// K_z = exp(-i (k/L) Lz^2) and, for the modified variant,
/// K_y = exp(-i (eta/L) Ly^2).
inline FloquetResult build_floquet_checked(const FloquetSpec& spec) {
    const TopParams& prm = spec.params;
    prm.validate();
    const auto am = angular_momentum(prm.spin);
    const double l = prm.spin.value();
    const int d = prm.spin.dim();

    FloquetResult res;
    const MatrixC e = exp_generator(am, prm.p, prm.epsilon, prm.gamma, 0.5 * prm.tau,
                                    spec.exp_method, &res.exp_diag);

    VectorC kz(d);
    for (int i = 0; i < d; ++i) {
        const double m = prm.spin.m_of_row(i);
        kz(i) = std::exp(cplx(0.0, -prm.k / l * m * m));
    }
    MatrixC kick = kz.asDiagonal();
    if (spec.variant == FloquetVariant::modified) {
        Eigen::SelfAdjointEigenSolver<MatrixC> es(am.ly);
        if (es.info() != Eigen::Success) throw NumericalError("build_floquet: Ly eigensolver failed");
        const Eigen::VectorXd ev = es.eigenvalues();
        VectorC ph(d);
        for (int i = 0; i < d; ++i) ph(i) = std::exp(cplx(0.0, -prm.eta / l * ev(i) * ev(i)));
        const MatrixC ky = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
        kick = kz.asDiagonal() * ky;
    }
    res.f = e * kick * e;
    if (!res.f.allFinite()) throw NumericalError("build_floquet: non-finite entries");
    return res;
}

inline MatrixC build_floquet(const FloquetSpec& spec) { return build_floquet_checked(spec).f; }

inline MatrixC build_floquet(const TopParams& params,
                             FloquetVariant variant = FloquetVariant::standard) {
    return build_floquet(FloquetSpec{params, variant, ExpMethod::automatic});
}

/// || J conj(F) J F - I ||_max, zero for a PT-symmetric map.
inline double pt_defect(const MatrixC& f, const MatrixC& j) {
    if (f.rows() != f.cols() || j.rows() != f.rows())
        throw std::invalid_argument("pt_defect: dimension mismatch");
    Eigen::PartialPivLU<MatrixC> lu(f);
    if (!(lu.rcond() > 1e-300)) throw NumericalError("pt_defect: F is singular");
    const MatrixC prod = j * f.conjugate() * j * f;
    return (prod - MatrixC::Identity(f.rows(), f.cols())).cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const MatrixC& f) {
    return (f.adjoint() * f - MatrixC::Identity(f.rows(), f.cols())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Triadic Baker map

/// Half-shifted unitary DFT, (F_N)_{mn} = N^{-1/2} exp(-2 pi i (m+1/2)(n+1/2)/N).
inline MatrixC dft_matrix(int n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: N must be >= 1");
    MatrixC f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            // Reduce the phase modulo 2 pi exactly in integer arithmetic:
            // (2a+1)(2b+1)/(4N) turns.
            const auto num = static_cast<std::int64_t>(2 * a + 1) * (2 * b + 1);
            const auto den = static_cast<std::int64_t>(4) * n;
            const double turns = static_cast<double>(num % den) / static_cast<double>(den);
            const cplx v = scale * std::exp(cplx(0.0, -2.0 * pi * turns));
            f(a, b) = v;
            f(b, a) = v;
        }
    }
    return f;
}

/// B = F_N^{-1} blockdiag(gamma F_{N/3}, F_{N/3}, F_{N/3} / gamma).
inline MatrixC baker(int n, double gamma) {
    if (n < 3 || n % 3 != 0) throw std::invalid_argument("baker: N must be a positive multiple of 3");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("baker: gamma must lie in (0, 1]");
    const int m = n / 3;
    const MatrixC f3 = dft_matrix(m);
    MatrixC block = MatrixC::Zero(n, n);
    block.block(0, 0, m, m) = gamma * f3;
    block.block(m, m, m, m) = f3;
    block.block(2 * m, 2 * m, m, m) = f3 / gamma;
    return dft_matrix(n).adjoint() * block;
}

// ---------------------------------------------------------------------------
// Matrix dump: header line `dim,basis,params-hash`, then one row per matrix
// row with interleaved re,im pairs.

inline void write_matrix_csv(std::ostream& out, const MatrixC& m, Basis basis, std::uint64_t hash) {
    out << "dim,basis,params-hash\n" << m.rows() << ',' << basis_name(basis) << ',' << hash << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
        }
        out << '\n';
    }
}

struct MatrixDump {
    MatrixC m;
    Basis basis = Basis::lz;
    std::uint64_t hash = 0;
};

inline MatrixDump read_matrix_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "dim,basis,params-hash")
        throw std::invalid_argument("read_matrix_csv: bad header");
    if (!std::getline(in, line)) throw std::invalid_argument("read_matrix_csv: missing meta line");
    MatrixDump dump;
    std::istringstream meta(line);
    std::string dim_s, basis_s, hash_s;
    std::getline(meta, dim_s, ',');
    std::getline(meta, basis_s, ',');
    std::getline(meta, hash_s, ',');
    const int dim = std::stoi(dim_s);
    if (dim < 1) throw std::invalid_argument("read_matrix_csv: bad dimension");
    if (basis_s == "lz") dump.basis = Basis::lz;
    else if (basis_s == "position") dump.basis = Basis::position;
    else throw std::invalid_argument("read_matrix_csv: unknown basis " + basis_s);
    dump.hash = std::stoull(hash_s);
    dump.m.resize(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (!std::getline(in, line)) throw std::invalid_argument("read_matrix_csv: truncated");
        std::istringstream row(line);
        std::string re, im;
        for (int c = 0; c < dim; ++c) {
            if (!std::getline(row, re, ',') || !std::getline(row, im, ','))
                throw std::invalid_argument("read_matrix_csv: short row");
            dump.m(r, c) = cplx(std::stod(re), std::stod(im));
        }
    }
    return dump;
}

/// Binary variant: the same header text line, then dim*dim (re, im) pairs of
/// little-endian doubles in row-major order.
inline void write_matrix_binary(std::ostream& out, const MatrixC& m, Basis basis, std::uint64_t hash) {
    out << "dim,basis,params-hash\n" << m.rows() << ',' << basis_name(basis) << ',' << hash << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double re = m(r, c).real(), im = m(r, c).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof re);
            out.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
}

inline MatrixDump read_matrix_binary(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "dim,basis,params-hash")
        throw std::invalid_argument("read_matrix_binary: bad header");
    std::getline(in, line);
    std::istringstream meta(line);
    std::string dim_s, basis_s, hash_s;
    std::getline(meta, dim_s, ',');
    std::getline(meta, basis_s, ',');
    std::getline(meta, hash_s, ',');
    MatrixDump dump;
    const int dim = std::stoi(dim_s);
    dump.basis = basis_s == "position" ? Basis::position : Basis::lz;
    dump.hash = std::stoull(hash_s);
    dump.m.resize(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            double re = 0.0, im = 0.0;
            in.read(reinterpret_cast<char*>(&re), sizeof re);
            in.read(reinterpret_cast<char*>(&im), sizeof im);
            if (!in) throw std::invalid_argument("read_matrix_binary: truncated");
            dump.m(r, c) = cplx(re, im);
        }
    return dump;
}

}  // namespace ptkt
