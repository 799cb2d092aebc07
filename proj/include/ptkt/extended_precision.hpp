// extended_precision.hpp — the kicked-top Floquet operator in a generic
// complex scalar type, instantiated for IEEE quad precision.
//
// For gain/loss rates where ||F|| reaches 1e8 and beyond, identities such as
// J conj(F) J F = I cancel terms of size ||F||^2, and rounding F to double
// already destroys them. Building and checking F in quad precision keeps
// those identities testable. Requires GCC's libquadmath.

#pragma once

#include "ptkt/core_types.hpp"
#include "ptkt/floquet.hpp"
#include "ptkt/spectral.hpp"

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/Dense>

namespace ptkt::ext {

using quad_complex = boost::multiprecision::complex128;

template <typename Complex>
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Complex>
using real_of = decltype(abs(Complex()));

namespace detail {
template <typename Complex>
real_of<Complex> one_norm(const Matrix<Complex>& a) {
    using Real = real_of<Complex>;
    Real best = 0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        Real s = 0;
        for (Eigen::Index r = 0; r < a.rows(); ++r) s += abs(a(r, c));
        if (s > best) best = s;
    }
    return best;
}
}  // namespace detail

/// Scaling and squaring with a Taylor polynomial, truncated once a term
/// falls below the working epsilon. Slow but type-agnostic.
template <typename Complex>
Matrix<Complex> expm(const Matrix<Complex>& a) {
    using Real = real_of<Complex>;
    const Eigen::Index n = a.rows();
    int squarings = 0;
    Real norm = detail::one_norm(a);
    while (norm > Real(0.5)) {
        norm /= 2;
        ++squarings;
    }
    Real scale = 1;
    for (int i = 0; i < squarings; ++i) scale /= 2;
    const Matrix<Complex> as = a * Complex(scale);
    Matrix<Complex> result = Matrix<Complex>::Identity(n, n);
    Matrix<Complex> term = Matrix<Complex>::Identity(n, n);
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real term_bound = 1;
    for (int k = 1; k < 200; ++k) {
        term = (term * as).eval() * Complex(Real(1) / Real(k));
        result += term;
        term_bound = term_bound * norm / Real(k);
        if (term_bound < eps) break;
    }
    for (int i = 0; i < squarings; ++i) result = (result * result).eval();
    return result;
}

/// Same construction as ptkt::build_floquet, carried out in `Complex`.
template <typename Complex>
Matrix<Complex> build_floquet(const TopParams& prm, FloquetVariant variant = FloquetVariant::standard) {
    using Real = real_of<Complex>;
    prm.validate();
    const int d = prm.spin.dim();
    const Real l = Real(prm.spin.twice()) / 2;
    Matrix<Complex> lplus = Matrix<Complex>::Zero(d, d), lz = Matrix<Complex>::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const Real m = l - Real(i);
        lz(i, i) = Complex(m);
        if (i > 0) lplus(i - 1, i) = Complex(sqrt(l * (l + 1) - m * (m + 1)));
    }
    const Matrix<Complex> lminus = lplus.adjoint();
    const Matrix<Complex> lx = (lplus + lminus) * Complex(Real(1) / 2);
    const Complex minus_i(Real(0), Real(-1));
    const Real half_tau = Real(prm.tau) / 2;
    const Matrix<Complex> gen =
        (lx * Complex(Real(prm.p)) + lz * Complex(Real(prm.epsilon), Real(prm.gamma))) * (minus_i * Complex(half_tau));
    const Matrix<Complex> e = expm<Complex>(gen);
    Matrix<Complex> kick = Matrix<Complex>::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const Real m = l - Real(i);
        const Real ph = -Real(prm.k) / l * m * m;
        kick(i, i) = Complex(cos(ph), sin(ph));
    }
    if (variant == FloquetVariant::modified) {
        const Matrix<Complex> ly = (lplus - lminus) * Complex(Real(0), Real(-1) / 2);
        const Matrix<Complex> ly2 = ly * ly;
        kick = (kick * expm<Complex>(ly2 * (minus_i * Complex(Real(prm.eta) / l)))).eval();
    }
    return e * kick * e;
}

/// || J conj(F) J F - I ||_max in the scalar type of F.
template <typename Complex>
real_of<Complex> pt_defect(const Matrix<Complex>& f) {
    using Real = real_of<Complex>;
    const Eigen::Index d = f.rows();
    Matrix<Complex> jfj(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) jfj(r, c) = conj(f(d - 1 - r, d - 1 - c));
    const Matrix<Complex> prod = jfj * f;
    Real worst = 0;
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
            const Real v = abs(prod(r, c) - (r == c ? Complex(1) : Complex(0)));
            if (v > worst) worst = v;
        }
    return worst;
}

/// ||(F - z)^{-1}||_2 by a one-sided Jacobi SVD in the scalar type of F.
/// Slow (about a second per point at dimension 41 in quad); meant for
/// spot checks of values beyond the double-precision resolution limit.
template <typename Complex>
double resolvent_norm(const Matrix<Complex>& f, cplx z) {
    Matrix<Complex> a = f;
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, i) -= Complex(z.real(), z.imag());
    const Eigen::JacobiSVD<Matrix<Complex>> svd(a);
    const auto smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > 0)) return resolvent_cap;
    return static_cast<double>(1 / smin);
}

/// Rounds an extended-precision matrix to double.
template <typename Complex>
MatrixC to_double(const Matrix<Complex>& f) {
    MatrixC out(f.rows(), f.cols());
    for (Eigen::Index r = 0; r < f.rows(); ++r)
        for (Eigen::Index c = 0; c < f.cols(); ++c)
            out(r, c) = cplx(static_cast<double>(f(r, c).real()), static_cast<double>(f(r, c).imag()));
    return out;
}

}  // namespace ptkt::ext
