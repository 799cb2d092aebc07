#include "ptkt/extended_precision.hpp"
#include "ptkt/floquet.hpp"
#include "ptkt/spectral.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ptkt;

namespace {

TopParams make(int twice_l, double p, double gamma, double k, double eps = 0.0, double eta = 0.0) {
    TopParams t;
    t.spin = SpinL::from_twice(twice_l);
    t.p = p;
    t.gamma = gamma;
    t.k = k;
    t.epsilon = eps;
    t.eta = eta;
    return t;
}

double max_abs(const MatrixC& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(AngularMomentum, SpinHalfIsHalfPauli) {
    const auto am = angular_momentum(SpinL::from_twice(1));
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    sz << 1, 0, 0, -1;
    EXPECT_LT(max_abs(am.lx - 0.5 * sx), 1e-15);
    EXPECT_LT(max_abs(am.ly - 0.5 * sy), 1e-15);
    EXPECT_LT(max_abs(am.lz - 0.5 * sz), 1e-15);
}

TEST(AngularMomentum, SpinOne) {
    const auto am = angular_momentum(SpinL::from_twice(2));
    const double r = 1.0 / std::sqrt(2.0);
    MatrixC lx(3, 3);
    lx << 0, r, 0, r, 0, r, 0, r, 0;
    EXPECT_LT(max_abs(am.lx - lx), 1e-15);
    EXPECT_EQ(am.lz(0, 0), cplx(1.0));
    EXPECT_EQ(am.lz(1, 1), cplx(0.0));
    EXPECT_EQ(am.lz(2, 2), cplx(-1.0));
}

TEST(AngularMomentum, CasimirAndCommutators) {
    for (int twice : {1, 2, 7, 40, 400}) {
        const auto spin = SpinL::from_twice(twice);
        const auto am = angular_momentum(spin);
        const double l = spin.value();
        const MatrixC cas = am.lx * am.lx + am.ly * am.ly + am.lz * am.lz;
        EXPECT_LT(max_abs(cas - l * (l + 1) * MatrixC::Identity(spin.dim(), spin.dim())), 1e-12 * l * l);
        const cplx i(0, 1);
        EXPECT_LT(max_abs(am.lx * am.ly - am.ly * am.lx - i * am.lz), 1e-12 * l);
        EXPECT_LT(max_abs(am.ly * am.lz - am.lz * am.ly - i * am.lx), 1e-12 * l);
        EXPECT_LT(max_abs(am.lz * am.lx - am.lx * am.lz - i * am.ly), 1e-12 * l);
    }
}

TEST(Parity, ConjugationTable) {
    const auto spin = SpinL::from_twice(9);
    const auto am = angular_momentum(spin);
    const MatrixC j = parity_matrix(spin);
    EXPECT_EQ(max_abs(j * j - MatrixC::Identity(spin.dim(), spin.dim())), 0.0);
    EXPECT_LT(max_abs(j * am.lz * j + am.lz), 1e-14);
    // PT = J followed by complex conjugation.
    EXPECT_LT(max_abs(j * am.lx.conjugate() * j - am.lx), 1e-14);
    EXPECT_LT(max_abs(j * am.ly.conjugate() * j - am.ly), 1e-14);
    EXPECT_LT(max_abs(j * am.lz.conjugate() * j + am.lz), 1e-14);
}

TEST(Floquet, SpinHalfReducesToFreeEvolution) {
    // Lz^2 = 1/4 so the kick is the global phase exp(-i k / 2); the rest is
    // the closed-form 2x2 exponential cos(w t) - i sin(w t)/w A.
    const double p = 1.3, g = 0.4, k = 0.7, tau = 1.0;
    auto prm = make(1, p, g, k);
    prm.tau = tau;
    const MatrixC f = build_floquet(prm);
    const cplx c(0.0, g);
    Eigen::Matrix2cd a;
    a << c, p, p, -c;
    a *= 0.5;
    const cplx w = std::sqrt(cplx(p * p, 0) + c * c) / 2.0;
    const Eigen::Matrix2cd e =
        std::cos(w * tau / 2.0) * Eigen::Matrix2cd::Identity() - cplx(0, 1) * std::sin(w * tau / 2.0) / w * a;
    const Eigen::Matrix2cd expected = std::exp(cplx(0, -k / 2.0)) * e * e;
    EXPECT_LT(max_abs(f - expected), 1e-13);
}

TEST(Floquet, UnitaryWithoutGain) {
    const MatrixC f = build_floquet(make(400, 2.0, 0.0, 10.0));
    EXPECT_LT(unitarity_defect(f), 1e-10);
}

TEST(Floquet, TransposeSymmetry) {
    const MatrixC f = build_floquet(make(40, 2.0, 0.1, 3.0));
    EXPECT_LT(max_abs(f.transpose() - f), 1e-10 * max_abs(f));
    const MatrixC fm = build_floquet(make(40, 2.0, 0.1, 3.0, 0.0, 1.0), FloquetVariant::modified);
    EXPECT_GT(max_abs(fm.transpose() - fm), 0.1);
}

TEST(Floquet, ModifiedWithZeroEtaEqualsStandard) {
    const auto prm = make(20, 2.0, 0.1, 1.0);
    EXPECT_LT(max_abs(build_floquet(prm, FloquetVariant::modified) - build_floquet(prm)), 1e-12);
}

TEST(Floquet, ExponentialMethodsAgree) {
    const auto prm = make(20, 2.0, 0.2, 1.0);
    const MatrixC a = build_floquet(FloquetSpec{prm, FloquetVariant::standard, ExpMethod::eigen});
    const MatrixC b = build_floquet(FloquetSpec{prm, FloquetVariant::standard, ExpMethod::pade});
    EXPECT_LT(max_abs(a - b), 1e-10 * max_abs(b));
}

TEST(Floquet, AutomaticFallsBackToPadeWhenIllConditioned) {
    FloquetSpec spec{make(100, 2.0, 0.5, 1.0)};
    EXPECT_EQ(build_floquet_checked(spec).exp_diag.used, ExpMethod::pade);
    spec.params.gamma = 0.01;
    EXPECT_EQ(build_floquet_checked(spec).exp_diag.used, ExpMethod::eigen);
}

TEST(Floquet, ExactlyAtExceptionalPoint) {
    // p = gamma: the generator is not diagonalisable.
    const MatrixC a = build_floquet(make(10, 1.0, 1.0, 0.5));
    EXPECT_TRUE(a.allFinite());
    const MatrixC b = build_floquet(FloquetSpec{make(10, 1.0, 1.0, 0.5), FloquetVariant::standard, ExpMethod::pade});
    EXPECT_LT(max_abs(a - b), 1e-12 * max_abs(b));
}

TEST(PtDefect, DoublePrecisionSmallSystems) {
    for (int twice : {4, 20, 40})
        for (double g : {0.0, 0.1, 0.2}) {
            const auto prm = make(twice, 2.0, g, 1.0);
            EXPECT_LT(pt_defect(build_floquet(prm), parity_matrix(prm.spin)), 1e-9) << twice << ' ' << g;
        }
}

TEST(PtDefect, BrokenByDetuning) {
    const auto prm = make(20, 2.0, 0.1, 1.0, 0.3);
    EXPECT_GT(pt_defect(build_floquet(prm), parity_matrix(prm.spin)), 0.1);
}

TEST(PtDefect, QuadPrecisionAgreesWithDoubleAndHoldsForStrongGain) {
    const auto prm = make(20, 2.0, 0.2, 1.0);
    const auto fq = ext::build_floquet<ext::quad_complex>(prm);
    EXPECT_LT(max_abs(ext::to_double(fq) - build_floquet(prm)), 1e-10 * max_abs(build_floquet(prm)));
    const auto strong = make(60, 2.0, 0.5, 1.0);
    EXPECT_LT(static_cast<double>(ext::pt_defect(ext::build_floquet<ext::quad_complex>(strong))), 1e-20);
    const auto modified = make(20, 2.0, 0.3, 1.0, 0.0, 1.0);
    // Kz and Ky do not commute, so the extra kick breaks this PT relation outright.
    EXPECT_GT(static_cast<double>(ext::pt_defect(ext::build_floquet<ext::quad_complex>(modified, FloquetVariant::modified))),
              0.1);
    EXPECT_LT(max_abs(ext::to_double(ext::build_floquet<ext::quad_complex>(modified, FloquetVariant::modified)) -
                      build_floquet(modified, FloquetVariant::modified)),
              1e-10 * max_abs(build_floquet(modified, FloquetVariant::modified)));
}

TEST(Resolvent, QuadAgreesWithDoubleWhenResolved) {
    const auto prm = make(16, 2.0, 0.1, 1.0);
    const MatrixC f = build_floquet(prm);
    const auto fq = ext::build_floquet<ext::quad_complex>(prm);
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.2, 0.5)})
        EXPECT_NEAR(ext::resolvent_norm(fq, z) / resolvent_norm(f, z), 1.0, 1e-9);
}

TEST(Resolvent, StrongGainExceedsDoubleResolution) {
    // ||F|| ~ 1e8 at L = 20, gamma = 1: sigma_min(F - z) far from the spectrum
    // sits below eps ||F||, so only the quad value is meaningful there.
    const auto prm = make(40, 2.0, 1.0, 1.0);
    const MatrixC f = build_floquet(prm);
    const double limit = resolvent_resolution_limit(f);
    EXPECT_LT(limit, 1e8);
    const double q = ext::resolvent_norm(ext::build_floquet<ext::quad_complex>(prm), cplx(-1.5, -1.5));
    EXPECT_GT(q, 1e8);
    EXPECT_LT(q, 1e10);
    EXPECT_GT(resolvent_norm(f, cplx(-1.5, -1.5)), 0.1 * limit);
}

TEST(Dft, UnitarySymmetricAndTrivialCase) {
    const MatrixC f = dft_matrix(999);
    EXPECT_LT(unitarity_defect(f), 1e-12);
    EXPECT_EQ(max_abs(f - f.transpose()), 0.0);
    const MatrixC one = dft_matrix(1);
    EXPECT_NEAR(one(0, 0).real(), 0.0, 1e-16);
    EXPECT_NEAR(one(0, 0).imag(), -1.0, 1e-16);
}

TEST(Baker, UnitaryAtGammaOneAndIntertwining) {
    const MatrixC b = baker(999, 1.0);
    EXPECT_LT(unitarity_defect(b), 1e-10);
    const MatrixC fn = dft_matrix(999);
    EXPECT_LT(max_abs(b.transpose() * fn - fn * b), 1e-10);
    const MatrixC bg = baker(300, 0.5);
    const MatrixC f300 = dft_matrix(300);
    EXPECT_LT(max_abs(bg.transpose() * f300 - f300 * bg), 1e-10);
}

TEST(Baker, DeterminantModulusOne) {
    for (double g : {1.0, 0.5, 0.2}) {
        Eigen::PartialPivLU<MatrixC> lu(baker(90, g));
        double log_abs = 0.0;
        for (Eigen::Index i = 0; i < 90; ++i) log_abs += std::log(std::abs(lu.matrixLU()(i, i)));
        EXPECT_NEAR(log_abs, 0.0, 1e-10);
    }
}

TEST(Baker, RejectsBadArguments) {
    EXPECT_THROW(baker(10, 0.5), std::invalid_argument);
    EXPECT_THROW(baker(9, 0.0), std::invalid_argument);
    EXPECT_THROW(baker(9, 1.5), std::invalid_argument);
}

TEST(MatrixDump, CsvAndBinaryRoundTrip) {
    const auto prm = make(6, 2.0, 0.3, 1.0);
    const MatrixC f = build_floquet(prm);
    std::stringstream csv;
    write_matrix_csv(csv, f, Basis::lz, params_hash(prm));
    const auto line = csv.str().substr(0, csv.str().find('\n'));
    EXPECT_EQ(line, "dim,basis,params-hash");
    const auto back = read_matrix_csv(csv);
    EXPECT_EQ(back.basis, Basis::lz);
    EXPECT_EQ(back.hash, params_hash(prm));
    EXPECT_EQ(max_abs(back.m - f), 0.0);

    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    write_matrix_binary(bin, f, Basis::position, 42);
    const auto bback = read_matrix_binary(bin);
    EXPECT_EQ(bback.basis, Basis::position);
    EXPECT_EQ(bback.hash, 42u);
    EXPECT_EQ(max_abs(bback.m - f), 0.0);
}
