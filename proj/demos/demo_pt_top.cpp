// Walk through the library on a small kicked top: classical step and
// reversibility, the Floquet spectrum and its PT pairing, a Husimi peak, and
// the spacing statistics of a short chaotic sweep.

#include "ptkt/ptkt.hpp"

#include <cstdio>

using namespace ptkt;

int main() {
    TopParams prm;
    prm.spin = SpinL::from_value(40);
    prm.p = 2.0;
    prm.k = 3.0;
    prm.gamma = 0.1;
    prm.validate();
    std::printf("L = %g, p = %g, k = %g, gamma = %g\n", prm.spin.value(), prm.p, prm.k, prm.gamma);

    // Classical map: one period from a point, then back with G F G.
    const auto x = BlochPoint::from_cylindrical(0.4, 0.2);
    const auto s1 = classical::step({x, 1.0}, prm);
    const auto back = classical::reflect_z(classical::step_point(classical::reflect_z(s1.point), prm));
    std::printf("classical: (phi, z) = (%.4f, %.4f) -> (%.4f, %.4f), intensity x%.4f, return error %.1e\n", x.phi(),
                x.z(), s1.point.phi(), s1.point.z(), s1.n,
                std::hypot(back.sx - x.sx, back.sy - x.sy, back.sz - x.sz));

    const auto fp = classical::elliptic_fixed_points(prm)[0];
    std::printf("elliptic fixed point at phi = %.6f, det J = %.8f\n", fp.phi(), classical::jacobian(fp, prm).determinant());

    // Quantum: Floquet operator, PT relation, spectrum.
    const MatrixC f = build_floquet(prm);
    const auto spec = eig(f);
    int real_count = 0;
    double max_rate = 0.0;
    for (const auto& e : quasienergies(spec)) {
        real_count += std::abs(e.imag()) < 1e-9;
        max_rate = std::max(max_rate, e.imag());
    }
    std::printf("Floquet: dim %d, PT defect %.1e, pairing violation %.1e, %d of %d quasienergies real, max Im E %.4f\n",
                prm.spin.dim(), pt_defect(f, parity_matrix(prm.spin)), pt_pairing_violation(spec.eigenvalues), real_count,
                prm.spin.dim(), max_rate);

    // Husimi map of the fastest growing Schur vector, and where it peaks.
    const auto schur = schur_sorted(f);
    const GridSpec grid{120, 60};
    const auto h = husimi(VectorC(schur.q.col(0)), prm.spin, grid);
    const auto peak = static_cast<std::size_t>(std::max_element(h.values.begin(), h.values.end()) - h.values.begin());
    std::printf("fastest growing state peaks at (phi, z) = (%.3f, %.3f); %zu growing states\n", grid.point(peak).phi(),
                grid.point(peak).z(), schur.count_growing(0.0));

    // Spacing statistics over a short chaotic sweep.
    TopParams chaotic = prm;
    chaotic.spin = SpinL::from_value(100);
    chaotic.gamma = 0.01;
    const auto runs = stats::sweep_spectra(chaotic, stats::arange(9.0, 9.5, 0.05), stats::SweepParameter::k);
    const auto st = stats::pooled_spacings(runs);
    std::printf("chaotic sweep: %zu spacings, KS vs 2D Poisson %.3f, vs Ginibre %.3f\n", st.spacings.size(),
                stats::ks_against(st.spacings, stats::poisson2d_curve()),
                stats::ks_against(st.spacings, stats::ginibre_curve()));
    return 0;
}
