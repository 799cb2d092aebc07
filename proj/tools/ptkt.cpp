// ptkt — batch front end. Every subcommand writes its tables into --out and
// a <subcommand>.manifest.json next to them.
//
// Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 1 other.

#include "ptkt/ptkt.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace ptkt;

namespace {

struct Globals {
    TopParams prm;
    double spin_l = 20.0;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out = ".";
    int grid = 0;   // 0: subcommand default
    int iters = -1;  // -1: subcommand default
};

struct Run {
    std::string name;
    TopParams prm;
    std::uint64_t seed = 1;
    fs::path dir;
    std::vector<std::string> outputs;
    nlohmann::ordered_json extra;

    fs::path file(const std::string& f) {
        outputs.push_back(f);
        return dir / f;
    }
};

int pick(int given, int fallback) { return given >= 0 ? given : fallback; }

GridSpec square_grid(int given, int fallback) {
    const int n = given > 0 ? given : fallback;
    return GridSpec{n, n};
}

FloquetVariant variant_of(const TopParams& p) {
    return p.eta != 0.0 ? FloquetVariant::modified : FloquetVariant::standard;
}

MatrixC floquet_for(const TopParams& p) { return build_floquet(p, variant_of(p)); }

nlohmann::ordered_json ks_json(const std::vector<double>& s, const std::vector<stats::ReferenceCurve>& refs) {
    nlohmann::ordered_json j;
    for (const auto& r : refs) j[r.name] = stats::ks_against(s, r);
    return j;
}

void write_comparisons(Run& run, const std::string& stem, const std::vector<double>& s,
                       const std::vector<stats::ReferenceCurve>& refs, int bins, double s_max) {
    for (const auto& r : refs) {
        const auto c = stats::compare(s, r, bins, s_max);
        io::write_histogram_csv(run.file(stem + "_histogram_" + r.name + ".csv"), c.histogram);
        io::write_reference_csv(run.file("reference_" + r.name + ".csv"), r);
    }
}

struct StatsFlags {
    double boundary = 0.05;
    double symmetry = 2.0;
    std::string unfold = "isotropic";
    int bins = 40;
    double s_max = 3.5;
    int ref_count = 0;
    int ref_n = 401;
};

void add_stats_flags(CLI::App* sub, StatsFlags& f) {
    sub->add_option("--boundary-margin", f.boundary, "fraction of the Im range excluded at each end")
        ->check(CLI::Range(0.0, 0.49));
    sub->add_option("--symmetry-margin", f.symmetry, "exclusion half-width about the real axis, in mean NN distances (0 disables)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--unfold", f.unfold, "unfolding convention")->check(CLI::IsMember({"isotropic", "literal"}));
    sub->add_option("--bins", f.bins, "histogram bins")->check(CLI::PositiveNumber);
    sub->add_option("--s-max", f.s_max, "histogram range")->check(CLI::PositiveNumber);
    sub->add_option("--reference-count", f.ref_count, "transpose-symmetric matrices for a sampled reference (0 skips)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--reference-n", f.ref_n, "size of the reference matrices")->check(CLI::Range(2, 100000));
}

std::vector<stats::ReferenceCurve> references(const StatsFlags& f, std::uint64_t seed) {
    std::vector<stats::ReferenceCurve> refs{stats::poisson2d_curve(), stats::ginibre_curve()};
    if (f.ref_count > 0)
        refs.push_back(stats::sampled_curve(
            "transpose", stats::ensemble_spacings(stats::Ensemble::transpose_symmetric, f.ref_n, f.ref_count, seed)));
    return refs;
}

void finish_stats(Run& run, const stats::SweepStatistics& st, const StatsFlags& f, const nlohmann::ordered_json& params) {
    io::write_spacings_csv(run.file("spacings.csv"), st.spacings);
    const auto refs = references(f, run.seed);
    write_comparisons(run, "spacings", st.spacings, refs, f.bins, f.s_max);
    const auto ks = ks_json(st.spacings, refs);
    nlohmann::ordered_json excl{{"boundary", st.excluded_boundary},
                                {"symmetry", st.excluded_symmetry},
                                {"failed_realisations", st.failed},
                                {"empty_realisations", st.empty},
                                {"boundary_margin", f.boundary},
                                {"symmetry_margin", f.symmetry},
                                {"unfold", f.unfold}};
    io::write_summary_json(run.file("summary.json"), st.spacings.size(), ks, excl, params);
    std::cout << "spacings: " << st.spacings.size();
    for (const auto& [name, v] : ks.items()) std::cout << "  KS[" << name << "] = " << v.get<double>();
    std::cout << '\n';
}

stats::UnfoldOptions unfold_options(const StatsFlags& f) {
    return f.unfold == "literal" ? stats::UnfoldOptions::literal() : stats::UnfoldOptions{};
}

stats::SpacingOptions spacing_options(const StatsFlags& f) {
    stats::SpacingOptions o;
    o.boundary_margin = f.boundary;
    o.symmetry_margin = f.symmetry;
    return o;
}

std::vector<int> eigen_order(const VectorC& ev) {
    // Descending Im E = ln|lambda|, then ascending Re E.
    std::vector<int> idx(static_cast<std::size_t>(ev.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const cplx ea = quasienergy(ev(a)), eb = quasienergy(ev(b));
        if (ea.imag() != eb.imag()) return ea.imag() > eb.imag();
        return ea.real() < eb.real();
    });
    return idx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the PT-symmetric kicked top and triadic Baker map"};
    app.set_config("--config", "", "INI file: global keys at top level, subcommand keys in [subcommand] sections");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--p", g.prm.p, "linear precession strength");
    app.add_option("--epsilon", g.prm.epsilon, "Hermitian detuning");
    auto* gamma_opt = app.add_option("--gamma", g.prm.gamma, "gain/loss rate")->check(CLI::NonNegativeNumber);
    auto* k_opt = app.add_option("--k", g.prm.k, "kick strength");
    app.add_option("--tau", g.prm.tau, "kick period")->check(CLI::PositiveNumber);
    app.add_option("--eta", g.prm.eta, "strength of the extra Ly^2 kick (nonzero selects the modified operator)");
    auto* spin_opt = app.add_option("--spin-l", g.spin_l, "total spin L (integer or half-integer)");
    app.add_option("--seed", g.seed, "master random seed");
    app.add_option("--threads", g.threads, "OpenMP threads (0: all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "output directory");
    app.add_option("--grid", g.grid, "grid resolution per axis")->check(CLI::NonNegativeNumber);
    app.add_option("--iters", g.iters, "iterations / steps")->check(CLI::NonNegativeNumber);

    std::map<std::string, std::function<void(Run&)>> actions;
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->configurable();
        return s;
    };

    // freeflow
    double ff_time = 20.0;
    int ff_points = 12, ff_samples = 2000;
    {
        auto* s = sub("freeflow", "continuous free evolution between kicks");
        s->add_option("--time", ff_time, "total time")->check(CLI::PositiveNumber);
        s->add_option("--points", ff_points, "number of initial points")->check(CLI::PositiveNumber);
        s->add_option("--samples", ff_samples, "output samples per trajectory")->check(CLI::PositiveNumber);
        actions["freeflow"] = [&](Run& r) {
            const auto seeds = classical::uniform_sphere_sample(static_cast<std::size_t>(ff_points), r.seed);
            std::vector<std::vector<BlochPoint>> traj(seeds.size());
#pragma omp parallel for schedule(dynamic)
            for (long i = 0; i < static_cast<long>(seeds.size()); ++i)
                traj[static_cast<std::size_t>(i)] =
                    classical::free_flow_trajectory(seeds[static_cast<std::size_t>(i)], r.prm, ff_time, ff_samples);
            io::write_poincare_csv(r.file("freeflow.csv"), traj);
        };
    }

    // poincare
    int pc_orbits = 200;
    bool pc_backwards = false;
    {
        auto* s = sub("poincare", "stroboscopic orbits of the classical map");
        s->add_option("--orbits", pc_orbits, "number of orbits")->check(CLI::PositiveNumber);
        s->add_flag("--backwards", pc_backwards, "iterate the inverse map");
        actions["poincare"] = [&](Run& r) {
            const auto seeds = classical::uniform_sphere_sample(static_cast<std::size_t>(pc_orbits), r.seed);
            const auto orbits = classical::poincare_orbits(seeds, r.prm, pick(g.iters, 1000), pc_backwards);
            io::write_poincare_csv(r.file("poincare.csv"), orbits);
        };
    }

    // lyapunov
    double ly_delta = 1e-7;
    {
        auto* s = sub("lyapunov", "largest Lyapunov exponent on a phase-space grid");
        s->add_option("--delta", ly_delta, "initial separation")->check(CLI::PositiveNumber);
        actions["lyapunov"] = [&](Run& r) {
            const auto f = classical::lyapunov_field(square_grid(g.grid, 400), r.prm, pick(g.iters, 2000), ly_delta);
            io::write_grid_csv(r.file("lyapunov.csv"), f);
        };
    }

    // intensity
    {
        sub("intensity", "classical intensity after --iters periods as a function of the initial point");
        actions["intensity"] = [&](Run& r) {
            io::write_grid_csv(r.file("intensity.csv"), classical::intensity_field(square_grid(g.grid, 400), r.prm, pick(g.iters, 3)));
        };
    }

    // skeleton
    int sk_samples = 4000;
    {
        auto* s = sub("skeleton", "image of the polar great circle under the kick");
        s->add_option("--samples", sk_samples, "points on the great circle")->check(CLI::Range(100, 10000000));
        actions["skeleton"] = [&](Run& r) {
            const auto sk = classical::great_circle_skeleton(r.prm, sk_samples);
            io::write_points_csv(r.file("skeleton.csv"), sk.polyline);
            r.extra["winding"] = sk.winding;
            r.extra["winding_estimate_4k_over_pi"] = 4.0 * r.prm.k / pi;
            r.extra["centre"] = {{"phi", sk.centre.phi()}, {"z", sk.centre.z()}};
            r.extra["phi_cut_crossings"] = sk.phi_cut_crossings;
            std::cout << "winding " << sk.winding << " (4k/pi = " << 4.0 * r.prm.k / pi << "), centre sz " << sk.centre.sz << '\n';
        };
    }

    // ensemble
    int en_points = 20000;
    bool en_backwards = false;
    {
        auto* s = sub("ensemble", "propagate a uniform phase-space ensemble");
        s->add_option("--points", en_points, "ensemble size")->check(CLI::PositiveNumber);
        s->add_flag("--backwards", en_backwards, "propagate with the inverse map");
        actions["ensemble"] = [&](Run& r) {
            const auto pts = classical::uniform_sphere_sample(static_cast<std::size_t>(en_points), r.seed);
            const int it = pick(g.iters, 10);
            const auto out = en_backwards ? classical::propagate_ensemble_backwards(pts, r.prm, it)
                                          : classical::propagate_ensemble(pts, r.prm, it);
            std::vector<BlochPoint> fin;
            fin.reserve(out.size());
            for (const auto& st : out) fin.push_back(st.point);
            io::write_points_csv(r.file("ensemble.csv"), fin);
        };
    }

    // spectrum
    bool sp_dump = false;
    {
        auto* s = sub("spectrum", "Floquet eigenvalues and quasienergies");
        s->add_flag("--dump-matrix", sp_dump, "also write the Floquet matrix (CSV, Lz basis)");
        actions["spectrum"] = [&](Run& r) {
            const auto res = build_floquet_checked(FloquetSpec{r.prm, variant_of(r.prm)});
            const auto spec = eig(res.f);
            io::write_spectrum_csv(r.file("spectrum.csv"), spec.eigenvalues);
            if (sp_dump) {
                std::ofstream out(r.file("floquet.csv"));
                write_matrix_csv(out, res.f, Basis::lz, params_hash(r.prm));
            }
            r.extra["exp_method"] = res.exp_diag.used == ExpMethod::pade ? "pade" : "eigen";
            r.extra["exp_condition"] = res.exp_diag.condition;
            if (r.prm.pt_symmetric() && variant_of(r.prm) == FloquetVariant::standard) {
                r.extra["pt_defect"] = pt_defect(res.f, parity_matrix(r.prm.spin));
                r.extra["pt_pairing_violation"] = pt_pairing_violation(spec.eigenvalues);
            }
        };
    }

    // pseudospectrum
    double ps_re[2] = {-1.5, 1.5}, ps_im[2] = {-1.5, 1.5};
    {
        auto* s = sub("pseudospectrum", "resolvent norm of the Floquet matrix on a grid in the eigenvalue plane");
        s->add_option("--re-min", ps_re[0]);
        s->add_option("--re-max", ps_re[1]);
        s->add_option("--im-min", ps_im[0]);
        s->add_option("--im-max", ps_im[1]);
        actions["pseudospectrum"] = [&](Run& r) {
            const MatrixC f = floquet_for(r.prm);
            const int n = g.grid > 0 ? g.grid : 500;
            const auto grid = resolvent_grid(f, ps_re[0], ps_re[1], ps_im[0], ps_im[1], n, n);
            io::write_resolvent_csv(r.file("resolvent.csv"), grid);
            r.extra["resolution_limit"] = grid.resolution_limit;
            io::write_spectrum_csv(r.file("spectrum.csv"), eig(f).eigenvalues);
        };
    }

    // husimi
    std::vector<int> hu_index{0};
    {
        auto* s = sub("husimi", "Husimi distribution of Floquet eigenstates (averaged over --index)");
        s->add_option("--index", hu_index, "eigenstate ranks, ordered by descending Im E then ascending Re E")
            ->check(CLI::NonNegativeNumber);
        actions["husimi"] = [&](Run& r) {
            const auto spec = eig(floquet_for(r.prm), EigOptions{true, true});
            const auto order = eigen_order(spec.eigenvalues);
            MatrixC cols(r.prm.spin.dim(), static_cast<Eigen::Index>(hu_index.size()));
            for (std::size_t c = 0; c < hu_index.size(); ++c) {
                if (hu_index[c] >= r.prm.spin.dim()) throw std::invalid_argument("husimi: --index out of range");
                cols.col(static_cast<Eigen::Index>(c)) = spec.eigenvectors->col(order[static_cast<std::size_t>(hu_index[c])]);
            }
            io::write_grid_csv(r.file("husimi.csv"), husimi_mean(cols, r.prm.spin, square_grid(g.grid, 300)));
            nlohmann::ordered_json sel = nlohmann::ordered_json::array();
            for (int i : hu_index) {
                const cplx e = quasienergy(spec.eigenvalues(order[static_cast<std::size_t>(i)]));
                sel.push_back({{"index", i}, {"re_E", e.real()}, {"im_E", e.imag()}});
            }
            r.extra["states"] = sel;
        };
    }

    // husimi-schur
    double hs_threshold = 0.0;
    bool hs_below = false;
    {
        auto* s = sub("husimi-schur", "Husimi distribution of a Schur invariant subspace");
        s->add_option("--threshold", hs_threshold, "Im E threshold");
        s->add_flag("--below", hs_below, "use Schur vectors with Im E <= threshold instead of > threshold");
        actions["husimi-schur"] = [&](Run& r) {
            const auto schur = schur_sorted(floquet_for(r.prm));
            std::vector<Eigen::Index> cols;
            for (std::size_t i = 0; i < schur.key.size(); ++i)
                if ((schur.key[i] > hs_threshold) != hs_below) cols.push_back(static_cast<Eigen::Index>(i));
            if (cols.empty()) throw std::invalid_argument("husimi-schur: no Schur vectors in the selected range");
            MatrixC q(schur.q.rows(), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = schur.q.col(cols[c]);
            io::write_grid_csv(r.file("husimi_schur.csv"), husimi_mean(q, r.prm.spin, square_grid(g.grid, 300)));
            r.extra["subspace_dimension"] = cols.size();
        };
    }

    // evolve
    double ev_theta = -1.0, ev_phi = 0.0;
    int ev_row = 0;
    std::vector<int> ev_snap;
    {
        auto* s = sub("evolve", "stroboscopic quantum evolution with per-step renormalisation");
        s->add_option("--theta", ev_theta, "coherent-state polar angle (default: start in an Lz eigenstate)");
        s->add_option("--phi", ev_phi, "coherent-state azimuth");
        s->add_option("--basis-row", ev_row, "Lz eigenstate row (m = L - row) when no --theta is given")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--snapshots", ev_snap, "steps at which to write a Husimi distribution")->check(CLI::NonNegativeNumber);
        actions["evolve"] = [&](Run& r) {
            const auto psi0 = ev_theta >= 0.0 ? coherent_state(r.prm.spin, ev_theta, ev_phi) : basis_state(r.prm.spin, ev_row);
            const int n = pick(g.iters, 30);
            const auto steps = evolve(psi0, floquet_for(r.prm), std::max(n, 1));
            std::vector<io::EvolutionRecord> rec{{0, 1.0, expectation_bloch(psi0, r.prm.spin).s}};
            for (int i = 0; i < n; ++i)
                rec.push_back({i + 1, steps[static_cast<std::size_t>(i)].norm_factor,
                               expectation_bloch(steps[static_cast<std::size_t>(i)].state, r.prm.spin).s});
            io::write_evolution_csv(r.file("evolution.csv"), rec);
            for (int snap : ev_snap) {
                if (snap > n) throw std::invalid_argument("evolve: snapshot beyond --iters");
                const VectorC& st = snap == 0 ? psi0 : steps[static_cast<std::size_t>(snap - 1)].state;
                io::write_grid_csv(r.file("husimi_step_" + std::to_string(snap) + ".csv"),
                                   husimi(st, r.prm.spin, square_grid(g.grid, 300)));
            }
        };
    }

    // spacings
    std::string sc_regime = "custom";
    double sc_range[3] = {0.1, 1.0, 0.05};
    StatsFlags sc_flags;
    CLI::Option* sc_range_opt[3] = {};
    {
        auto* s = sub("spacings", "pooled nearest-neighbour spacings of unfolded quasienergies over a k sweep");
        s->add_option("--regime", sc_regime, "regular: k 0.1..1 step 0.05; chaotic: k 9..10 step 0.02 (L=200, gamma=0.01 unless given)")
            ->check(CLI::IsMember({"regular", "chaotic", "custom"}));
        sc_range_opt[0] = s->add_option("--k-min", sc_range[0]);
        sc_range_opt[1] = s->add_option("--k-max", sc_range[1]);
        sc_range_opt[2] = s->add_option("--k-step", sc_range[2])->check(CLI::PositiveNumber);
        add_stats_flags(s, sc_flags);
        actions["spacings"] = [&](Run& r) {
            double range[3] = {sc_range[0], sc_range[1], sc_range[2]};
            if (sc_regime != "custom") {
                const double preset[2][3] = {{0.1, 1.0, 0.05}, {9.0, 10.0, 0.02}};
                const auto& p = preset[sc_regime == "regular" ? 0 : 1];
                for (int i = 0; i < 3; ++i)
                    if (sc_range_opt[i]->count() == 0) range[i] = p[i];
                if (gamma_opt->count() == 0) r.prm.gamma = 0.01;
                if (spin_opt->count() == 0) r.prm.spin = SpinL::from_value(200);
            }
            const auto ks = stats::arange(range[0], range[1], range[2]);
            const auto runs = stats::sweep_spectra(r.prm, ks, stats::SweepParameter::k, variant_of(r.prm));
            const auto st = stats::pooled_spacings(runs, unfold_options(sc_flags), spacing_options(sc_flags));
            auto params = io::params_json(r.prm);
            params["k"] = {{"min", range[0]}, {"max", range[1]}, {"step", range[2]}};
            r.extra["realisations"] = ks.size();
            finish_stats(r, st, sc_flags, params);
        };
    }

    // rmt
    std::string rm_ensemble = "transpose";
    int rm_n = 401, rm_count = 1000;
    double rm_bulk = 0.8;
    {
        auto* s = sub("rmt", "bulk nearest-neighbour spacings of a random-matrix ensemble");
        s->add_option("--ensemble", rm_ensemble)->check(CLI::IsMember({"ginibre", "transpose"}));
        s->add_option("--n", rm_n, "matrix size")->check(CLI::Range(2, 100000));
        s->add_option("--count", rm_count, "number of matrices")->check(CLI::PositiveNumber);
        s->add_option("--bulk", rm_bulk, "reference points restricted to |lambda| < bulk * radius")->check(CLI::Range(0.05, 1.0));
        actions["rmt"] = [&](Run& r) {
            const auto e = rm_ensemble == "ginibre" ? stats::Ensemble::ginibre : stats::Ensemble::transpose_symmetric;
            const auto s = stats::ensemble_spacings(e, rm_n, rm_count, r.seed, rm_bulk);
            io::write_spacings_csv(r.file("spacings.csv"), s);
            const std::vector<stats::ReferenceCurve> refs{stats::poisson2d_curve(), stats::ginibre_curve()};
            write_comparisons(r, "spacings", s, refs, 40, 3.5);
            io::write_summary_json(r.file("summary.json"), s.size(), ks_json(s, refs),
                                   {{"bulk_fraction", rm_bulk}},
                                   {{"ensemble", stats::ensemble_name(e)}, {"n", rm_n}, {"count", rm_count}});
        };
    }

    // baker
    int bk_n = 999;
    double bk_range[3] = {0.5, 0.55, 0.01};
    StatsFlags bk_flags;
    {
        auto* s = sub("baker", "PT-symmetric triadic Baker map: pooled spacings over a gamma sweep");
        s->add_option("--n", bk_n, "Hilbert-space dimension (multiple of 3)")->check(CLI::PositiveNumber);
        s->add_option("--gamma-min", bk_range[0]);
        s->add_option("--gamma-max", bk_range[1]);
        s->add_option("--gamma-step", bk_range[2])->check(CLI::PositiveNumber);
        add_stats_flags(s, bk_flags);
        actions["baker"] = [&](Run& r) {
            const auto gammas = stats::arange(bk_range[0], bk_range[1], bk_range[2]);
            const auto runs = stats::baker_sweep(bk_n, gammas);
            const auto st = stats::pooled_spacings(runs, unfold_options(bk_flags), spacing_options(bk_flags));
            nlohmann::ordered_json params{{"n", bk_n},
                                          {"gamma", {{"min", bk_range[0]}, {"max", bk_range[1]}, {"step", bk_range[2]}}}};
            finish_stats(r, st, bk_flags, params);
        };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (g.threads > 0) omp_set_num_threads(g.threads);
        g.prm.spin = SpinL::from_value(g.spin_l);
        g.prm.validate();
        CLI::App* chosen = app.get_subcommands().front();
        Run run{chosen->get_name(), g.prm, g.seed, fs::path(g.out), {}, {}};
        fs::create_directories(run.dir);
        actions.at(run.name)(run);
        io::RunManifest m{run.name, io::params_json(run.prm), run.seed, run.outputs,
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), run.extra};
        io::write_manifest(run.dir / (run.name + ".manifest.json"), m);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
