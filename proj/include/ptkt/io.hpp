// io.hpp — CSV emitters for every public table and the per-run JSON manifest.
// Floats are written with 17 significant digits so values round-trip exactly.

#pragma once

#include "ptkt/classical_map.hpp"
#include "ptkt/core_types.hpp"
#include "ptkt/level_stats.hpp"
#include "ptkt/phase_space.hpp"
#include "ptkt/spectral.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace ptkt::io {

inline constexpr int manifest_schema_version = 1;
inline constexpr const char* code_version = "1.0.0";

/// Minimal CSV writer: fixed header, rows of numbers.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out_ << header << '\n';
    }

    template <typename... Ts>
    void row(const Ts&... values) {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
        out_ << '\n';
    }

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }

    std::filesystem::path path_;
    std::ofstream out_;
};

inline void write_grid_csv(const std::filesystem::path& path, const GridField& g) {
    CsvWriter w(path, "phi,z,value");
    for (int j = 0; j < g.grid.n_z; ++j)
        for (int i = 0; i < g.grid.n_phi; ++i) w.row(g.grid.phi(i), g.grid.z(j), g.at(i, j));
}

inline void write_poincare_csv(const std::filesystem::path& path,
                               const std::vector<std::vector<BlochPoint>>& orbits) {
    CsvWriter w(path, "phi,z,sx,sy,sz,orbit_id,iter");
    for (std::size_t o = 0; o < orbits.size(); ++o)
        for (std::size_t it = 0; it < orbits[o].size(); ++it) {
            const auto& q = orbits[o][it];
            w.row(q.phi(), q.z(), q.sx, q.sy, q.sz, o, it);
        }
}

inline void write_points_csv(const std::filesystem::path& path, const std::vector<BlochPoint>& pts) {
    CsvWriter w(path, "phi,z,sx,sy,sz");
    for (const auto& q : pts) w.row(q.phi(), q.z(), q.sx, q.sy, q.sz);
}

inline void write_spectrum_csv(const std::filesystem::path& path, const VectorC& ev) {
    CsvWriter w(path, "re_lambda,im_lambda,re_E,im_E,abs_lambda");
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const cplx e = quasienergy(ev(i));
        w.row(ev(i).real(), ev(i).imag(), e.real(), e.imag(), std::abs(ev(i)));
    }
}

inline void write_resolvent_csv(const std::filesystem::path& path, const ResolventGrid& g) {
    CsvWriter w(path, "re,im,value");
    for (std::size_t j = 0; j < g.im.size(); ++j)
        for (std::size_t i = 0; i < g.re.size(); ++i) w.row(g.re[i], g.im[j], g.at(i, j));
}

struct EvolutionRecord {
    int step;
    double norm_factor;
    BlochPoint s;
};

inline void write_evolution_csv(const std::filesystem::path& path, const std::vector<EvolutionRecord>& rec) {
    CsvWriter w(path, "step,norm_factor,sx,sy,sz");
    for (const auto& r : rec) w.row(r.step, r.norm_factor, r.s.sx, r.s.sy, r.s.sz);
}

inline void write_spacings_csv(const std::filesystem::path& path, const std::vector<double>& s) {
    CsvWriter w(path, "s");
    for (double v : s) w.row(v);
}

inline void write_histogram_csv(const std::filesystem::path& path, const stats::Histogram& h) {
    CsvWriter w(path, "bin_center,pdf,cdf_empirical,cdf_reference");
    for (std::size_t i = 0; i < h.bin_center.size(); ++i)
        w.row(h.bin_center[i], h.pdf[i], h.cdf_empirical[i], h.cdf_reference[i]);
}

inline void write_reference_csv(const std::filesystem::path& path, const stats::ReferenceCurve& c) {
    CsvWriter w(path, "s,pdf,cdf");
    for (std::size_t i = 0; i < c.s.size(); ++i) w.row(c.s[i], c.pdf[i], c.cdf_at(c.s[i]));
}

inline nlohmann::ordered_json params_json(const TopParams& p) {
    nlohmann::ordered_json j;
    j["p"] = p.p;
    j["epsilon"] = p.epsilon;
    j["gamma"] = p.gamma;
    j["k"] = p.k;
    j["tau"] = p.tau;
    j["eta"] = p.eta;
    j["spin_l"] = p.spin.value();
    return j;
}

/// Summary of a spacing analysis: {n_spacings, ks, exclusions, params}.
inline void write_summary_json(const std::filesystem::path& path, std::size_t n_spacings,
                               const nlohmann::ordered_json& ks, const nlohmann::ordered_json& exclusions,
                               const nlohmann::ordered_json& params) {
    nlohmann::ordered_json j;
    j["n_spacings"] = n_spacings;
    j["ks"] = ks;
    j["exclusions"] = exclusions;
    j["params"] = params;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

struct RunManifest {
    std::string subcommand;
    nlohmann::ordered_json params;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
    nlohmann::ordered_json results;  // subcommand-specific scalars, omitted when null
};

inline void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    nlohmann::ordered_json j;
    j["schema_version"] = manifest_schema_version;
    j["subcommand"] = m.subcommand;
    j["params"] = m.params;
    j["seed"] = m.seed;
    j["code_version"] = code_version;
    j["outputs"] = m.outputs;
    j["wall_time_s"] = m.wall_time_s;
    if (!m.results.is_null()) j["results"] = m.results;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace ptkt::io
