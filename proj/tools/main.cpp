// cdiff command-line driver. Everything goes through the C API in cdiff.h;
// this file owns argument/config parsing and file layout only.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdiff.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct GridDeleter {
    void operator()(cdiff_grid* g) const { cdiff_grid_destroy(g); }
};
using GridPtr = std::unique_ptr<cdiff_grid, GridDeleter>;

// Exit-code classification: argument/configuration problems are the caller's
// fault (2), runtime numerics are ours (3).
int exit_code_for(cdiff_status s) {
    switch (s) {
        case CDIFF_OK: return kExitOk;
        case CDIFF_ERR_INVALID_ARGUMENT:
        case CDIFF_ERR_IO: return kExitConfig;
        default: return kExitNumeric;
    }
}

struct CApiFailure {
    cdiff_status status;
    std::string context;
};

void check(cdiff_status s, const std::string& context) {
    if (s != CDIFF_OK) throw CApiFailure{s, context};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Flat key = value configuration with '#' comments.
class Config {
  public:
    static Config load(const fs::path& path) {
        std::ifstream is(path);
        if (!is) throw CApiFailure{CDIFF_ERR_IO, "cannot open config " + path.string()};
        Config cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw CApiFailure{CDIFF_ERR_INVALID_ARGUMENT,
                                      path.string() + ":" + std::to_string(lineno) +
                                          ": expected 'key = value'"};
                continue;
            }
            cfg.kv_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return cfg;
    }

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key) const {
        const auto it = kv_.find(key);
        if (it == kv_.end())
            throw CApiFailure{CDIFF_ERR_INVALID_ARGUMENT, "config: missing key '" + key + "'"};
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        const auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key) const { return parse_double(key, get_string(key)); }
    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }
    long get_long(const std::string& key) const {
        return static_cast<long>(parse_double(key, get_string(key)));
    }
    long get_long(const std::string& key, long fallback) const {
        return has(key) ? get_long(key) : fallback;
    }
    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        return static_cast<std::uint64_t>(std::stoull(get_string(key)));
    }

  private:
    static std::string trim(std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    }

    double parse_double(const std::string& key, const std::string& text) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw CApiFailure{CDIFF_ERR_INVALID_ARGUMENT,
                              "config: key '" + key + "' is not a number: '" + text + "'"};
        }
    }

    std::map<std::string, std::string> kv_;
};

cdiff_params params_from(const Config& cfg) {
    cdiff_params p;
    p.c = cfg.get_double("c", 1.0);
    p.tau = cfg.get_double("tau");
    p.dim = static_cast<int>(cfg.get_long("dim", 2));
    return p;
}

double time_from(const Config& cfg, const cdiff_params& p) {
    if (cfg.has("T")) return cfg.get_double("T");
    if (cfg.has("T_over_tau")) return cfg.get_double("T_over_tau") * p.tau;
    throw CApiFailure{CDIFF_ERR_INVALID_ARGUMENT, "config: need T or T_over_tau"};
}

GridPtr input_grid(const Config& cfg) {
    cdiff_grid* g = nullptr;
    if (cfg.has("input")) {
        const std::string path = cfg.get_string("input");
        check(cdiff_grid_load(path.c_str(), &g), "loading " + path);
    } else {
        const std::string image = cfg.get_string("image"); // question-mark | ...
        const int rows = static_cast<int>(cfg.get_long("rows"));
        const int cols = static_cast<int>(cfg.get_long("cols"));
        const double dx = cfg.get_double("dx");
        check(cdiff_grid_make_synthetic(image.c_str(), rows, cols, dx, &g),
              "building scene " + image);
    }
    return GridPtr(g);
}

fs::path output_dir(const Config& cfg) {
    const fs::path dir = cfg.get_string("output_dir", "out");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw CApiFailure{CDIFF_ERR_IO, "cannot create output dir " + dir.string()};
    return dir;
}

void write_grid_outputs(const cdiff_grid* g, const fs::path& dir, const std::string& stem,
                        int dim_tag) {
    const fs::path cdg = dir / (stem + ".cdg");
    const fs::path pgm = dir / (stem + ".pgm");
    check(cdiff_grid_save(g, cdg.string().c_str(), dim_tag), "writing " + cdg.string());
    check(cdiff_grid_save_pgm(g, pgm.string().c_str()), "writing " + pgm.string());
}

// Timestamps live only here so data outputs stay byte-reproducible.
void write_sidecar(const fs::path& dir, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& fields) {
    std::ofstream os(dir / (command + "_meta.txt"));
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "command: " << command << "\nwritten_at: " << stamp << "\nlibrary: "
       << cdiff_version() << '\n';
    for (const auto& [k, v] : fields) os << k << ": " << v << '\n';
}

/* ---- commands ---- */

int cmd_upsilon(int dim, double t_min, double t_max, long samples, const std::string& out) {
    if (!(t_max > t_min) || samples < 2) {
        std::cerr << "upsilon: need t_max > t_min and samples >= 2\n";
        return kExitConfig;
    }
    cdiff_upsilon* ev = nullptr;
    check(cdiff_upsilon_create(dim, 1e-14, 400, &ev), "creating evaluator");
    std::unique_ptr<cdiff_upsilon, decltype(&cdiff_upsilon_destroy)> guard(
        ev, &cdiff_upsilon_destroy);

    std::ofstream os(out);
    if (!os) throw CApiFailure{CDIFF_ERR_IO, "cannot open " + out};
    os << "t,upsilon,upsilon_prime\n";
    for (long i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * static_cast<double>(i) /
                                     static_cast<double>(samples - 1);
        double v = 0.0, d = 0.0;
        check(cdiff_upsilon_eval(ev, t, &v), "evaluating profile");
        check(cdiff_upsilon_eval_derivative(ev, t, &d), "evaluating derivative");
        os << fmt(t) << ',' << fmt(v) << ',' << fmt(d) << '\n';
    }
    return kExitOk;
}

int cmd_zeros(const cdiff_params& p, double t, double k_max, const std::string& out) {
    std::vector<double> zeros(4096);
    size_t count = 0;
    check(cdiff_zero_set(p, t, k_max, zeros.data(), zeros.size(), &count), "zero set");
    zeros.resize(count);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw CApiFailure{CDIFF_ERR_IO, "cannot open " + out};
        os = &file;
    }
    (*os) << "k\n";
    for (double z : zeros) (*os) << fmt(z) << '\n';
    return kExitOk;
}

int cmd_compare_green(const cdiff_params& p, const std::vector<double>& times,
                      double k_max, long samples, const std::string& out) {
    if (times.empty() || samples < 2) {
        std::cerr << "compare-green: need at least one time and samples >= 2\n";
        return kExitConfig;
    }
    std::ofstream os(out);
    if (!os) throw CApiFailure{CDIFF_ERR_IO, "cannot open " + out};
    // columns carry the normalized transforms (2 pi)^{N/2} * ghat
    const double norm = std::pow(2.0 * M_PI, 0.5 * p.dim);
    os << "t,k,causal,standard,perturbed\n";
    for (double t : times) {
        for (long i = 0; i < samples; ++i) {
            const double k = k_max * static_cast<double>(i) / static_cast<double>(samples - 1);
            double gc = 0.0, gs = 0.0, gp = 0.0;
            check(cdiff_ghat_causal(p, k, t, &gc), "causal kernel");
            check(cdiff_ghat_standard(p, k, t, &gs), "standard kernel");
            check(cdiff_ghat_perturbed(p, k, t, &gp), "perturbed kernel");
            os << fmt(t) << ',' << fmt(k) << ',' << fmt(norm * gc) << ',' << fmt(norm * gs)
               << ',' << fmt(norm * gp) << '\n';
        }
    }
    return kExitOk;
}

int cmd_forward(const fs::path& config_path) {
    const Config cfg = Config::load(config_path);
    const cdiff_params p = params_from(cfg);
    const double T = time_from(cfg, p);
    const GridPtr u = input_grid(cfg);
    const fs::path dir = output_dir(cfg);
    const std::string path = cfg.get_string("forward_path", "spatial");

    cdiff_grid* out = nullptr;
    int clipped = 0;
    if (path == "spatial") {
        const int n = static_cast<int>(cfg.get_long("stencil_points", 50));
        check(cdiff_evolve_spatial(u.get(), p, T, n, &out, &clipped), "spatial evolution");
        if (clipped)
            std::cerr << "forward: warning: support reaches the grid boundary; "
                         "increase the margin\n";
    } else if (path == "spectral") {
        check(cdiff_evolve_spectral(u.get(), p, T, &out), "spectral evolution");
    } else if (path == "euler") {
        check(cdiff_evolve_euler(u.get(), p, T, cfg.get_double("dt", 0.0), &out),
              "euler evolution");
    } else {
        std::cerr << "forward: unknown forward_path '" << path << "'\n";
        return kExitConfig;
    }
    GridPtr result(out);

    write_grid_outputs(u.get(), dir, "initial", p.dim);
    write_grid_outputs(result.get(), dir, "forward", p.dim);
    write_sidecar(dir, "forward",
                  {{"config", config_path.string()},
                   {"T", fmt(T)},
                   {"path", path},
                   {"mass_in", fmt(cdiff_grid_total_mass(u.get()))},
                   {"mass_out", fmt(cdiff_grid_total_mass(result.get()))}});
    return kExitOk;
}

int cmd_simulate(const fs::path& config_path) {
    const Config cfg = Config::load(config_path);
    const cdiff_params p = params_from(cfg);
    const double T = time_from(cfg, p);
    const GridPtr u = input_grid(cfg);
    const fs::path dir = output_dir(cfg);

    cdiff_noise_spec noise{};
    noise.radius_rel_perturbation = cfg.get_double("radius_perturbation", 0.0);
    noise.data_noise_level = cfg.get_double("delta", 0.0);
    noise.seed = cfg.get_seed("noise_seed", 0);
    noise.per_step_perturbation = cfg.get_long("per_step_perturbation", 0) != 0;

    const int M = static_cast<int>(cfg.get_long("M", 65));
    const std::uint64_t seed = cfg.get_seed("seed", 1);

    cdiff_grid* data = nullptr;
    check(cdiff_simulate_data(u.get(), p, T, M, noise, seed, &data), "particle simulation");
    GridPtr data_ptr(data);

    write_grid_outputs(u.get(), dir, "initial", p.dim);
    write_grid_outputs(data_ptr.get(), dir, "data", p.dim);

    if (cfg.get_long("emit_time_derivative", 0) != 0) {
        cdiff_grid* dt_clean = nullptr;
        check(cdiff_evolve_spectral_dt(u.get(), p, T, &dt_clean), "derivative data");
        GridPtr dt_ptr(dt_clean);
        if (noise.data_noise_level > 0.0) {
            cdiff_noise_spec dt_noise = noise;
            dt_noise.seed = noise.seed ^ 0x9e3779b97f4a7c15ull;
            cdiff_grid* noisy = nullptr;
            check(cdiff_add_data_noise(dt_ptr.get(), dt_noise, &noisy), "derivative noise");
            dt_ptr.reset(noisy);
        }
        write_grid_outputs(dt_ptr.get(), dir, "data_dt", p.dim);
    }

    write_sidecar(dir, "simulate",
                  {{"config", config_path.string()},
                   {"T", fmt(T)},
                   {"M", std::to_string(M)},
                   {"delta", fmt(noise.data_noise_level)},
                   {"radius_perturbation", fmt(noise.radius_rel_perturbation)},
                   {"seed", std::to_string(seed)},
                   {"mass_in", fmt(cdiff_grid_total_mass(u.get()))},
                   {"mass_data", fmt(cdiff_grid_total_mass(data_ptr.get()))}});
    return kExitOk;
}

int cmd_invert(const fs::path& config_path) {
    const Config cfg = Config::load(config_path);
    const cdiff_params p = params_from(cfg);
    const double T = time_from(cfg, p);
    const fs::path dir = output_dir(cfg);
    const std::string method = cfg.get_string("method", "landweber");

    const std::string data_path = cfg.get_string("data");
    cdiff_grid* w_raw = nullptr;
    check(cdiff_grid_load(data_path.c_str(), &w_raw), "loading " + data_path);
    GridPtr w(w_raw);

    GridPtr result;
    std::vector<std::pair<std::string, std::string>> meta{
        {"config", config_path.string()}, {"method", method}, {"T", fmt(T)}};

    if (method == "landweber") {
        cdiff_landweber_config lw{};
        lw.eta = cfg.get_double("eta", 2.0);
        lw.delta = cfg.get_double("delta", 0.0);
        lw.max_iters = static_cast<int>(cfg.get_long("max_iters", 100));
        lw.spectral_path = cfg.get_string("forward_path", "spatial") == "spectral";
        lw.stencil_points = static_cast<int>(cfg.get_long("stencil_points", 50));

        GridPtr u0;
        if (cfg.has("initial")) {
            cdiff_grid* g = nullptr;
            check(cdiff_grid_load(cfg.get_string("initial").c_str(), &g), "loading initial");
            u0.reset(g);
        }

        const fs::path log = dir / "iterations.csv";
        cdiff_grid* rec = nullptr;
        cdiff_landweber_stats stats{};
        check(cdiff_solve_landweber(w.get(), p, T, lw, u0.get(), log.string().c_str(),
                                    &rec, &stats),
              "landweber solve");
        result.reset(rec);
        std::cout << "landweber: " << stats.iterations << " iterations, "
                  << (stats.stopped_by_discrepancy ? "discrepancy stop" : "max_iters")
                  << ", final residual " << fmt(stats.final_residual) << '\n';
        meta.emplace_back("iterations", std::to_string(stats.iterations));
        meta.emplace_back("stopped_by_discrepancy",
                          std::to_string(stats.stopped_by_discrepancy));
        meta.emplace_back("final_residual", fmt(stats.final_residual));
    } else if (method == "moore_penrose") {
        cdiff_grid* rec = nullptr;
        double masked = 0.0;
        check(cdiff_moore_penrose(w.get(), p, T, cfg.get_double("zero_mask_tol", -1.0),
                                  &rec, &masked),
              "moore-penrose inversion");
        result.reset(rec);
        std::cout << "moore-penrose: masked bin fraction " << fmt(masked) << '\n';
        if (masked > 0.5)
            std::cerr << "invert: warning: more than half of the spectrum is masked\n";
        meta.emplace_back("masked_fraction", fmt(masked));
    } else if (method == "time_reversal") {
        const std::string data2_path = cfg.get_string("data2");
        cdiff_grid* w2_raw = nullptr;
        check(cdiff_grid_load(data2_path.c_str(), &w2_raw), "loading " + data2_path);
        GridPtr w2(w2_raw);
        cdiff_grid* rec = nullptr;
        check(cdiff_time_reversal(w.get(), w2.get(), p, T,
                                  cfg.get_double("band_split_tol", 0.1), &rec),
              "time reversal");
        result.reset(rec);
    } else {
        std::cerr << "invert: unknown method '" << method << "'\n";
        return kExitConfig;
    }

    write_grid_outputs(result.get(), dir, "reconstruction", p.dim);
    if (cfg.has("reference")) {
        cdiff_grid* ref = nullptr;
        check(cdiff_grid_load(cfg.get_string("reference").c_str(), &ref), "loading reference");
        GridPtr ref_ptr(ref);
        double rel = 0.0;
        check(cdiff_grid_rel_l2_distance(result.get(), ref_ptr.get(), &rel),
              "reference distance");
        std::cout << "relative L2 error vs reference: " << fmt(rel) << '\n';
        meta.emplace_back("relative_l2_error", fmt(rel));
    }
    write_sidecar(dir, "invert", meta);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-speed diffusion toolkit"};
    app.require_subcommand(1);

    // upsilon
    auto* up = app.add_subcommand("upsilon", "tabulate the radial profile and derivative");
    int up_dim = 3;
    double up_min = 0.0, up_max = 12.566370614359172;
    long up_samples = 512;
    std::string up_out = "upsilon.csv";
    up->add_option("--dim", up_dim, "space dimension N");
    up->add_option("--t-min", up_min);
    up->add_option("--t-max", up_max);
    up->add_option("--samples", up_samples);
    up->add_option("--out", up_out, "output CSV");

    // zeros
    auto* zr = app.add_subcommand("zeros", "zero lattice of the spectral kernel");
    cdiff_params zr_p{1.0, 1.0, 3};
    double zr_t = 1.0, zr_kmax = 20.0;
    std::string zr_out;
    zr->add_option("--c", zr_p.c);
    zr->add_option("--tau", zr_p.tau);
    zr->add_option("--dim", zr_p.dim);
    zr->add_option("--time", zr_t);
    zr->add_option("--k-max", zr_kmax);
    zr->add_option("--out", zr_out, "output CSV (default: stdout)");

    // compare-green
    auto* cg = app.add_subcommand("compare-green",
                                  "causal vs classical spectral kernels over |k|");
    cdiff_params cg_p{1.0, 1.0, 3};
    std::vector<double> cg_times{1.0, 9.0};
    double cg_kmax = 20.0;
    long cg_samples = 1024;
    std::string cg_out = "compare_green.csv";
    cg->add_option("--c", cg_p.c);
    cg->add_option("--tau", cg_p.tau);
    cg->add_option("--dim", cg_p.dim);
    cg->add_option("--times", cg_times, "evaluation times")->delimiter(',');
    cg->add_option("--k-max", cg_kmax);
    cg->add_option("--samples", cg_samples);
    cg->add_option("--out", cg_out);

    // config-driven commands
    std::string fw_cfg, sim_cfg, inv_cfg;
    auto* fw = app.add_subcommand("forward", "evolve an initial field");
    fw->add_option("--config", fw_cfg)->required();
    auto* sim = app.add_subcommand("simulate", "particle-method synthetic data");
    sim->add_option("--config", sim_cfg)->required();
    auto* inv = app.add_subcommand("invert", "reconstruct the initial field from data");
    inv->add_option("--config", inv_cfg)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (up->parsed()) return cmd_upsilon(up_dim, up_min, up_max, up_samples, up_out);
        if (zr->parsed()) return cmd_zeros(zr_p, zr_t, zr_kmax, zr_out);
        if (cg->parsed()) return cmd_compare_green(cg_p, cg_times, cg_kmax, cg_samples, cg_out);
        if (fw->parsed()) return cmd_forward(fw_cfg);
        if (sim->parsed()) return cmd_simulate(sim_cfg);
        if (inv->parsed()) return cmd_invert(inv_cfg);
    } catch (const CApiFailure& f) {
        std::cerr << "error (" << cdiff_status_name(f.status) << ") while " << f.context;
        const char* detail = cdiff_last_error();
        if (detail && *detail) std::cerr << ": " << detail;
        std::cerr << '\n';
        return exit_code_for(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitConfig;
}
