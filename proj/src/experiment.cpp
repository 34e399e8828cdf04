#include "critflow/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "critflow/field_io.hpp"
#include "critflow/operators.hpp"

namespace critflow {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class DirectoryLock {
  public:
    explicit DirectoryLock(const fs::path& dir) : path_(dir / ".critflow.lock") {
        std::error_code ec;
        fs::create_directories(dir, ec);
        FILE* f = std::fopen(path_.c_str(), "wx");
        if (!f) throw Error("output directory is locked: " + path_.string());
        std::fclose(f);
    }
    ~DirectoryLock() {
        std::error_code ec;
        fs::remove(path_, ec);
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

  private:
    fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

// report.txt gets the human summary; timestamps stay in its trailing
// metadata block so the machine outputs are reproducible byte-for-byte.
void write_report_txt(const fs::path& dir, const std::string& body) {
    auto now = std::chrono::system_clock::now();
    auto tt = std::chrono::system_clock::to_time_t(now);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    std::string text = body;
    text += "\n# metadata\n";
    text += std::string("timestamp = ") + stamp + "\n";
    write_text(dir / "report.txt", text);
}

json family_json(const IndexFamily& fam) {
    return json{{"name", family_name_str(fam.name)}, {"d", fam.d}, {"q", fam.q},
                {"p", fam.p},                        {"r", fam.r}, {"s", fam.s}};
}

json ratio_report_json(const RatioReport& rep) {
    json j;
    j["inequality_id"] = rep.inequality_id;
    j["max_ratio"] = rep.max_ratio;
    j["refinement_growth"] = rep.refinement_growth;
    j["seed"] = rep.seed;
    j["ensemble_size"] = rep.ensemble_size;
    j["grid_n"] = rep.grid_n;
    j["box_L"] = rep.box_L;
    j["degenerate_count"] = rep.degenerate_count;
    return j;
}

int run_solve(const ExperimentConfig& cfg, const fs::path& out) {
    SpectralField u0 = build_datum(cfg);
    SolverConfig sc = cfg.make_solver_config();
    SolutionReport rep = picard_solve(u0, sc);

    std::string csv = "iter,distance,ratio\n";
    char buf[128];
    for (std::size_t i = 0; i < rep.iterate_distances.size(); ++i) {
        double ratio = i > 0 ? rep.contraction_ratios[i - 1] : 0.0;
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", i + 1,
                      rep.iterate_distances[i], ratio);
        csv += buf;
    }
    write_text(out / "report.csv", csv);

    json j;
    j["command"] = "solve";
    j["verdict"] = verdict_str(rep.verdict);
    j["iterations"] = rep.iterations;
    j["final_residual"] = rep.final_residual;
    j["max_divergence"] = rep.max_divergence;
    j["T"] = sc.T;
    j["time_nodes"] = sc.time_nodes;
    j["picard_tol"] = sc.picard_tol;
    j["family"] = family_json(sc.family);
    j["u0"] = cfg.u0_kind;
    j["amplitude"] = cfg.amplitude;
    j["seed"] = cfg.seed;
    write_text(out / "summary.json", j.dump(2) + "\n");

    std::string txt = "solve\n";
    txt += std::string("verdict = ") + verdict_str(rep.verdict) + "\n";
    std::snprintf(buf, sizeof(buf), "iterations = %d\nfinal_residual = %.6g\n",
                  rep.iterations, rep.final_residual);
    txt += buf;
    txt += "\niter,distance,ratio\n" + csv.substr(csv.find('\n') + 1);
    write_report_txt(out, txt);

    if (cfg.dump_fields) {
        for (std::size_t i = 0; i < rep.solution.states.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "u_%03zu.cff", i);
            write_field((out / buf).string(), rep.solution.states[i]);
            std::snprintf(buf, sizeof(buf), "w_%03zu.cff", i);
            write_field((out / buf).string(), rep.w.states[i]);
        }
    }
    return rep.verdict == Verdict::Converged ? 0 : 2;
}

int run_smallness(const ExperimentConfig& cfg, const fs::path& out) {
    SpectralField u0 = build_datum(cfg);
    IndexFamily fam = cfg.make_family();
    NormValue nv = smallness_evaluate(u0, fam, cfg.T);

    write_text(out / "report.csv", norm_csv_header() + "\n" + norm_csv_row(nv) + "\n");
    json j;
    j["command"] = "smallness";
    j["value"] = nv.value;
    j["T"] = cfg.T;
    j["family"] = family_json(fam);
    j["u0"] = cfg.u0_kind;
    j["amplitude"] = cfg.amplitude;
    j["seed"] = cfg.seed;
    write_text(out / "summary.json", j.dump(2) + "\n");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "smallness\nvalue = %.12g\nT = %g\n", nv.value, cfg.T);
    write_report_txt(out, buf);
    return 0;
}

int run_horizon(const ExperimentConfig& cfg, const fs::path& out) {
    SpectralField u0 = build_datum(cfg);
    IndexFamily fam = cfg.make_family();
    HorizonResult hr = existence_horizon(u0, fam, cfg.delta, cfg.t_cap);

    json j;
    j["command"] = "horizon";
    j["global"] = hr.global;
    j["T"] = hr.T;
    j["delta"] = cfg.delta;
    j["t_cap"] = cfg.t_cap;
    j["family"] = family_json(fam);
    write_text(out / "summary.json", j.dump(2) + "\n");
    write_text(out / "report.csv",
               "global,T\n" + std::to_string(hr.global ? 1 : 0) + "," +
                   std::to_string(hr.T) + "\n");
    write_report_txt(out, hr.global ? "horizon\nresult = global\n"
                                    : "horizon\nresult = T = " + std::to_string(hr.T) + "\n");
    return 0;
}

int run_norm(const ExperimentConfig& cfg, const fs::path& out) {
    SpectralField f = read_field(cfg.input_path);
    NormValue nv = spatial_norm(f, cfg.make_norm_spec());
    write_text(out / "report.csv", norm_csv_header() + "\n" + norm_csv_row(nv) + "\n");
    json j;
    j["command"] = "norm";
    j["kind"] = norm_kind_name(nv.spec.kind);
    j["value"] = nv.value;
    j["s"] = nv.spec.s;
    j["p"] = nv.spec.p;
    j["q"] = nv.spec.q;
    j["alpha"] = nv.spec.alpha;
    write_text(out / "summary.json", j.dump(2) + "\n");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "norm\nvalue = %.12g\n", nv.value);
    write_report_txt(out, buf);
    return 0;
}

int run_verify(const ExperimentConfig& cfg, const fs::path& out, const RatioReport& rep) {
    write_text(out / "report.csv", ratio_report_csv(rep));
    write_text(out / "summary.json", ratio_report_json(rep).dump(2) + "\n");
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s\nmax_ratio = %.12g\nrefinement_growth = %.12g\n",
                  rep.inequality_id.c_str(), rep.max_ratio, rep.refinement_growth);
    write_report_txt(out, buf);
    (void)cfg;
    return 0;
}

int run_estimate_constant(const ExperimentConfig& cfg, const fs::path& out) {
    IndexFamily fam = cfg.make_family();
    Grid g = cfg.make_grid_spec();
    ConstantEstimate est = estimate_bilinear_constant(
        fam, cfg.ensemble_size, cfg.seed, g, cfg.T, cfg.time_nodes,
        QuadratureSpec{cfg.panels, cfg.gauss_points}, cfg.profile);

    std::string csv = "pair,ratio\n";
    char buf[96];
    for (std::size_t i = 0; i < est.ratios.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i, est.ratios[i]);
        csv += buf;
    }
    write_text(out / "report.csv", csv);

    json j;
    j["command"] = "estimate-constant";
    j["C_hat"] = est.C_hat;
    j["delta_hat"] = est.delta_hat;
    j["family"] = family_json(est.family);
    j["ensemble_size"] = est.ensemble_size;
    j["seed"] = est.seed;
    j["grid_n"] = est.grid_n;
    j["box_L"] = est.box_L;
    j["T"] = est.T;
    j["time_nodes"] = est.time_nodes;
    write_text(out / "summary.json", j.dump(2) + "\n");
    std::snprintf(buf, sizeof(buf), "estimate-constant\nC_hat = %.12g\ndelta_hat = %.12g\n",
                  est.C_hat, est.delta_hat);
    write_report_txt(out, buf);
    return 0;
}

int run_kernel_check(const ExperimentConfig& cfg, const fs::path& out) {
    KernelReport rep = kernel_decay_check(cfg.d, cfg.radii, cfg.kernel_n, cfg.kernel_box);
    write_text(out / "report.csv", kernel_csv(rep));
    json j;
    j["command"] = "kernel-check";
    j["fitted_c"] = rep.fitted_c;
    j["d"] = rep.d;
    j["grid_n"] = rep.grid_n;
    j["box"] = rep.box;
    write_text(out / "summary.json", j.dump(2) + "\n");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "kernel-check\nfitted_c = %.12g\n", rep.fitted_c);
    write_report_txt(out, buf);
    return 0;
}

}  // namespace

SpectralField build_datum(const ExperimentConfig& cfg) {
    Grid g = cfg.make_grid_spec();
    if (cfg.u0_kind == "shear") return make_shear_field(g, cfg.amplitude);
    if (cfg.u0_kind == "taylor-green") return make_taylor_green(g, cfg.amplitude);
    if (cfg.u0_kind == "random") {
        SpectralField f = random_divfree_field(g, cfg.profile, cfg.seed);
        return cfg.amplitude * f;
    }
    if (cfg.u0_kind == "zero") return SpectralField(g, g.d);
    SpectralField f = read_field(cfg.u0_kind);
    if (!(f.grid == g)) throw Error("input field grid does not match config");
    return f;
}

int run_experiment(const ExperimentConfig& cfg) {
    fs::path out(cfg.out_dir);
    DirectoryLock lock(out);
    switch (cfg.command) {
        case Command::Solve: return run_solve(cfg, out);
        case Command::Smallness: return run_smallness(cfg, out);
        case Command::Horizon: return run_horizon(cfg, out);
        case Command::Norm: return run_norm(cfg, out);
        case Command::VerifyProduct: {
            Grid g = cfg.make_grid_spec();
            return run_verify(cfg, out,
                              product_estimate_ensemble(g, cfg.profile, cfg.ensemble_size,
                                                        cfg.seed, cfg.prod_s, cfg.prod_p,
                                                        cfg.prod_q, cfg.refine_study));
        }
        case Command::VerifyEmbedding: {
            Grid g = cfg.make_grid_spec();
            return run_verify(cfg, out,
                              embedding_ensemble(g, cfg.profile, cfg.ensemble_size,
                                                 cfg.seed, cfg.embedding, cfg.refine_study));
        }
        case Command::VerifyCaloric: {
            Grid g = cfg.make_grid_spec();
            return run_verify(cfg, out,
                              caloric_ensemble(g, cfg.profile, cfg.ensemble_size, cfg.seed,
                                               cfg.make_family(), cfg.t_cap));
        }
        case Command::EstimateConstant: return run_estimate_constant(cfg, out);
        case Command::KernelCheck: return run_kernel_check(cfg, out);
    }
    throw Error("unknown command");
}

}  // namespace critflow
