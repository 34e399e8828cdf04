#include "critflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace critflow {

const char* command_str(Command c) {
    switch (c) {
        case Command::Solve: return "solve";
        case Command::Smallness: return "smallness";
        case Command::Horizon: return "horizon";
        case Command::Norm: return "norm";
        case Command::VerifyProduct: return "verify-product";
        case Command::VerifyEmbedding: return "verify-embedding";
        case Command::VerifyCaloric: return "verify-caloric";
        case Command::EstimateConstant: return "estimate-constant";
        case Command::KernelCheck: return "kernel-check";
    }
    return "?";
}

IndexFamily ExperimentConfig::make_family() const {
    switch (family) {
        case FamilyName::Th1: return IndexFamily::th1(d, q);
        case FamilyName::Th5: return IndexFamily::th5(d, q, p);
        case FamilyName::Th7: return IndexFamily::th7(d, q);
        case FamilyName::Generic: return IndexFamily::generic(d, s, p, r);
    }
    throw Error("unknown family");
}

SolverConfig ExperimentConfig::make_solver_config() const {
    SolverConfig sc;
    sc.T = T;
    sc.time_nodes = time_nodes;
    sc.picard_tol = picard_tol;
    sc.max_iters = max_iters;
    sc.quad = QuadratureSpec{panels, gauss_points};
    sc.family = make_family();
    return sc;
}

Grid ExperimentConfig::make_grid_spec() const { return make_grid(d, n, box_L); }

NormSpec ExperimentConfig::make_norm_spec() const {
    NormSpec spec;
    if (norm_kind == "lebesgue") spec.kind = NormKind::Lebesgue;
    else if (norm_kind == "sobolev-hom") spec.kind = NormKind::SobolevHom;
    else if (norm_kind == "sobolev-inhom") spec.kind = NormKind::SobolevInhom;
    else if (norm_kind == "besov-lp") spec.kind = NormKind::BesovLpHom;
    else if (norm_kind == "besov-heat") spec.kind = NormKind::BesovHeatHom;
    else throw Error("unknown norm_kind '" + norm_kind + "'");
    spec.s = norm_s;
    spec.p = norm_p;
    spec.q = norm_q;
    spec.alpha = norm_alpha;
    spec.t_max = norm_t_max;
    spec.validate(d);
    return spec;
}

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

[[noreturn]] void fail_line(int line, const std::string& msg) {
    throw Error("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const RawEntry& e) {
    try {
        std::size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        fail_line(e.line, "malformed value '" + e.value + "'");
    }
}

long parse_int(const RawEntry& e) {
    try {
        std::size_t pos = 0;
        long v = std::stol(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (...) {
        fail_line(e.line, "malformed value '" + e.value + "'");
    }
}

bool parse_bool(const RawEntry& e) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail_line(e.line, "malformed value '" + e.value + "' (want true/false)");
}

std::vector<double> parse_list(const RawEntry& e) {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            fail_line(e.line, "malformed list value '" + e.value + "'");
        }
    }
    if (out.empty()) fail_line(e.line, "empty list value");
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, RawEntry> kv;
    {
        std::stringstream ss(text);
        std::string raw;
        int lineno = 0;
        while (std::getline(ss, raw)) {
            ++lineno;
            std::string line = raw;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) fail_line(lineno, "expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail_line(lineno, "empty key");
            if (kv.count(key)) fail_line(lineno, "duplicate key '" + key + "'");
            kv[key] = RawEntry{value, lineno};
        }
    }

    ExperimentConfig cfg;
    auto take = [&](const char* key) -> const RawEntry* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        return &it->second;
    };

    // required command first, so later validation can reference it
    const RawEntry* cmd = take("command");
    if (!cmd) throw Error("missing required key 'command'");
    static const std::map<std::string, Command> commands = {
        {"solve", Command::Solve},
        {"smallness", Command::Smallness},
        {"horizon", Command::Horizon},
        {"norm", Command::Norm},
        {"verify-product", Command::VerifyProduct},
        {"verify-embedding", Command::VerifyEmbedding},
        {"verify-caloric", Command::VerifyCaloric},
        {"estimate-constant", Command::EstimateConstant},
        {"kernel-check", Command::KernelCheck},
    };
    auto cit = commands.find(cmd->value);
    if (cit == commands.end()) fail_line(cmd->line, "unknown command '" + cmd->value + "'");
    cfg.command = cit->second;

    int family_line = 0;
    std::map<std::string, std::function<void(const RawEntry&)>> handlers;
    auto num = [&](const char* key, double& slot) {
        handlers[key] = [&slot](const RawEntry& e) { slot = parse_double(e); };
    };
    auto integer = [&](const char* key, int& slot) {
        handlers[key] = [&slot](const RawEntry& e) { slot = static_cast<int>(parse_int(e)); };
    };
    handlers["command"] = [](const RawEntry&) {};
    handlers["schema"] = [&](const RawEntry& e) {
        cfg.schema = static_cast<int>(parse_int(e));
        if (cfg.schema != 1) fail_line(e.line, "unsupported schema version");
    };
    integer("d", cfg.d);
    integer("n", cfg.n);
    num("L", cfg.box_L);
    handlers["family"] = [&](const RawEntry& e) {
        family_line = e.line;
        if (e.value == "Th1") cfg.family = FamilyName::Th1;
        else if (e.value == "Th5") cfg.family = FamilyName::Th5;
        else if (e.value == "Th7") cfg.family = FamilyName::Th7;
        else if (e.value == "Generic") cfg.family = FamilyName::Generic;
        else fail_line(e.line, "unknown family '" + e.value + "'");
    };
    num("q", cfg.q);
    num("p", cfg.p);
    num("r", cfg.r);
    num("s", cfg.s);
    num("T", cfg.T);
    integer("time_nodes", cfg.time_nodes);
    num("picard_tol", cfg.picard_tol);
    integer("max_iters", cfg.max_iters);
    integer("panels", cfg.panels);
    integer("gauss_points", cfg.gauss_points);
    handlers["seed"] = [&](const RawEntry& e) {
        cfg.seed = static_cast<std::uint64_t>(parse_int(e));
    };
    integer("ensemble_size", cfg.ensemble_size);
    handlers["profile"] = [&](const RawEntry& e) { cfg.profile = parse_list(e); };
    handlers["u0"] = [&](const RawEntry& e) { cfg.u0_kind = e.value; };
    num("amplitude", cfg.amplitude);
    handlers["dump_fields"] = [&](const RawEntry& e) { cfg.dump_fields = parse_bool(e); };
    num("delta", cfg.delta);
    num("t_cap", cfg.t_cap);
    handlers["norm_kind"] = [&](const RawEntry& e) { cfg.norm_kind = e.value; };
    num("norm_s", cfg.norm_s);
    handlers["norm_p"] = [&](const RawEntry& e) {
        cfg.norm_p = e.value == "inf" ? std::numeric_limits<double>::infinity()
                                      : parse_double(e);
    };
    num("norm_q", cfg.norm_q);
    num("norm_alpha", cfg.norm_alpha);
    num("norm_t_max", cfg.norm_t_max);
    handlers["input"] = [&](const RawEntry& e) { cfg.input_path = e.value; };
    handlers["pair"] = [&](const RawEntry& e) { cfg.embedding.pair_id = e.value; };
    num("pair_s", cfg.embedding.s);
    num("pair_q", cfg.embedding.q);
    handlers["pair_p1"] = [&](const RawEntry& e) {
        cfg.embedding.p1 = e.value == "inf" ? std::numeric_limits<double>::infinity()
                                            : parse_double(e);
    };
    handlers["pair_p2"] = [&](const RawEntry& e) {
        cfg.embedding.p2 = e.value == "inf" ? std::numeric_limits<double>::infinity()
                                            : parse_double(e);
    };
    num("pair_s1", cfg.embedding.s1);
    num("pair_q1", cfg.embedding.q1);
    num("pair_s2", cfg.embedding.s2);
    num("pair_q2", cfg.embedding.q2);
    num("pair_p", cfg.embedding.p);
    handlers["refine"] = [&](const RawEntry& e) { cfg.refine_study = parse_bool(e); };
    num("prod_s", cfg.prod_s);
    num("prod_p", cfg.prod_p);
    num("prod_q", cfg.prod_q);
    integer("kernel_n", cfg.kernel_n);
    num("kernel_box", cfg.kernel_box);
    handlers["radii"] = [&](const RawEntry& e) { cfg.radii = parse_list(e); };
    handlers["out"] = [&](const RawEntry& e) { cfg.out_dir = e.value; };

    for (const auto& [key, entry] : kv) {
        auto it = handlers.find(key);
        if (it == handlers.end()) fail_line(entry.line, "unknown key '" + key + "'");
        it->second(entry);
    }

    // structural validation; constraint failures carry the relevant line
    auto line_of = [&](const char* key, int fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second.line;
    };
    try {
        make_grid(cfg.d, cfg.n, cfg.box_L);
    } catch (const Error& err) {
        fail_line(line_of("n", line_of("d", cmd->line)), err.what());
    }
    bool needs_family = cfg.command == Command::Solve ||
                        cfg.command == Command::Smallness ||
                        cfg.command == Command::Horizon ||
                        cfg.command == Command::EstimateConstant ||
                        cfg.command == Command::VerifyCaloric;
    if (needs_family) {
        try {
            cfg.make_family();
        } catch (const Error& err) {
            fail_line(line_of("q", family_line > 0 ? family_line : cmd->line), err.what());
        }
    }
    if (cfg.command == Command::Solve) cfg.make_solver_config();
    if (cfg.command == Command::Norm) {
        cfg.make_norm_spec();
        if (cfg.input_path.empty()) throw Error("norm command needs an input field path");
    }
    if (cfg.command == Command::VerifyEmbedding) cfg.embedding.validate(cfg.d);
    if (cfg.command == Command::Horizon && !(cfg.delta > 0)) {
        throw Error("horizon command needs delta > 0");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace critflow
