#include "nlp/app/config.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <set>

namespace nlp::app {
namespace {

using json = nlohmann::json;

// Reads one JSON object, rejecting keys nobody asked for.
class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j.is_object()) throw ConfigError(where_ + ": expected an object");
    }
    void finish() const {
        for (const auto& [key, _] : j_.items())
            if (!seen_.count(key)) throw ConfigError(where_ + ": unknown key '" + key + "'");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }
    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }
    template <class T>
    void get(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(where_ + "." + key + ": wrong type");
        }
    }
    const std::string& where() const { return where_; }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

double parse_period(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.size() >= 2 && s.ends_with("pi")) {
            s.resize(s.size() - 2);
            double f = 1.0;
            if (!s.empty()) {
                auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), f);
                if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("grid.period: cannot parse '" + v.get<std::string>() + "'");
            }
            return f * std::numbers::pi;
        }
    }
    throw ConfigError("grid.period: expected a number or '<x>pi'");
}

template <class F>
auto parse_enum(const std::string& where, const std::string& name, F&& parse) {
    try {
        return parse(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

ModelConfig read_model(const json& j) {
    ModelConfig m;
    Reader r(j, "model");
    std::string preset(models::to_string(m.preset));
    r.get("preset", preset);
    m.preset = parse_enum("model.preset", preset, models::parse_preset);
    r.get("species", m.species);
    if (r.has("coupling")) {
        std::vector<double> c;
        r.get("coupling", c);
        m.coupling = c;
    }
    if (r.has("modulation")) {
        Modulation mod;
        Reader mr(r.raw("modulation"), "model.modulation");
        mr.get("amplitude", mod.amplitude);
        mr.get("axis", mod.axis);
        mr.get("wavelength", mod.wavelength);
        mr.finish();
        m.modulation = mod;
    }
    r.finish();
    return m;
}

GridConfig read_grid(const json& j) {
    GridConfig g;
    Reader r(j, "grid");
    r.get("d", g.d);
    r.get("n", g.n);
    if (r.has("period")) g.period = parse_period(r.raw("period"));
    r.finish();
    return g;
}

models::InitialDataSpec read_initial(const json& j, std::uint64_t seed) {
    models::InitialDataSpec s;
    s.seed = seed;
    Reader r(j, "initial");
    std::string kind(models::to_string(s.kind));
    r.get("kind", kind);
    s.kind = parse_enum("initial.kind", kind, models::parse_initial_kind);
    r.get("amplitude", s.amplitude);
    r.get("species_weights", s.species_weights);
    r.get("mollifier", s.mollifier);
    r.get("generator", s.generator);
    r.get("bandwidth", s.bandwidth);
    r.get("seed", s.seed);
    r.get("width", s.width);
    r.get("path", s.path);
    r.finish();
    return s;
}

solver::SolverConfig read_solver(const json& j) {
    solver::SolverConfig s;
    Reader r(j, "solver");
    std::string scheme(solver::to_string(s.scheme));
    r.get("scheme", scheme);
    s.scheme = parse_enum("solver.scheme", scheme, solver::parse_scheme);
    r.get("dt", s.dt);
    r.get("t_end", s.t_end);
    r.get("snapshot_every", s.snapshot_every);
    r.get("picard_cap", s.picard_cap);
    r.get("picard_tol", s.picard_tol);
    r.get("overflow_guard", s.overflow_guard);
    if (r.has("dealias_cutoff")) {
        int c = 0;
        r.get("dealias_cutoff", c);
        s.dealias_cutoff = c;
    }
    r.finish();
    return s;
}

DiagnosticsConfig read_diagnostics(const json& j) {
    DiagnosticsConfig d;
    Reader r(j, "diagnostics");
    r.get("thetas", d.norms.thetas);
    r.get("pm_indices", d.norms.pm_indices);
    if (r.has("besov")) {
        Reader b(r.raw("besov"), "diagnostics.besov");
        b.get("enabled", d.norms.besov_enabled);
        b.get("a", d.norms.besov.a);
        b.get("k_min", d.norms.besov.k_min);
        b.get("k_max", d.norms.besov.k_max);
        b.finish();
    }
    r.get("norms_every", d.norms_every);
    r.get("snapshots_every", d.snapshots_every);
    r.finish();
    return d;
}

OracleConfig read_oracle(const json& j) {
    OracleConfig o;
    Reader r(j, "oracle");
    r.get("cutoff", o.cutoff);
    o.oracle_cutoff = o.cutoff;
    r.get("oracle_cutoff", o.oracle_cutoff);
    r.get("steps", o.steps);
    r.get("checkpoints", o.checkpoints);
    r.finish();
    return o;
}

}  // namespace

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    Reader r(j, "config");
    r.get("seed", cfg.seed);
    if (r.has("model")) cfg.model = read_model(r.raw("model"));
    if (r.has("grid")) cfg.grid = read_grid(r.raw("grid"));
    cfg.initial.seed = cfg.seed;
    if (r.has("initial")) cfg.initial = read_initial(r.raw("initial"), cfg.seed);
    if (r.has("solver")) cfg.solver = read_solver(r.raw("solver"));
    if (r.has("diagnostics")) cfg.diagnostics = read_diagnostics(r.raw("diagnostics"));
    r.get("output_dir", cfg.output_dir);
    if (r.has("oracle")) cfg.oracle = read_oracle(r.raw("oracle"));
    r.finish();
    return cfg;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    using oj = nlohmann::ordered_json;
    oj model = {{"preset", std::string(models::to_string(c.model.preset))}, {"species", c.model.species}};
    if (c.model.coupling) model["coupling"] = *c.model.coupling;
    if (c.model.modulation)
        model["modulation"] = {{"amplitude", c.model.modulation->amplitude},
                               {"axis", c.model.modulation->axis},
                               {"wavelength", c.model.modulation->wavelength}};
    const auto& in = c.initial;
    oj initial = {{"kind", std::string(models::to_string(in.kind))},
                  {"amplitude", in.amplitude},
                  {"species_weights", in.species_weights},
                  {"mollifier", in.mollifier},
                  {"generator", in.generator},
                  {"bandwidth", in.bandwidth},
                  {"seed", in.seed},
                  {"width", in.width},
                  {"path", in.path}};
    const auto& s = c.solver;
    oj solver = {{"scheme", std::string(solver::to_string(s.scheme))},
                 {"dt", s.dt},
                 {"t_end", s.t_end},
                 {"snapshot_every", s.snapshot_every},
                 {"picard_cap", s.picard_cap},
                 {"picard_tol", s.picard_tol},
                 {"overflow_guard", s.overflow_guard}};
    if (s.dealias_cutoff) solver["dealias_cutoff"] = *s.dealias_cutoff;
    const auto& n = c.diagnostics.norms;
    oj diag = {{"thetas", n.thetas},
               {"pm_indices", n.pm_indices},
               {"besov", {{"enabled", n.besov_enabled}, {"a", n.besov.a}, {"k_min", n.besov.k_min}, {"k_max", n.besov.k_max}}},
               {"norms_every", c.diagnostics.norms_every},
               {"snapshots_every", c.diagnostics.snapshots_every}};
    oj out = {{"model", model},
              {"grid", {{"d", c.grid.d}, {"n", c.grid.n}, {"period", c.grid.period}}},
              {"initial", initial},
              {"solver", solver},
              {"diagnostics", diag},
              {"output_dir", c.output_dir},
              {"seed", c.seed}};
    if (c.oracle)
        out["oracle"] = {{"cutoff", c.oracle->cutoff},
                         {"oracle_cutoff", c.oracle->oracle_cutoff},
                         {"steps", c.oracle->steps},
                         {"checkpoints", c.oracle->checkpoints}};
    return out;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    auto cfg = config_from_json(j);
    validate(cfg);
    return cfg;
}

models::SystemSpec build_system(const RunConfig& cfg) {
    try {
        auto spec = models::build_preset(cfg.model.preset, cfg.grid.d, cfg.model.species, cfg.model.coupling);
        if (cfg.model.modulation)
            models::modulate_coupling(spec, cfg.model.modulation->amplitude, cfg.model.modulation->axis,
                                      cfg.model.modulation->wavelength);
        return spec;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
}

spectral::TorusGrid build_grid(const RunConfig& cfg) {
    try {
        return spectral::TorusGrid(cfg.grid.d, cfg.grid.n, cfg.grid.period);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

void validate(const RunConfig& cfg) {
    const auto grid = build_grid(cfg);
    build_system(cfg);
    try {
        solver::validate(cfg.solver);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solver: ") + e.what());
    }
    try {
        models::realize(cfg.initial, grid, cfg.model.species);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("initial: ") + e.what());
    }
    const auto& d = cfg.diagnostics;
    if (d.norms_every < 1) throw ConfigError("diagnostics.norms_every must be >= 1");
    if (d.snapshots_every < 0) throw ConfigError("diagnostics.snapshots_every must be >= 0");
    if (d.norms.besov_enabled && d.norms.besov.k_min > d.norms.besov.k_max)
        throw ConfigError("diagnostics.besov: k_min above k_max");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (cfg.oracle) {
        const auto& o = *cfg.oracle;
        const int band = cfg.grid.n / 3;
        if (o.cutoff < 0 || o.cutoff > 10 || o.oracle_cutoff < 0 || o.oracle_cutoff > 10)
            throw ConfigError("oracle: cutoffs must lie in [0, 10]");
        if (std::max(o.cutoff, o.oracle_cutoff) > band) throw ConfigError("oracle: cutoff exceeds the n/3 band");
        if (o.steps < 1 || o.checkpoints < 1 || o.steps % o.checkpoints != 0)
            throw ConfigError("oracle: steps must be a positive multiple of checkpoints");
    }
}

}  // namespace nlp::app
