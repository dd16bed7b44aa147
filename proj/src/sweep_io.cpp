#include "pvg/sweep_io.hpp"

#include "pvg/error.hpp"
#include "pvg/format.hpp"
#include "pvg/series_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace pvg {

namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

// CSV field quoting for free-text error messages.
std::string quoted(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        config_fail(std::string("field '") + key + "': " + e.what());
    }
}

void require_object(const json& obj, const char* name) {
    if (!obj.is_object()) config_fail(std::string(name) + " must be an object");
}

std::vector<double> read_grid(const json& value, const char* name) {
    if (value.is_array()) {
        std::vector<double> grid;
        for (const auto& v : value) {
            if (!v.is_number()) config_fail(std::string(name) + " entries must be numbers");
            grid.push_back(v.get<double>());
        }
        return grid;
    }
    if (value.is_object()) {
        double lo = 0.0, hi = 0.0;
        std::size_t count = 0;
        read_field(value, "log10_min", lo);
        read_field(value, "log10_max", hi);
        read_field(value, "count", count);
        if (count == 0) config_fail(std::string(name) + ": count must be >= 1");
        return log_grid(lo, hi, count);
    }
    config_fail(std::string(name) + " must be an array or a log-grid object");
}

}  // namespace

json metrics_to_json(const GraphMetrics& g) {
    json j;
    j["n_nodes"] = g.n_nodes;
    j["n_edges"] = g.n_edges;
    j["density"] = g.density;
    j["mean_degree"] = g.mean_degree;
    j["k_max"] = g.k_max;
    j["L"] = optional_json(g.avg_path_length);
    j["C"] = optional_json(g.clustering);
    j["sigma"] = optional_json(g.sigma);
    j["C_rand"] = optional_json(g.c_rand);
    j["L_rand"] = optional_json(g.l_rand);
    j["gamma"] = optional_json(g.gamma);
    j["gamma_r2"] = optional_json(g.gamma_r2);
    return j;
}

void write_cells_csv(std::ostream& out, const SweepResult& result, const SweepConfig& cfg) {
    out << "rho,p0,segment_id,metric,value,error\n";
    for (const auto& cell : result.cells) {
        const std::string key =
            format_double(cell.rho) + ',' + format_double(cell.p0) + ',' + std::to_string(cell.segment_id);
        if (!cell.metrics) {
            out << key << ",,," << quoted(cell.error) << '\n';
            continue;
        }
        for (const auto& [name, value] : metric_values(*cell.metrics, cfg)) {
            out << key << ',' << name << ',' << optional_text(value) << ",\n";
        }
    }
}

void write_aggregates_csv(std::ostream& out, const SweepResult& result) {
    out << "rho,p0,metric,mean,std\n";
    for (const auto& a : result.aggregates) {
        out << format_double(a.rho) << ',' << format_double(a.p0) << ',' << a.metric << ','
            << optional_text(a.mean) << ',' << optional_text(a.std) << '\n';
    }
}

json sweep_to_json(const SweepResult& result, const SweepConfig& cfg) {
    json cells = json::array();
    for (const auto& cell : result.cells) {
        json c;
        c["rho"] = cell.rho;
        c["p0"] = cell.p0;
        c["segment_id"] = cell.segment_id;
        if (cell.metrics) {
            json values = json::object();
            for (const auto& [name, value] : metric_values(*cell.metrics, cfg)) {
                values[name] = optional_json(value);
            }
            c["metrics"] = std::move(values);
            c["error"] = nullptr;
        } else {
            c["metrics"] = nullptr;
            c["error"] = cell.error;
        }
        cells.push_back(std::move(c));
    }
    json aggregates = json::array();
    for (const auto& a : result.aggregates) {
        aggregates.push_back({{"rho", a.rho},
                              {"p0", a.p0},
                              {"metric", a.metric},
                              {"mean", optional_json(a.mean)},
                              {"std", optional_json(a.std)},
                              {"count", a.count}});
    }
    return {{"n_segments", result.n_segments}, {"cells", cells}, {"aggregates", aggregates}};
}

ExperimentConfig parse_experiment_config(const json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "config");
    ExperimentConfig cfg;

    std::string experiment = "fig2";
    read_field(doc, "experiment", experiment);
    if (experiment == "fig2") {
        cfg.kind = ExperimentConfig::Kind::Fig2;
    } else if (experiment == "fig3") {
        cfg.kind = ExperimentConfig::Kind::Fig3;
        cfg.sweep.metrics = {Metric::Density, Metric::MeanDegree, Metric::C,
                             Metric::L,       Metric::Sigma,      Metric::Gamma};
    } else {
        config_fail("experiment must be 'fig2' or 'fig3'");
    }

    std::optional<std::uint64_t> global_seed;
    if (doc.contains("seed")) {
        std::uint64_t s = 0;
        read_field(doc, "seed", s);
        global_seed = s;
    }
    const auto seed_or = [&](const json& obj, std::uint64_t& out) {
        if (obj.contains("seed")) {
            read_field(obj, "seed", out);
        } else if (global_seed) {
            out = *global_seed;
        }
    };

    const json empty = json::object();
    const json& am = doc.contains("am_signal") ? doc.at("am_signal") : empty;
    require_object(am, "am_signal");
    read_field(am, "carrier_amplitude", cfg.am.carrier_amplitude);
    read_field(am, "carrier_hz", cfg.am.carrier_hz);
    read_field(am, "modulation_hz", cfg.am.modulation_hz);
    read_field(am, "modulation_depth", cfg.am.modulation_depth);
    read_field(am, "noise_std", cfg.am.noise_std);
    read_field(am, "duration_s", cfg.am.duration_s);
    read_field(am, "dt", cfg.am.dt);
    seed_or(am, cfg.am.rng_seed);

    const json& rec = doc.contains("recording") ? doc.at("recording") : empty;
    require_object(rec, "recording");
    if (rec.contains("input")) {
        std::string path;
        read_field(rec, "input", path);
        std::filesystem::path p(path);
        if (p.is_relative()) p = base_dir / p;
        cfg.input_path = std::filesystem::absolute(p).lexically_normal().string();
    }
    read_field(rec, "dt", cfg.input_dt);
    const json& sur = rec.contains("surrogate") ? rec.at("surrogate") : empty;
    require_object(sur, "recording.surrogate");
    read_field(sur, "duration_s", cfg.surrogate.duration_s);
    read_field(sur, "rate_hz", cfg.surrogate.rate_hz);
    read_field(sur, "std", cfg.surrogate.std_dev);
    seed_or(sur, cfg.surrogate.seed);

    const json& pre = doc.contains("preprocess") ? doc.at("preprocess") : empty;
    require_object(pre, "preprocess");
    read_field(pre, "cutoff_hz", cfg.preprocess.cutoff_hz);
    read_field(pre, "filter_order", cfg.preprocess.filter_order);
    read_field(pre, "target_rate_hz", cfg.preprocess.target_rate_hz);
    read_field(pre, "segment_seconds", cfg.preprocess.segment_seconds);
    read_field(pre, "n_segments", cfg.preprocess.n_segments);

    const json& sweep = doc.contains("sweep") ? doc.at("sweep") : empty;
    require_object(sweep, "sweep");
    if (sweep.contains("rho_grid")) cfg.sweep.rho_grid = read_grid(sweep.at("rho_grid"), "rho_grid");
    if (sweep.contains("p0_grid")) cfg.sweep.p0_grid = read_grid(sweep.at("p0_grid"), "p0_grid");
    if (sweep.contains("metrics")) {
        const auto& list = sweep.at("metrics");
        if (!list.is_array()) config_fail("sweep.metrics must be an array of names");
        cfg.sweep.metrics.clear();
        for (const auto& m : list) {
            if (!m.is_string()) config_fail("sweep.metrics entries must be strings");
            cfg.sweep.metrics.push_back(parse_metric(m.get<std::string>()));
        }
    }
    const bool wants_sigma = cfg.sweep.enabled(Metric::Sigma);
    if (sweep.contains("baseline") && !sweep.at("baseline").is_null()) {
        const auto& b = sweep.at("baseline");
        require_object(b, "sweep.baseline");
        BaselineConfig base;
        read_field(b, "n_realizations", base.n_realizations);
        seed_or(b, base.rng_seed);
        cfg.sweep.baseline = base;
    } else if (wants_sigma && !sweep.contains("baseline")) {
        BaselineConfig base;
        if (global_seed) base.rng_seed = *global_seed;
        cfg.sweep.baseline = base;
    }

    if (cfg.kind == ExperimentConfig::Kind::Fig2) {
        cfg.am.validate();
    } else {
        cfg.preprocess.validate();
        if (!cfg.input_path) {
            const auto& s = cfg.surrogate;
            if (!(s.duration_s > 0.0) || !(s.rate_hz > 0.0) || !(s.std_dev >= 0.0)) {
                config_fail("surrogate needs duration_s > 0, rate_hz > 0, std >= 0");
            }
        } else if (!(cfg.input_dt > 0.0)) {
            config_fail("recording.dt must be > 0");
        }
    }
    cfg.sweep.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
    }
    return parse_experiment_config(doc, path.parent_path());
}

json experiment_manifest(const ExperimentConfig& cfg) {
    json doc;
    const bool fig2 = cfg.kind == ExperimentConfig::Kind::Fig2;
    doc["experiment"] = fig2 ? "fig2" : "fig3";
    if (fig2) {
        const auto& a = cfg.am;
        doc["am_signal"] = {{"carrier_amplitude", a.carrier_amplitude},
                            {"carrier_hz", a.carrier_hz},
                            {"modulation_hz", a.modulation_hz},
                            {"modulation_depth", a.modulation_depth},
                            {"noise_std", a.noise_std},
                            {"duration_s", a.duration_s},
                            {"dt", a.dt},
                            {"seed", a.rng_seed}};
    } else {
        json rec;
        if (cfg.input_path) {
            rec["input"] = *cfg.input_path;
            rec["dt"] = cfg.input_dt;
        } else {
            rec["surrogate"] = {{"duration_s", cfg.surrogate.duration_s},
                                {"rate_hz", cfg.surrogate.rate_hz},
                                {"std", cfg.surrogate.std_dev},
                                {"seed", cfg.surrogate.seed}};
        }
        doc["recording"] = rec;
        const auto& p = cfg.preprocess;
        doc["preprocess"] = {{"cutoff_hz", p.cutoff_hz},
                             {"filter_order", p.filter_order},
                             {"target_rate_hz", p.target_rate_hz},
                             {"segment_seconds", p.segment_seconds},
                             {"n_segments", p.n_segments}};
    }
    json metrics = json::array();
    for (auto m : cfg.sweep.metrics) metrics.push_back(std::string(metric_name(m)));
    json sweep = {{"rho_grid", cfg.sweep.rho_grid},
                  {"p0_grid", cfg.sweep.p0_grid},
                  {"metrics", metrics}};
    if (cfg.sweep.baseline) {
        sweep["baseline"] = {{"n_realizations", cfg.sweep.baseline->n_realizations},
                             {"seed", cfg.sweep.baseline->rng_seed}};
    } else {
        sweep["baseline"] = nullptr;
    }
    doc["sweep"] = sweep;
    return doc;
}

SweepResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    if (cfg.kind == ExperimentConfig::Kind::Fig2) return reproduce_fig2(cfg.am, cfg.sweep, threads);

    if (cfg.input_path) {
        const auto recording = load_series_csv(*cfg.input_path, cfg.input_dt);
        return reproduce_fig3(recording, cfg.preprocess, cfg.sweep, threads);
    }
    const auto& s = cfg.surrogate;
    const auto n = static_cast<std::size_t>(std::llround(s.duration_s * s.rate_hz));
    const auto recording = generate_pink_noise(n, 1.0 / s.rate_hz, s.std_dev, s.seed);
    return reproduce_fig3(recording, cfg.preprocess, cfg.sweep, threads);
}

}  // namespace pvg
