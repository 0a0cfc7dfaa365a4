#include "argo/io/config.hpp"

#include "argo/errors.hpp"
#include "argo/io/csv.hpp"

#include <algorithm>

namespace argo::io {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

void require_file(const fs::path& p, const char* what) {
    if (!fs::is_regular_file(p)) throw ConfigError(std::string(what) + " file not found: " + p.string());
}

eval::Period parse_period(const json& j) {
    const auto name = j.at("name").get<std::string>();
    const auto start = data::parse_date(j.at("start").get<std::string>());
    const auto end = data::parse_date(j.at("end").get<std::string>());
    if (end < start) throw ConfigError("period '" + name + "' ends before it starts");
    return eval::Period::from_dates(name, start, end);
}

void parse_periods(const json& j, std::vector<eval::Period>& out) {
    const auto presets = eval::preset_periods();
    for (const auto& item : j) {
        if (item.is_string()) {
            const auto name = item.get<std::string>();
            if (name == "presets") {
                out.insert(out.end(), presets.begin(), presets.end());
                continue;
            }
            const auto it = std::find_if(presets.begin(), presets.end(), [&](const auto& p) { return p.name == name; });
            if (it == presets.end()) throw ConfigError("unknown preset period '" + name + "'");
            out.push_back(*it);
        } else {
            out.push_back(parse_period(item));
        }
    }
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b)
            if (out[a].name == out[b].name) throw ConfigError("duplicate period name '" + out[a].name + "'");
}

void parse_model(const json& j, models::ModelSpec& m) {
    m.lags = j.value("lags", m.lags);
    m.window = j.value("window", m.window);
    if (j.contains("regime")) m.regime = solver::parse_regime(j.at("regime").get<std::string>());
    m.transform.delta = j.value("delta", m.transform.delta);
    if (j.contains("benchmark_scale")) {
        const auto s = j.at("benchmark_scale").get<std::string>();
        if (s == "percent") m.benchmark_scale = models::BenchmarkScale::percent;
        else if (s == "logit") m.benchmark_scale = models::BenchmarkScale::logit;
        else throw ConfigError("benchmark_scale must be 'percent' or 'logit'");
    }
    if (j.contains("cv")) {
        const json& c = j.at("cv");
        auto& g = m.cv;
        g.folds = c.value("folds", g.folds);
        g.points_1d = c.value("points_1d", g.points_1d);
        g.points_2d = c.value("points_2d", g.points_2d);
        g.min_ratio = c.value("min_ratio", g.min_ratio);
        g.min_ratio_underdetermined = c.value("min_ratio_underdetermined", g.min_ratio_underdetermined);
        g.l2_max = c.value("l2_max", g.l2_max);
        g.l2_min_ratio = c.value("l2_min_ratio", g.l2_min_ratio);
        if (c.contains("fold_strategy")) {
            const auto s = c.at("fold_strategy").get<std::string>();
            if (s == "shuffled") g.fold_strategy = solver::FoldStrategy::shuffled;
            else if (s == "contiguous") g.fold_strategy = solver::FoldStrategy::contiguous;
            else throw ConfigError("fold_strategy must be 'shuffled' or 'contiguous'");
        }
    }
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        m.solver.max_cycles = s.value("max_cycles", m.solver.max_cycles);
        m.solver.tolerance = s.value("tolerance", m.solver.tolerance);
    }
}

}  // namespace

void RunConfig::validate() const {
    require_file(ili, "ILI");
    if (revisions) require_file(*revisions, "revisions");
    if (panels.empty()) throw ConfigError("at least one search panel is required");
    for (const auto& p : panels) require_file(p.path, "panel");
    if (gft) require_file(*gft, "GFT");
    model.validate();
    model.transform.validate();
    model.cv.validate();
    bootstrap.validate();
    if (eval_start && eval_end && *eval_end < *eval_start) throw ConfigError("evaluation range ends before it starts");
    for (const auto m : methods)
        if (m == models::Method::gft_ar3 && !gft) throw ConfigError("method gft_ar3 needs a GFT input file");
    if (threads < 1) throw ConfigError("threads must be at least 1");
}

RunConfig parse_config(const std::string& json_text, const fs::path& base_dir) {
    RunConfig c;
    try {
        const json j = json::parse(json_text);
        if (!j.contains("seed")) throw ConfigError("config: 'seed' is required");
        c.seed = j.at("seed").get<std::uint64_t>();

        const json& d = j.at("data");
        c.ili = resolve(base_dir, d.at("ili").get<std::string>());
        if (d.contains("revisions")) c.revisions = resolve(base_dir, d.at("revisions").get<std::string>());
        if (d.contains("gft")) c.gft = resolve(base_dir, d.at("gft").get<std::string>());
        for (const auto& p : d.at("panels")) {
            PanelInput in;
            in.path = resolve(base_dir, p.at("path").get<std::string>());
            in.source = data::parse_search_source(p.value("source", std::string("trends")));
            c.panels.push_back(in);
        }

        if (j.contains("model")) parse_model(j.at("model"), c.model);
        if (j.contains("vintage_mode"))
            c.vintage_mode = models::parse_vintage_mode(j.at("vintage_mode").get<std::string>());
        if (j.contains("methods"))
            for (const auto& m : j.at("methods")) c.methods.push_back(models::parse_method(m.get<std::string>()));
        if (j.contains("evaluation")) {
            const json& e = j.at("evaluation");
            if (e.contains("start")) c.eval_start = data::parse_date(e.at("start").get<std::string>());
            if (e.contains("end")) c.eval_end = data::parse_date(e.at("end").get<std::string>());
        }
        if (j.contains("periods")) parse_periods(j.at("periods"), c.periods);
        if (j.contains("bootstrap")) {
            const json& b = j.at("bootstrap");
            c.bootstrap.mean_block_length = b.value("mean_block_length", c.bootstrap.mean_block_length);
            c.bootstrap.replicates = b.value("replicates", c.bootstrap.replicates);
            c.bootstrap.level = b.value("level", c.bootstrap.level);
        }
        if (j.contains("output")) c.output = resolve(base_dir, j.at("output").get<std::string>());
        c.threads = j.value("threads", c.threads);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const DataError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.bootstrap.seed = c.seed;
    c.bootstrap.threads = c.threads;
    return c;
}

RunConfig load_config(const fs::path& path) {
    if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
    RunConfig c = parse_config(read_text(path), fs::absolute(path).parent_path());
    c.validate();
    return c;
}

json to_json(const RunConfig& c) {
    json j;
    j["seed"] = c.seed;
    json d;
    d["ili"] = c.ili.filename().string();
    if (c.revisions) d["revisions"] = c.revisions->filename().string();
    if (c.gft) d["gft"] = c.gft->filename().string();
    d["panels"] = json::array();
    for (const auto& p : c.panels)
        d["panels"].push_back({{"path", p.path.filename().string()}, {"source", data::to_string(p.source)}});
    j["data"] = d;

    const auto& m = c.model;
    j["model"] = {
        {"lags", m.lags},
        {"window", m.window},
        {"regime", solver::to_string(m.regime)},
        {"delta", m.transform.delta},
        {"percent_divisor", m.transform.percent_divisor},
        {"benchmark_scale", m.benchmark_scale == models::BenchmarkScale::percent ? "percent" : "logit"},
        {"cv",
         {{"folds", m.cv.folds},
          {"points_1d", m.cv.points_1d},
          {"points_2d", m.cv.points_2d},
          {"min_ratio", m.cv.min_ratio},
          {"min_ratio_underdetermined", m.cv.min_ratio_underdetermined},
          {"l2_max", m.cv.l2_max},
          {"l2_min_ratio", m.cv.l2_min_ratio},
          {"fold_strategy", m.cv.fold_strategy == solver::FoldStrategy::shuffled ? "shuffled" : "contiguous"},
          {"selection", "minimum mean CV error, ties to the larger penalty"}}},
        {"solver", {{"max_cycles", m.solver.max_cycles}, {"tolerance", m.solver.tolerance}}},
        {"standardization", "per training window, population sd"},
    };
    j["vintage_mode"] = models::to_string(c.vintage_mode);
    j["methods"] = json::array();
    for (const auto meth : c.methods) j["methods"].push_back(models::to_string(meth));
    j["bootstrap"] = {{"mean_block_length", c.bootstrap.mean_block_length},
                      {"replicates", c.bootstrap.replicates},
                      {"level", c.bootstrap.level},
                      {"interval", "basic, log scale"},
                      {"quantiles", "linear interpolation of order statistics"},
                      {"degenerate_replicates", "redrawn, at most 10 x replicates in total"}};
    return j;
}

}  // namespace argo::io
