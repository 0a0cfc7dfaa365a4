#include "argo/cli/commands.hpp"

#include "argo/errors.hpp"
#include "argo/io/csv.hpp"
#include "argo/io/readers.hpp"
#include "argo/io/synthetic.hpp"
#include "argo/models/argo_model.hpp"
#include "argo/rng.hpp"
#include "argo/transforms/transforms.hpp"

#include <CLI11.hpp>
#include <glob.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>

namespace argo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kBootstrapStream = 0x62a9d9ed799705f5ULL;

/// Output directory written under a sibling staging name and renamed into place.
class StagedDir {
public:
    StagedDir(fs::path target, bool overwrite) : target_(std::move(target)), overwrite_(overwrite) {
        if (target_.empty()) throw ConfigError("no output directory given (--out)");
        if (target_.filename().empty()) target_ = target_.parent_path();
        if (fs::exists(target_) && !overwrite_)
            throw ConfigError("output directory already exists: " + target_.string() + " (use --overwrite)");
        staging_ = target_.parent_path() / ("." + target_.filename().string() + ".partial");
        if (!target_.parent_path().empty()) fs::create_directories(target_.parent_path());
        fs::remove_all(staging_);
        fs::create_directory(staging_);
    }
    StagedDir(const StagedDir&) = delete;
    StagedDir& operator=(const StagedDir&) = delete;
    ~StagedDir() {
        std::error_code ec;
        if (!committed_) fs::remove_all(staging_, ec);
    }

    [[nodiscard]] fs::path file(const std::string& name) const { return staging_ / name; }

    void commit() {
        if (fs::exists(target_)) fs::remove_all(target_);
        fs::rename(staging_, target_);
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path staging_;
    bool overwrite_;
    bool committed_ = false;
};

std::vector<std::string> week_fields(const data::EpiWeek& w) {
    return {std::to_string(w.year), std::to_string(w.week), data::format_date(w.end_date)};
}

std::vector<double> errors_in(const data::WeeklySeries& estimates, const data::WeeklySeries& targets,
                              const eval::Period& period) {
    const auto s = eval::slice_period(estimates, targets, period);
    std::vector<double> e(s.estimates.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.estimates[i] - s.targets[i];
    return e;
}

json meta_header(const std::string& command) {
    json j;
    j["tool"] = "argo";
    j["version"] = ARGO_VERSION;
    j["command"] = command;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- evaluate -------------------------------------------------------------

void write_estimates(const StagedDir& dir, const Evaluation& ev) {
    std::vector<std::string> header{"year", "week", "end_date", "target"};
    std::vector<data::WeeklySeries> est;
    for (const auto& s : ev.series) {
        header.push_back(models::to_string(s.method));
        est.push_back(s.estimates_percent());
    }
    io::CsvWriter out(header);
    for (std::size_t k = 0; k < ev.range.size(); ++k) {
        const data::EpiWeek w = data::advance(ev.range.first, static_cast<std::int64_t>(k));
        auto f = week_fields(w);
        f.push_back(io::format_exact(ev.targets.at(w)));
        for (const auto& e : est) f.push_back(io::format_exact(e.at(w)));
        out.add_row(f);
    }
    out.write(dir.file("estimates.csv"));
}

void write_metrics(const fs::path& path, const eval::MetricTable& table) {
    io::CsvWriter out({"method", "period", "metric", "value", "relative", "best"});
    for (const auto& c : table.cells)
        out.add_row({c.method, c.period, eval::to_string(c.metric), io::format_significant(c.value),
                     c.relative ? io::format_significant(*c.relative) : "", c.best ? "1" : "0"});
    out.write(path);
}

void write_efficiency(const fs::path& path, const std::vector<EfficiencyRow>& rows) {
    io::CsvWriter out({"method", "benchmark", "period", "point", "ci_low", "ci_high", "level", "replicates",
                       "mean_block_length", "seed"});
    for (const auto& r : rows) {
        const auto& e = r.estimate;
        out.add_row({"argo", r.benchmark, r.period, io::format_significant(e.point), io::format_significant(e.ci_low),
                     io::format_significant(e.ci_high), io::format_significant(e.level), std::to_string(e.replicates),
                     io::format_significant(e.mean_block_length), std::to_string(e.seed)});
    }
    out.write(path);
}

void write_coefficients(const fs::path& path, const models::NowcastSeries& series) {
    const auto traj = models::coefficient_trajectory(series);
    std::vector<std::string> header{"year", "week", "end_date", "active"};
    header.insert(header.end(), traj.columns.begin(), traj.columns.end());
    io::CsvWriter out(header);
    for (std::size_t r = 0; r < traj.weeks.size(); ++r) {
        auto f = week_fields(traj.weeks[r]);
        f.push_back(std::to_string(traj.active_count[r]));
        for (Eigen::Index j = 0; j < traj.values.cols(); ++j)
            f.push_back(io::format_significant(traj.values(static_cast<Eigen::Index>(r), j)));
        out.add_row(f);
    }
    out.write(path);
}

json periods_json(const std::vector<eval::Period>& periods) {
    json arr = json::array();
    for (const auto& p : periods)
        arr.push_back({{"name", p.name},
                       {"first_week_end", data::format_date(p.start.end_date)},
                       {"last_week_end", data::format_date(p.end.end_date)}});
    return arr;
}

json evaluation_meta(const io::RunConfig& config, const Evaluation& ev, const std::string& command) {
    json j = meta_header(command);
    j["config"] = io::to_json(config);
    j["evaluation_range"] = {{"first_week_end", data::format_date(ev.range.first.end_date)},
                             {"last_week_end", data::format_date(ev.range.last.end_date)},
                             {"weeks", ev.range.size()}};
    j["periods"] = periods_json(ev.periods);
    j["seeds"] = {{"global", config.seed},
                  {"weekly_cv", "substream of the global seed keyed by the week's end date"},
                  {"bootstrap", "substream of the global seed keyed by (benchmark, period) index"}};
    json filled = json::object();
    for (const auto& s : ev.series) {
        std::size_t n = 0;
        for (const auto& e : s.entries) n += e.filled_weeks.size();
        filled[models::to_string(s.method)] = n;
    }
    j["history_weeks_filled_from_finalized"] = filled;
    j["targets"] = "finalized values";
    j["metrics_scale"] = "percent";
    return j;
}

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> vintage_mode;
    std::optional<std::string> regime;
    std::optional<unsigned> threads;
    std::string out;
    bool overwrite = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "run configuration (JSON)")->required();
    cmd->add_option("--seed", o.seed, "global seed (overrides the config)");
    cmd->add_option("--vintage-mode", o.vintage_mode, "finalized or as-published");
    cmd->add_option("--regime", o.regime, "same-l1, sep-l1, same-l2, sep-l2 or enet");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_option("--out", o.out, "output directory (overrides the config)");
    cmd->add_flag("--overwrite", o.overwrite, "replace an existing output directory");
}

io::RunConfig configured(const CommonOptions& o) {
    io::RunConfig c = io::load_config(o.config);
    if (o.seed) c.seed = *o.seed;
    if (o.vintage_mode) c.vintage_mode = models::parse_vintage_mode(*o.vintage_mode);
    if (o.regime) c.model.regime = solver::parse_regime(*o.regime);
    if (o.threads) c.threads = *o.threads;
    if (!o.out.empty()) c.output = fs::path(o.out);
    c.bootstrap.seed = c.seed;
    c.bootstrap.threads = c.threads;
    c.validate();
    return c;
}

fs::path output_dir(const io::RunConfig& c) {
    if (!c.output) throw ConfigError("no output directory given (--out or 'output' in the config)");
    return *c.output;
}

int cmd_evaluate(const CommonOptions& o, std::ostream& err) {
    const io::RunConfig config = configured(o);
    StagedDir dir(output_dir(config), o.overwrite);
    const models::Dataset dataset = load_dataset(config);
    const Evaluation ev = run_evaluation(config, dataset);

    write_estimates(dir, ev);
    write_metrics(dir.file("metrics.csv"), ev.metrics);
    write_efficiency(dir.file("efficiency.csv"), ev.efficiency);
    for (const auto& s : ev.series)
        if (s.method == models::Method::argo) write_coefficients(dir.file("coefficients.csv"), s);
    io::write_text(dir.file("run_meta.json"), dump(evaluation_meta(config, ev, "evaluate")));
    dir.commit();
    err << "evaluate: " << ev.range.size() << " weeks, " << ev.series.size() << " methods, " << ev.periods.size()
        << " periods -> " << output_dir(config).string() << "\n";
    return kExitOk;
}

// ---- multiversion ---------------------------------------------------------

std::vector<std::string> expand_glob(const std::string& pattern) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    std::vector<std::string> out;
    if (rc == 0)
        for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    globfree(&g);
    std::sort(out.begin(), out.end());
    return out;
}

int cmd_multiversion(const CommonOptions& o, const std::string& pattern, const std::string& source,
                     std::ostream& err) {
    io::RunConfig config = configured(o);
    const auto files = expand_glob(pattern);
    if (files.size() < 2)
        throw ConfigError("multiversion needs at least 2 panel files, '" + pattern + "' matched " +
                          std::to_string(files.size()));
    const data::SearchSource src = data::parse_search_source(source);
    StagedDir dir(output_dir(config), o.overwrite);

    std::optional<data::SearchPanel> reference;
    std::vector<Evaluation> runs;
    for (const auto& f : files) {
        config.panels = {io::PanelInput{fs::path(f), src}};
        models::Dataset dataset = load_dataset(config);
        if (!reference) {
            reference = dataset.panel;
        } else if (dataset.panel.terms() != reference->terms() || !(dataset.panel.range().first == reference->range().first) ||
                   !(dataset.panel.range().last == reference->range().last)) {
            throw DataError("mismatched panels: " + f + " differs from " + files.front() +
                            " in its term set or date range");
        }
        runs.push_back(run_evaluation(config, dataset, false));
        err << "multiversion: " << f << " done\n";
    }

    io::CsvWriter summary({"method", "period", "metric", "mean", "sd", "relative_mean", "relative_sd", "versions"});
    const auto& first = runs.front().metrics;
    for (const auto& cell : first.cells) {
        std::vector<double> values, relative;
        for (const auto& r : runs) {
            const auto& c = r.metrics.at(cell.method, cell.period, cell.metric);
            values.push_back(c.value);
            if (c.relative) relative.push_back(*c.relative);
        }
        const MeanSd v = mean_sd(values);
        std::vector<std::string> row{cell.method, cell.period, eval::to_string(cell.metric),
                                     io::format_significant(v.mean), io::format_significant(v.sd)};
        if (relative.size() == values.size()) {
            const MeanSd rel = mean_sd(relative);
            row.push_back(io::format_significant(rel.mean));
            row.push_back(io::format_significant(rel.sd));
        } else {
            row.insert(row.end(), {"", ""});
        }
        row.push_back(std::to_string(runs.size()));
        summary.add_row(row);
    }
    summary.write(dir.file("multiversion.csv"));

    io::CsvWriter versions({"version", "panel", "method", "period", "metric", "value", "relative"});
    for (std::size_t v = 0; v < runs.size(); ++v)
        for (const auto& c : runs[v].metrics.cells)
            versions.add_row({std::to_string(v + 1), fs::path(files[v]).filename().string(), c.method, c.period,
                              eval::to_string(c.metric), io::format_significant(c.value),
                              c.relative ? io::format_significant(*c.relative) : ""});
    versions.write(dir.file("versions.csv"));

    json meta = evaluation_meta(config, runs.front(), "multiversion");
    meta["config"]["data"].erase("panels");
    json panels = json::array();
    for (const auto& f : files) panels.push_back(fs::path(f).filename().string());
    meta["panel_versions"] = panels;
    meta["panel_source"] = data::to_string(src);
    meta["sd"] = "sample standard deviation across panel versions";
    io::write_text(dir.file("run_meta.json"), dump(meta));
    dir.commit();
    return kExitOk;
}

// ---- simulate -------------------------------------------------------------

int cmd_simulate(const std::string& spec_path, std::optional<std::uint64_t> seed, const std::string& out,
                 bool overwrite, std::ostream& err) {
    io::SyntheticSpec spec = io::read_synthetic_spec(spec_path);
    if (seed) spec.seed = *seed;
    StagedDir dir(fs::path(out), overwrite);
    const io::SyntheticData data = io::generate_synthetic(spec);
    io::write_ili_csv(dir.file("ili.csv"), data.ili.finalized());
    io::write_vintage_csv(dir.file("revisions.csv"), data.ili);
    io::write_panel_csv(dir.file("panel.csv"), data.panel);
    io::write_text(dir.file("truth.json"), io::truth_json(data));
    dir.commit();
    err << "simulate: " << spec.weeks << " weeks, " << spec.terms() << " terms -> " << out << "\n";
    return kExitOk;
}

// ---- bootstrap-ci ---------------------------------------------------------

int cmd_bootstrap(const std::string& e1, const std::string& e2, const eval::BootstrapConfig& cfg,
                  const std::string& out, std::ostream& os) {
    for (const auto& p : {e1, e2})
        if (!fs::is_regular_file(p)) throw ConfigError("error file not found: " + p);
    const auto errors1 = io::read_error_csv(e1);
    const auto errors2 = io::read_error_csv(e2);
    const auto est = eval::stationary_bootstrap_ci(errors1, errors2, cfg);
    io::CsvWriter csv({"point", "ci_low", "ci_high", "level", "replicates", "mean_block_length", "seed", "redrawn"});
    csv.add_row({io::format_significant(est.point), io::format_significant(est.ci_low),
                 io::format_significant(est.ci_high), io::format_significant(est.level),
                 std::to_string(est.replicates), io::format_significant(est.mean_block_length),
                 std::to_string(est.seed), std::to_string(est.discarded)});
    if (out.empty()) {
        os << csv.str();
    } else {
        csv.write(out);
    }
    return kExitOk;
}

// ---- fit-week -------------------------------------------------------------

json penalty_json(const solver::PenaltySpec& s) {
    return {{"regime", solver::to_string(s.regime)},
            {"lambda_lag", s.lambda_lag},
            {"lambda_exo", s.lambda_exo},
            {"eta_lag", s.eta_lag},
            {"eta_exo", s.eta_exo}};
}

int cmd_fit_week(const CommonOptions& o, const std::string& week, std::ostream& os) {
    const io::RunConfig config = configured(o);
    const models::Dataset dataset = load_dataset(config);
    const data::EpiWeek t = data::week_containing(data::parse_date(week));
    const data::History history = config.vintage_mode == models::VintageMode::as_published
                                      ? dataset.ili.history_as_of(t)
                                      : dataset.ili.finalized_history(t);
    const data::WeeklySeries y_logit = transforms::logit_series(history.series, config.model.transform);
    const data::SearchPanel x_log = transforms::log_panel(dataset.panel, config.model.transform);
    const models::WeekFit wf = models::fit_week(y_logit, x_log, t, config.model, config.seed);

    json j = meta_header("fit-week");
    j["week"] = {{"year", t.year}, {"week", t.week}, {"end_date", data::format_date(t.end_date)}};
    j["seed"] = wf.seed;
    j["vintage_mode"] = models::to_string(config.vintage_mode);
    j["selected"] = penalty_json(wf.cv.selected);
    j["lambda_max"] = wf.cv.table.lambda_max;
    if (wf.cv.table.restricted_within_one_se) j["restricted_within_one_se"] = *wf.cv.table.restricted_within_one_se;
    json grid = json::array();
    for (const auto& p : wf.cv.table.points) {
        json pj = penalty_json(p.spec);
        pj["mean_error"] = p.mean_error;
        pj["std_error"] = p.std_error;
        pj["restricted"] = p.restricted;
        pj["within_one_se"] = p.within_one_se;
        grid.push_back(pj);
    }
    j["cv"] = grid;
    j["intercept"] = wf.fit.intercept;
    json coef = json::array();
    const auto& terms = dataset.panel.terms();
    for (Eigen::Index c = 0; c < wf.fit.coefficients.size(); ++c) {
        const auto idx = static_cast<std::size_t>(c);
        const std::string name =
            idx < config.model.lags ? "lag_" + std::to_string(idx + 1) : terms[idx - config.model.lags];
        coef.push_back({{"name", name}, {"value", wf.fit.coefficients(c)}});
    }
    j["coefficients"] = coef;
    j["active_set_size"] = wf.fit.active_set_size;
    j["cycles"] = wf.fit.cycles;
    j["objective"] = wf.fit.objective_value;
    const double est = models::nowcast(wf.fit, models::lag_vector(y_logit, t, config.model.lags), x_log.row(t));
    j["nowcast_percent"] = 100.0 * est;
    if (dataset.ili.finalized().contains(t)) j["finalized_percent"] = dataset.ili.finalized().at(t);

    if (o.out.empty()) {
        os << dump(j);
    } else {
        io::write_text(o.out, dump(j));
    }
    return kExitOk;
}

}  // namespace

models::Dataset load_dataset(const io::RunConfig& config) {
    const fs::path revisions = config.revisions.value_or(fs::path());
    data::VintageSeries ili;
    if (config.revisions) {
        ili = io::read_vintage_csv(revisions, config.ili);
    } else {
        ili = data::VintageSeries({}, io::read_ili_csv(config.ili));
    }
    data::SearchPanel panel = io::read_panel_csv(config.panels.front().path, config.panels.front().source);
    for (std::size_t i = 1; i < config.panels.size(); ++i)
        panel = data::concatenate(panel, io::read_panel_csv(config.panels[i].path, config.panels[i].source));
    std::optional<data::WeeklySeries> gft;
    if (config.gft) gft = io::read_gft_csv(*config.gft);
    return models::Dataset{std::move(ili), std::move(panel), std::move(gft)};
}

std::vector<models::Method> selected_methods(const io::RunConfig& config) {
    if (!config.methods.empty()) return config.methods;
    std::vector<models::Method> m{models::Method::argo, models::Method::exo_only, models::Method::ar3};
    if (config.gft) m.push_back(models::Method::gft_ar3);
    m.push_back(models::Method::naive);
    return m;
}

data::WeekRange evaluation_range(const io::RunConfig& config, const models::Dataset& dataset) {
    const auto& fin = dataset.ili.finalized();
    data::EpiWeek first = fin.start();
    data::EpiWeek last = fin.last();
    const auto window = static_cast<std::int64_t>(config.model.window);
    for (const auto m : selected_methods(config)) {
        const auto warm = static_cast<std::int64_t>(models::warm_up_weeks(m, config.model));
        first = std::max(first, data::advance(fin.start(), warm));
        if (m == models::Method::argo || m == models::Method::exo_only) {
            first = std::max(first, data::advance(dataset.panel.start(), window));
            last = std::min(last, dataset.panel.last());
        }
        if (m == models::Method::gft_ar3 && dataset.gft) {
            first = std::max(first, data::advance(dataset.gft->start(), window));
            last = std::min(last, dataset.gft->last());
        }
    }
    if (config.eval_start) first = std::max(first, data::week_containing(*config.eval_start));
    if (config.eval_end) last = std::min(last, data::week_containing(*config.eval_end));
    if (last < first) throw DataError("the inputs leave no week to evaluate after the warm-up");
    return {first, last};
}

Evaluation run_evaluation(const io::RunConfig& config, const models::Dataset& dataset, bool with_bootstrap) {
    Evaluation ev;
    ev.range = evaluation_range(config, dataset);
    ev.periods = config.periods;
    if (ev.periods.empty()) ev.periods.push_back({"whole", ev.range.first, ev.range.last});
    for (const auto& p : ev.periods)
        if (p.start < ev.range.first || ev.range.last < p.end)
            throw ConfigError("period '" + p.name + "' (" + data::format_date(p.start.end_date) + " to " +
                              data::format_date(p.end.end_date) + ") is not inside the evaluation range " +
                              data::format_date(ev.range.first.end_date) + " to " +
                              data::format_date(ev.range.last.end_date));
    ev.targets = dataset.ili.finalized().slice(ev.range);

    const models::RetrospectiveOptions opts{config.seed, config.threads};
    std::vector<eval::MethodEstimates> estimates;
    for (const auto m : selected_methods(config)) {
        ev.series.push_back(models::run_retrospective(dataset, ev.range, config.model, config.vintage_mode, m, opts));
        estimates.push_back({models::to_string(m), ev.series.back().estimates_percent()});
    }
    ev.metrics = eval::build_metric_table(estimates, ev.targets, ev.periods,
                                          models::to_string(models::Method::naive));

    if (!with_bootstrap) return ev;
    const auto argo = std::find_if(estimates.begin(), estimates.end(),
                                   [](const auto& e) { return e.method == models::to_string(models::Method::argo); });
    if (argo == estimates.end()) return ev;
    std::uint64_t index = 0;
    for (const auto& other : estimates) {
        if (&other == &*argo) continue;
        for (const auto& p : ev.periods) {
            eval::BootstrapConfig b = config.bootstrap;
            b.seed = substream_seed(config.seed ^ kBootstrapStream, index++);
            b.threads = config.threads;
            const auto e1 = errors_in(argo->estimates, ev.targets, p);
            const auto e2 = errors_in(other.estimates, ev.targets, p);
            ev.efficiency.push_back({other.method, p.name, eval::stationary_bootstrap_ci(e1, e2, b)});
        }
    }
    return ev;
}

MeanSd mean_sd(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("mean of an empty sample");
    const double shift = values.front();
    double s = 0.0, ss = 0.0;
    for (const double v : values) {
        const double d = v - shift;
        s += d;
        ss += d * d;
    }
    const auto n = static_cast<double>(values.size());
    MeanSd out;
    out.mean = shift + s / n;
    if (values.size() > 1) out.sd = std::sqrt(std::max(0.0, (ss - s * s / n) / (n - 1.0)));
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rolling penalized autoregression nowcasts of weekly ILI activity from search data", "argo"};
    app.require_subcommand(1);

    CommonOptions eval_opts;
    auto* evaluate = app.add_subcommand("evaluate", "retrospective evaluation of every method");
    add_common(evaluate, eval_opts);

    CommonOptions mv_opts;
    std::string panel_glob;
    std::string panel_source = "trends";
    auto* multiversion = app.add_subcommand("multiversion", "repeat the evaluation over several panel versions");
    add_common(multiversion, mv_opts);
    multiversion->add_option("--panels", panel_glob, "glob matching the panel versions")->required();
    multiversion->add_option("--source", panel_source, "source of the panel files (trends, correlate, scaled)");

    std::string sim_spec, sim_out;
    std::optional<std::uint64_t> sim_seed;
    bool sim_overwrite = false;
    auto* simulate = app.add_subcommand("simulate", "write a synthetic data set");
    simulate->add_option("--config", sim_spec, "synthetic spec (JSON)")->required();
    simulate->add_option("--seed", sim_seed, "seed (overrides the spec)");
    simulate->add_option("--out", sim_out, "output directory")->required();
    simulate->add_flag("--overwrite", sim_overwrite, "replace an existing output directory");

    std::string errors1, errors2, boot_out;
    eval::BootstrapConfig boot;
    auto* bootstrap = app.add_subcommand("bootstrap-ci", "relative efficiency of two error series with a CI");
    bootstrap->add_option("--errors1", errors1, "CSV with an 'error' column (method 1)")->required();
    bootstrap->add_option("--errors2", errors2, "CSV with an 'error' column (method 2)")->required();
    bootstrap->add_option("--seed", boot.seed, "seed")->required();
    bootstrap->add_option("--block-length", boot.mean_block_length, "mean block length")->capture_default_str();
    bootstrap->add_option("--replicates", boot.replicates, "bootstrap replicates")->capture_default_str();
    bootstrap->add_option("--level", boot.level, "confidence level")->capture_default_str();
    bootstrap->add_option("--threads", boot.threads, "worker threads");
    bootstrap->add_option("--out", boot_out, "output CSV (default: stdout)");

    CommonOptions fw_opts;
    std::string fw_week;
    auto* fit_week = app.add_subcommand("fit-week", "dump the cross-validation and fit of one week");
    fit_week->add_option("--config", fw_opts.config, "run configuration (JSON)")->required();
    fit_week->add_option("--week", fw_week, "a date inside the week (YYYY-MM-DD)")->required();
    fit_week->add_option("--seed", fw_opts.seed, "global seed");
    fit_week->add_option("--vintage-mode", fw_opts.vintage_mode, "finalized or as-published");
    fit_week->add_option("--regime", fw_opts.regime, "same-l1, sep-l1, same-l2, sep-l2 or enet");
    fit_week->add_option("--out", fw_opts.out, "output JSON file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*evaluate) return cmd_evaluate(eval_opts, err);
        if (*multiversion) return cmd_multiversion(mv_opts, panel_glob, panel_source, err);
        if (*simulate) return cmd_simulate(sim_spec, sim_seed, sim_out, sim_overwrite, err);
        if (*bootstrap) return cmd_bootstrap(errors1, errors2, boot, boot_out, out);
        if (*fit_week) return cmd_fit_week(fw_opts, fw_week, out);
    } catch (const ConfigError& e) {
        err << "argo: configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConvergenceError& e) {
        err << "argo: numerical error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const DataError& e) {
        err << "argo: data error: " << e.what() << "\n";
        return kExitData;
    } catch (const DomainError& e) {
        err << "argo: data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "argo: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace argo::cli
