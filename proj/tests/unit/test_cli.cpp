#include "argo/cli/commands.hpp"
#include "argo/errors.hpp"
#include "argo/io/csv.hpp"
#include "argo/io/readers.hpp"
#include "argo/io/synthetic.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>

namespace fs = std::filesystem;
using argo::fixture::TempDir;
using nlohmann::json;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "argo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = argo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

json small_config() {
    const auto m = argo::fixture::small_model();
    return {{"seed", 11},
            {"data", {{"ili", "data/ili.csv"}, {"panels", {{{"path", "data/panel.csv"}, {"source", "scaled"}}}}}},
            {"model",
             {{"lags", m.lags}, {"window", m.window}, {"cv", {{"points_1d", m.cv.points_1d}, {"points_2d", m.cv.points_2d}}}}},
            {"bootstrap", {{"replicates", 200}, {"mean_block_length", 8}}}};
}

void write_json(const fs::path& path, const json& j) { argo::io::write_text(path, j.dump(2)); }

/// Synthetic data under dir/data plus dir/config.json.
void stage_small(const TempDir& dir, const json& config, std::size_t weeks = 90, std::size_t terms = 8) {
    const auto data = argo::io::generate_synthetic(argo::fixture::small_spec(5, weeks, terms));
    argo::io::write_synthetic(dir / "data", data);
    write_json(dir / "config.json", config);
}

std::size_t data_rows(const fs::path& csv) { return argo::io::read_csv(csv).rows.size(); }

}  // namespace

TEST(CliTest, MissingInputFileExitsTwoAndNamesThePath) {
    TempDir dir;
    json config = small_config();
    stage_small(dir, config);
    config["data"]["ili"] = "data/no_such_ili.csv";
    write_json(dir / "config.json", config);
    const auto r = run_cli({"evaluate", "--config", (dir / "config.json").string(), "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, argo::cli::kExitConfig);
    EXPECT_NE(r.err.find("no_such_ili.csv"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(CliTest, MissingConfigAndBadFlagsAreConfigErrors) {
    TempDir dir;
    EXPECT_EQ(run_cli({"evaluate", "--config", (dir / "absent.json").string()}).code, argo::cli::kExitConfig);
    EXPECT_EQ(run_cli({"evaluate"}).code, argo::cli::kExitConfig);
    EXPECT_EQ(run_cli({"frobnicate"}).code, argo::cli::kExitConfig);

    stage_small(dir, small_config());
    const auto r = run_cli({"evaluate", "--config", (dir / "config.json").string(), "--regime", "ridge", "--out",
                            (dir / "out").string()});
    EXPECT_EQ(r.code, argo::cli::kExitConfig);
}

TEST(CliTest, MalformedDataExitsThree) {
    TempDir dir;
    stage_small(dir, small_config());
    argo::io::write_text(dir / "data" / "ili.csv", "year,week,end_date,wili\n2009,1,2009-01-03,abc\n");
    const auto r = run_cli({"evaluate", "--config", (dir / "config.json").string(), "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, argo::cli::kExitData) << r.err;
}

TEST(CliTest, DefaultModelOn330WeeksWritesEveryMetricRow) {
    TempDir dir;
    auto spec = argo::fixture::small_spec(21, 330, 12);
    const auto data = argo::io::generate_synthetic(spec);
    argo::io::write_synthetic(dir / "data", data);
    // GFT stand-in: the finalized series plus a small wobble
    auto gft = data.ili.finalized();
    std::vector<double> v(gft.values().begin(), gft.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= 1.0 + 0.05 * std::sin(0.3 * static_cast<double>(i));
    argo::io::write_gft_csv(dir / "data" / "gft.csv", argo::data::WeeklySeries(gft.start(), v, argo::data::SeriesUnit::percent));

    json config = {{"seed", 3},
                   {"data",
                    {{"ili", "data/ili.csv"},
                     {"gft", "data/gft.csv"},
                     {"panels", {{{"path", "data/panel.csv"}, {"source", "scaled"}}}}}},
                   {"periods", {{{"name", "early"}, {"start", "2012-01-01"}, {"end", "2013-06-30"}},
                                {{"name", "late"}, {"start", "2014-01-01"}, {"end", "2015-04-18"}}}}};
    write_json(dir / "config.json", config);
    const auto r = run_cli({"evaluate", "--config", (dir / "config.json").string(), "--out", (dir / "out").string()});
    ASSERT_EQ(r.code, 0) << r.err;

    const auto metrics = argo::io::read_csv(dir / "out" / "metrics.csv");
    EXPECT_EQ(metrics.rows.size(), 5u * 5u * 2u);
    const auto est = argo::io::read_csv(dir / "out" / "estimates.csv");
    EXPECT_EQ(est.header.size(), 4u + 5u);
    // first evaluated week needs 52 lags and a 104-week window: 330 - 156
    EXPECT_EQ(est.rows.size(), 330u - 156u);
    EXPECT_EQ(data_rows(dir / "out" / "efficiency.csv"), 4u * 2u);
    EXPECT_EQ(data_rows(dir / "out" / "coefficients.csv"), est.rows.size());

    const json meta = json::parse(argo::io::read_text(dir / "out" / "run_meta.json"));
    EXPECT_EQ(meta.at("config").at("seed").get<int>(), 3);
    EXPECT_EQ(meta.at("config").at("model").at("lags").get<int>(), 52);
    EXPECT_EQ(meta.at("config").at("model").at("window").get<int>(), 104);
}

TEST(CliTest, PeriodOutsideTheDataIsAConfigError) {
    TempDir dir;
    json config = small_config();
    config["periods"] = {{{"name", "beyond"}, {"start", "2010-01-01"}, {"end", "2012-12-31"}}};
    stage_small(dir, config);
    const auto r = run_cli({"evaluate", "--config", (dir / "config.json").string(), "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, argo::cli::kExitConfig);
    EXPECT_NE(r.err.find("'beyond'"), std::string::npos) << r.err;
}

TEST(CliTest, EvaluateTwiceIsByteIdenticalAcrossThreadCounts) {
    TempDir dir;
    stage_small(dir, small_config());
    const std::string cfg = (dir / "config.json").string();
    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", (dir / "b").string(), "--threads", "3"}).code, 0);
    std::string why;
    EXPECT_TRUE(argo::fixture::directories_identical(dir / "a", dir / "b", &why)) << why;

    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", (dir / "c").string(), "--seed", "12"}).code, 0);
    EXPECT_FALSE(argo::fixture::directories_identical(dir / "a", dir / "c"));
}

TEST(CliTest, ExistingOutputNeedsOverwrite) {
    TempDir dir;
    stage_small(dir, small_config(), 80, 4);
    const std::string cfg = (dir / "config.json").string();
    const std::string out = (dir / "out").string();
    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", out}).code, 0);
    const auto again = run_cli({"evaluate", "--config", cfg, "--out", out});
    EXPECT_EQ(again.code, argo::cli::kExitConfig);
    EXPECT_NE(again.err.find("--overwrite"), std::string::npos);
    argo::io::write_text(dir / "out" / "stale.txt", "x");
    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", out, "--overwrite"}).code, 0);
    EXPECT_FALSE(fs::exists(dir / "out" / "stale.txt"));
    EXPECT_FALSE(fs::exists(dir / ".out.partial"));
}

TEST(CliTest, AsPublishedEqualsFinalizedWithoutRevisions) {
    TempDir dir;
    json config = small_config();
    config["data"]["revisions"] = "data/revisions.csv";
    stage_small(dir, config);
    const std::string cfg = (dir / "config.json").string();
    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", (dir / "f").string()}).code, 0);
    ASSERT_EQ(run_cli({"evaluate", "--config", cfg, "--out", (dir / "p").string(), "--vintage-mode", "as-published"})
                  .code,
              0);
    EXPECT_EQ(argo::io::read_text(dir / "f" / "estimates.csv"), argo::io::read_text(dir / "p" / "estimates.csv"));
    EXPECT_EQ(argo::io::read_text(dir / "f" / "metrics.csv"), argo::io::read_text(dir / "p" / "metrics.csv"));
}

TEST(CliTest, SimulateWritesFilesThatRoundTrip) {
    TempDir dir;
    json spec = {{"weeks", 120},      {"mu_y", -0.5}, {"alpha", {0.5, 0.2}}, {"sigma2", 0.05},
                 {"terms", 6},        {"mu_x", 2.5},  {"beta", {{"1", 0.6}, {"4", -0.3}}},
                 {"q", 0.05},         {"seed", 9},    {"first_week_end", "2010-01-02"}};
    write_json(dir / "spec.json", spec);
    const std::string sp = (dir / "spec.json").string();
    ASSERT_EQ(run_cli({"simulate", "--config", sp, "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run_cli({"simulate", "--config", sp, "--out", (dir / "b").string()}).code, 0);
    std::string why;
    EXPECT_TRUE(argo::fixture::directories_identical(dir / "a", dir / "b", &why)) << why;

    const auto expected = argo::io::generate_synthetic(argo::io::read_synthetic_spec(dir / "spec.json"));
    const auto ili = argo::io::read_ili_csv(dir / "a" / "ili.csv");
    EXPECT_EQ(ili, expected.ili.finalized());
    const auto panel = argo::io::read_panel_csv(dir / "a" / "panel.csv", argo::data::SearchSource::scaled);
    EXPECT_EQ(panel.rows(), expected.panel.rows());
    EXPECT_EQ(panel.terms(), expected.panel.terms());
    const auto vintage = argo::io::read_vintage_csv(dir / "a" / "revisions.csv", dir / "a" / "ili.csv");
    EXPECT_EQ(vintage.finalized(), ili);
    const json truth = json::parse(argo::io::read_text(dir / "a" / "truth.json"));
    EXPECT_EQ(truth.at("seed").get<int>(), 9);

    ASSERT_EQ(run_cli({"simulate", "--config", sp, "--out", (dir / "c").string(), "--seed", "10"}).code, 0);
    EXPECT_NE(argo::io::read_text(dir / "a" / "ili.csv"), argo::io::read_text(dir / "c" / "ili.csv"));
}

TEST(CliTest, SimulateRejectsNonStationarySpec) {
    TempDir dir;
    write_json(dir / "spec.json", {{"weeks", 50}, {"alpha", {1.1}}, {"sigma2", 0.1}, {"terms", 1}, {"mu_x", 1.0},
                                   {"beta", {0.0}}, {"q", 1.0}, {"seed", 1}});
    const auto r = run_cli({"simulate", "--config", (dir / "spec.json").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, argo::cli::kExitConfig) << r.err;
    EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(CliTest, BootstrapCiFromErrorFiles) {
    TempDir dir;
    argo::Rng rng(4);
    std::string a = "error\n", b = "week,error\n";
    for (int i = 0; i < 120; ++i) {
        a += argo::io::format_exact(0.5 * rng.normal()) + "\n";
        b += std::to_string(i) + "," + argo::io::format_exact(rng.normal()) + "\n";
    }
    argo::io::write_text(dir / "a.csv", a);
    argo::io::write_text(dir / "b.csv", b);
    const std::vector<std::string> args{"bootstrap-ci", "--errors1", (dir / "a.csv").string(), "--errors2",
                                        (dir / "b.csv").string(), "--seed", "77", "--replicates", "500",
                                        "--block-length", "10"};
    const auto r1 = run_cli(args);
    ASSERT_EQ(r1.code, 0) << r1.err;
    EXPECT_EQ(run_cli(args).out, r1.out);

    const auto table = argo::io::parse_csv(r1.out, "stdout");
    ASSERT_EQ(table.rows.size(), 1u);
    const double point = argo::io::parse_double(table.rows[0][table.column("point")], "point");
    const double lo = argo::io::parse_double(table.rows[0][table.column("ci_low")], "lo");
    const double hi = argo::io::parse_double(table.rows[0][table.column("ci_high")], "hi");
    EXPECT_GT(point, 1.0);  // method 1 has a quarter of the variance
    EXPECT_LE(lo, point);
    EXPECT_GE(hi, point);
    EXPECT_EQ(table.rows[0][table.column("replicates")], "500");

    auto file_args = args;
    file_args.insert(file_args.end(), {"--out", (dir / "ci.csv").string()});
    ASSERT_EQ(run_cli(file_args).code, 0);
    EXPECT_EQ(argo::io::read_text(dir / "ci.csv"), r1.out);

    EXPECT_EQ(run_cli({"bootstrap-ci", "--errors1", (dir / "a.csv").string(), "--errors2",
                       (dir / "none.csv").string(), "--seed", "1"})
                  .code,
              argo::cli::kExitConfig);
}

TEST(CliTest, FitWeekDumpsTheCrossValidationTable) {
    TempDir dir;
    stage_small(dir, small_config());
    const auto r = run_cli({"fit-week", "--config", (dir / "config.json").string(), "--week", "2010-06-10"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("week").at("end_date").get<std::string>(), "2010-06-12");
    const auto m = argo::fixture::small_model();
    EXPECT_EQ(j.at("coefficients").size(), m.lags + 8);
    EXPECT_EQ(j.at("coefficients")[0].at("name").get<std::string>(), "lag_1");
    EXPECT_EQ(j.at("cv").size(), m.cv.points_1d);
    const double nowcast = j.at("nowcast_percent").get<double>();
    EXPECT_GT(nowcast, 0.0);
    EXPECT_LT(nowcast, 100.0);
    EXPECT_EQ(run_cli({"fit-week", "--config", (dir / "config.json").string(), "--week", "2010-06-10"}).out, r.out);
}

TEST(CliTest, MultiversionIdenticalPanelsGiveZeroSd) {
    TempDir dir;
    stage_small(dir, small_config());
    fs::create_directories(dir / "versions");
    fs::copy_file(dir / "data" / "panel.csv", dir / "versions" / "v1.csv");
    fs::copy_file(dir / "data" / "panel.csv", dir / "versions" / "v2.csv");
    fs::copy_file(dir / "data" / "panel.csv", dir / "versions" / "v3.csv");
    const auto r = run_cli({"multiversion", "--config", (dir / "config.json").string(), "--panels",
                            (dir / "versions" / "*.csv").string(), "--source", "scaled", "--out",
                            (dir / "mv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = argo::io::read_csv(dir / "mv" / "multiversion.csv");
    ASSERT_EQ(t.rows.size(), 5u * 4u);
    for (const auto& row : t.rows) {
        EXPECT_EQ(row[t.column("sd")], "0") << row[0] << " " << row[2];
        EXPECT_EQ(row[t.column("versions")], "3");
    }
}

TEST(CliTest, MultiversionArRowsAndUnusedTermHaveZeroSd) {
    TempDir dir;
    stage_small(dir, small_config());
    const auto panel = argo::io::read_panel_csv(dir / "data" / "panel.csv", argo::data::SearchSource::scaled);
    fs::create_directories(dir / "versions");
    // the last term is constant, so no window can select it, and it differs between versions
    auto with_last = [&](double value) {
        Eigen::MatrixXd rows = panel.rows();
        rows.col(rows.cols() - 1).setConstant(value);
        return argo::data::SearchPanel(panel.start(), panel.terms(), rows, argo::data::SearchSource::scaled);
    };
    argo::io::write_panel_csv(dir / "versions" / "v1.csv", with_last(5.0));
    argo::io::write_panel_csv(dir / "versions" / "v2.csv", with_last(7.0));
    // a third version perturbs an informative term, moving ARGO but not AR(3)
    Eigen::MatrixXd noisy = with_last(5.0).rows();
    noisy.col(0).array() *= 1.3;
    fs::create_directories(dir / "noisy");
    argo::io::write_panel_csv(dir / "noisy" / "v3.csv",
                              argo::data::SearchPanel(panel.start(), panel.terms(), noisy,
                                                      argo::data::SearchSource::scaled));

    const std::string cfg = (dir / "config.json").string();
    ASSERT_EQ(run_cli({"multiversion", "--config", cfg, "--panels", (dir / "versions" / "*.csv").string(), "--source",
                       "scaled", "--out", (dir / "mv").string()})
                  .code,
              0);
    const auto t = argo::io::read_csv(dir / "mv" / "multiversion.csv");
    for (const auto& row : t.rows) {
        if (row[0] == "argo" || row[0] == "ar3") {
            EXPECT_EQ(row[t.column("sd")], "0") << row[0] << " " << row[2];
        }
    }

    // coefficient inspection: the constant term is zero in every week of both versions
    for (const char* v : {"v1.csv", "v2.csv"}) {
        json config = small_config();
        config["data"]["panels"] = {{{"path", std::string("versions/") + v}, {"source", "scaled"}}};
        config["methods"] = {"argo"};
        write_json(dir / "single.json", config);
        const fs::path out = dir / (std::string("single_") + v);
        ASSERT_EQ(run_cli({"evaluate", "--config", (dir / "single.json").string(), "--out", out.string()}).code, 0);
        const auto coef = argo::io::read_csv(out / "coefficients.csv");
        const std::size_t col = coef.column(panel.terms().back());
        for (const auto& row : coef.rows) EXPECT_EQ(argo::io::parse_double(row[col], "coef"), 0.0);
    }

    fs::copy_file(dir / "versions" / "v1.csv", dir / "noisy" / "v1.csv");
    ASSERT_EQ(run_cli({"multiversion", "--config", cfg, "--panels", (dir / "noisy" / "*.csv").string(), "--source",
                       "scaled", "--out", (dir / "mv2").string()})
                  .code,
              0);
    const auto t2 = argo::io::read_csv(dir / "mv2" / "multiversion.csv");
    bool argo_moved = false;
    for (const auto& row : t2.rows) {
        if (row[0] == "ar3" || row[0] == "naive") {
            EXPECT_EQ(row[t2.column("sd")], "0") << row[0] << " " << row[2];
        }
        if (row[0] == "argo" && row[t2.column("sd")] != "0") argo_moved = true;
    }
    EXPECT_TRUE(argo_moved);
}

TEST(CliTest, MultiversionRejectsMismatchedPanels) {
    TempDir dir;
    stage_small(dir, small_config());
    const auto panel = argo::io::read_panel_csv(dir / "data" / "panel.csv", argo::data::SearchSource::scaled);
    fs::create_directories(dir / "versions");
    argo::io::write_panel_csv(dir / "versions" / "v1.csv", panel);
    argo::io::write_panel_csv(dir / "versions" / "v2.csv",
                              panel.slice({panel.start(), argo::data::advance(panel.last(), -1)}));
    const auto r = run_cli({"multiversion", "--config", (dir / "config.json").string(), "--panels",
                            (dir / "versions" / "*.csv").string(), "--source", "scaled", "--out",
                            (dir / "mv").string()});
    EXPECT_EQ(r.code, argo::cli::kExitData);
    EXPECT_NE(r.err.find("mismatched"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "mv"));

    const auto one = run_cli({"multiversion", "--config", (dir / "config.json").string(), "--panels",
                              (dir / "versions" / "v1.csv").string(), "--source", "scaled", "--out",
                              (dir / "mv").string()});
    EXPECT_EQ(one.code, argo::cli::kExitConfig);
}

TEST(CliTest, MeanSdOfIdenticalValuesIsExactlyZero) {
    const auto m = argo::cli::mean_sd({0.1 + 0.2, 0.1 + 0.2, 0.1 + 0.2});
    EXPECT_EQ(m.sd, 0.0);
    EXPECT_EQ(m.mean, 0.1 + 0.2);
    const auto s = argo::cli::mean_sd({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.sd, std::sqrt(5.0 / 3.0));
}
