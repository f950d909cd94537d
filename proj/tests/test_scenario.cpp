#include "doctest.h"
#include "homlt/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace homlt;

namespace {

Json strip_timestamps(Json j) {
    j.erase("timestamp");
    return j;
}

}  // namespace

TEST_CASE("config parsing is strict") {
    CHECK_NOTHROW(ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 2}}));
    CHECK_THROWS_AS(ScenarioConfig::from_json({{"n", 2}}), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json({{"case", "noncase"}, {"n", 2}}), ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 1}}),
                    ConfigError);
    CHECK_THROWS_AS(
        ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 2}, {"extra", 1}}),
        ConfigError);
    CHECK_THROWS_AS(
        ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 2}, {"s", 1}}),
        ConfigError);
    CHECK_THROWS_AS(
        ScenarioConfig::from_json({{"case", "kahler-pseudo"}, {"n", 2}, {"s", 5}}),
        ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json(
                        {{"case", "kahler-para"}, {"n", 2}, {"xi", {1.0, 0.0}}}),
                    ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json(
                        {{"case", "kahler-para"}, {"n", 2}, {"zeta1", {0, 0, 0, 0}}}),
                    ConfigError);
    CHECK_THROWS_AS(ScenarioConfig::from_json(
                        {{"case", "quat-para"}, {"n", 2},
                         {"zeta", {0, 0, 0, 0, 0, 0, 0, 0}}}),
                    ConfigError);

    const ScenarioConfig cfg = ScenarioConfig::from_json(
        {{"case", "quat-pseudo"}, {"n", 3}, {"s", 1}, {"xi", 42},
         {"tolerances", {{"jacobi", 1e-9}}}});
    CHECK(cfg.cs == Case::QuatPseudo);
    CHECK(cfg.xi_seed == 42);
    CHECK(!cfg.xi.has_value());
    CHECK(cfg.tolerances.at("jacobi") == 1e-9);
}

TEST_CASE("overrides descend dotted paths and parse JSON leaves") {
    Json doc = {{"case", "kahler-para"}, {"n", 2}};
    apply_override(doc, "n", "3");
    CHECK(doc["n"] == 3);
    apply_override(doc, "tolerances.jacobi", "1e-8");
    CHECK(doc["tolerances"]["jacobi"] == 1e-8);
    apply_override(doc, "xi", "[1,0,0,0,0,0]");
    CHECK(doc["xi"].is_array());
    apply_override(doc, "case", "quat-para");
    CHECK(doc["case"] == "quat-para");  // unparseable leaves stay strings
    CHECK_THROWS_AS(apply_override(doc, ".bad", "1"), ConfigError);
}

TEST_CASE("verification run on the smallest para-complex scenario") {
    const ScenarioConfig cfg =
        ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 2}, {"xi", 7}});
    const ScenarioResult res = run_scenario(cfg);
    CHECK(res.pass);
    CHECK(res.failing.empty());
    const Json& rep = res.report;
    CHECK(rep.at("verdict") == "pass");
    CHECK(rep.at("version") == version());
    CHECK(rep.at("holonomy_dim") == 1);
    CHECK(rep.at("algebra_ref") == "sl(3,R)");
    CHECK(rep.at("scenario").at("case") == "kahler-para");
    CHECK(rep.at("scenario").at("xi").at("seed") == 7);
    CHECK(rep.at("geodesics").size() == 4);
    REQUIRE(rep.at("checks").is_array());
    for (const Json& c : rep.at("checks")) {
        INFO(c.at("name").get<std::string>(), " residual ",
             c.at("residual").get<double>());
        CHECK(c.at("pass").get<bool>());
    }
}

TEST_CASE("definite quaternionic layout skips the chain but still verifies") {
    Json j = {{"case", "quat-pseudo"}, {"n", 2}, {"s", 0},
              {"xi", {0, 1, 0, 0, 0, 0, 0, 0}}};
    const ScenarioResult res = run_scenario(ScenarioConfig::from_json(j));
    CHECK(res.pass);
    CHECK(res.report.at("holonomy_dim") == 3);
    CHECK(res.report.at("algebra_ref") == "sp(2,1)");
    bool chain_noted = false;
    for (const Json& s : res.report.at("skipped"))
        chain_noted = chain_noted || s.get<std::string>().find("chain") != std::string::npos;
    CHECK(chain_noted);
    // the escape-time families are still exercised
    bool saw_null_blowup = false;
    for (const Json& gj : res.report.at("geodesics"))
        if (gj.at("family") == "null") saw_null_blowup = !gj.at("blowup").is_null();
    CHECK(saw_null_blowup);
}

TEST_CASE("a nonzero zeta component fails the verdict by name") {
    Json j = {{"case", "quat-pseudo"}, {"n", 2}, {"s", 0},
              {"xi", {0, 1, 0, 0, 0, 0, 0, 0}},
              {"zeta1", {0, 0, 0, 0, 0, 1, 0, 0}}};
    const ScenarioResult res = run_scenario(ScenarioConfig::from_json(j));
    CHECK(!res.pass);
    CHECK(res.report.at("verdict") == "fail");
    bool named = false;
    for (const std::string& f : res.failing) named = named || f == "zeta_obstruction";
    CHECK(named);
}

TEST_CASE("degenerate explicit xi is a configuration error") {
    Json j = {{"case", "kahler-pseudo"}, {"n", 2}, {"s", 1}, {"xi", {1, 0, 1, 0}}};
    CHECK_THROWS_AS(run_scenario(ScenarioConfig::from_json(j)), ConfigError);
}

TEST_CASE("reports are deterministic apart from the timestamp") {
    const ScenarioConfig cfg =
        ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 2}, {"xi", 7}});
    const Json a = strip_timestamps(run_scenario(cfg).report);
    const Json b = strip_timestamps(run_scenario(cfg).report);
    CHECK(a.dump() == b.dump());
}

TEST_CASE("algebra export lists the adapted basis and sparse brackets") {
    const ScenarioConfig cfg =
        ScenarioConfig::from_json({{"case", "kahler-para"}, {"n", 2}, {"xi", 7}});
    const Json out = export_algebra(cfg);
    CHECK(out.at("basis").size() == 5);
    CHECK(out.at("basis")[0].at("label") == "xi");
    CHECK(out.at("basis")[0].at("part") == "m");
    CHECK(out.at("basis")[4].at("part") == "h");
    CHECK(out.at("brackets").size() > 0);
    for (const Json& b : out.at("brackets")) {
        CHECK(b.at("i").get<int>() < b.at("j").get<int>());
        CHECK(std::abs(b.at("value").get<double>()) > 1e-12);
    }

    const ScenarioConfig cq =
        ScenarioConfig::from_json({{"case", "quat-para"}, {"n", 2}, {"xi", 7}});
    CHECK(export_algebra(cq).at("basis").size() == 11);
}

TEST_CASE("trajectory export records points and the escape bracket") {
    const Json out = export_trajectories({{"initial", {1.0, 1.0}}});
    CHECK(out.at("direction") == 1);
    CHECK(!out.at("blowup").is_null());
    CHECK(out.at("points").size() > 10);
    const Json& last = out.at("points").back();
    CHECK(last[0].get<double>() < 1.0);

    const Json still = export_trajectories({{"initial", {1.0, 0.0}}, {"t_max", 5.0}});
    CHECK(still.at("blowup").is_null());
    CHECK_THROWS_AS(export_trajectories({{"t_max", 5.0}}), ConfigError);
    CHECK_THROWS_AS(export_trajectories({{"initial", {1.0, 1.0}}, {"direction", 2}}),
                    ConfigError);
}

TEST_CASE("suite runner writes one report per scenario plus a summary") {
    const auto dir = std::filesystem::temp_directory_path() / "homlt_suite_test";
    std::filesystem::remove_all(dir);
    const Json suite = {
        {"scenarios",
         {{{"name", "kp2"}, {"case", "kahler-para"}, {"n", 2}, {"xi", 7}}}}};
    const bool ok = full_suite(suite, dir.string());
    CHECK(ok);
    CHECK(std::filesystem::exists(dir / "kp2.json"));
    std::ifstream is(dir / "summary.json");
    REQUIRE(is.good());
    const Json summary = Json::parse(is);
    CHECK(summary.at("verdict") == "pass");
    CHECK(summary.at("results")[0].at("name") == "kp2");
    CHECK(summary.at("results")[0].at("verdict") == "pass");

    const Json bad = {{"scenarios",
                       {{{"name", "../oops"}, {"case", "kahler-para"}, {"n", 2}}}}};
    CHECK_THROWS_AS(full_suite(bad, dir.string()), ConfigError);
    std::filesystem::remove_all(dir);
}
