#include <doctest.h>

#include <sstream>

#include "contour/report.hpp"

using namespace contour;

namespace {

std::vector<std::string> keys(const Json& j) {
    std::vector<std::string> out;
    for (const auto& [k, v] : j.items()) out.push_back(k);
    return out;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("spectrum JSON layout") {
    const auto r = empirical_spectrum(ChainParams(3, 5, 2), Exhaustive{});
    const auto j = to_json(r);
    CHECK(keys(j) == std::vector<std::string>{"schema_version", "params", "exploration", "states_examined",
                                               "admissible_count", "spectrum", "candidates"});
    CHECK(j["schema_version"] == 1);
    CHECK(j["params"] == Json{{"contours", 3}, {"half_cells", 5}, {"cluster_len", 2}});
    CHECK(j["exploration"]["mode"] == "exhaustive");
    CHECK(j["exploration"]["seed"].is_null());
    REQUIRE(j["spectrum"].size() == 2);
    const auto& slow = j["spectrum"][1];
    CHECK(keys(slow) ==
          std::vector<std::string>{"velocity", "basin_count", "representative", "period", "regime", "delay_type"});
    CHECK(slow["velocity"] == "20/21");
    CHECK(slow["regime"] == "delayed_cycle");
    CHECK(j["spectrum"][0]["velocity"] == "1/1");
    CHECK(j["candidates"] == Json::array({"1/1", "20/21"}));
}

TEST_CASE("sampled exploration records its seed and generator") {
    const auto j = to_json(Exploration{Sampled{5000, 42}});
    CHECK(j["mode"] == "sampled");
    CHECK(j["budget_or_count"] == 5000);
    CHECK(j["seed"] == 42);
    CHECK(j["generator"] == "mt19937_64");
}

TEST_CASE("spectrum CSV") {
    const auto r = empirical_spectrum(ChainParams(3, 1, 1), Exhaustive{});
    const auto rows = lines(to_csv(r));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "N,m,l,velocity,basin_count,period,regime");
    CHECK(rows[1].rfind("3,1,1,1/1,", 0) == 0);
    CHECK(rows[2].rfind("3,1,1,2/3,", 0) == 0);
    CHECK(rows[2].find(",delayed_cycle") != std::string::npos);
}

TEST_CASE("cycle summary") {
    const ChainParams p(3, 5, 2);
    const auto a = find_cycle({1, 5, 8}, p);
    const auto j = cycle_summary(a, {1, 5, 8}, p);
    CHECK(j["velocity"] == "20/21");
    CHECK(j["period"] == 21);
    CHECK(j["transient"] == 0);
    CHECK(j["delay_type"] == "first");
    CHECK(cycle_summary_text(a, {1, 5, 8}, p).find("20/21") != std::string::npos);
}

TEST_CASE("verify renderings") {
    const auto grid = parse_grid("N=3,m=2,l=3");
    const auto points = run_suite(grid);
    const auto j = to_json(points, grid);
    CHECK(keys(j) == std::vector<std::string>{"schema_version", "grid", "budget", "points", "summary"});
    CHECK(j["grid"] == "N=3,m=2,l=3..3");
    REQUIRE(j["points"].size() == 1);
    CHECK(keys(j["points"][0]) == std::vector<std::string>{"params", "exploration", "claims"});
    CHECK(keys(j["points"][0]["claims"][0]) == std::vector<std::string>{"claim", "verdict", "witness", "detail"});
    CHECK(j["summary"]["points"] == 1);
    CHECK(j["summary"]["violated"] == 0);

    const auto rows = lines(to_csv(points));
    CHECK(rows[0] == "N,m,l,claim,verdict,witness,detail");
    CHECK(rows.size() == 1 + points[0].claims.size());
    CHECK(to_text(points).find("T1") != std::string::npos);
}

TEST_CASE("csv_field quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_field("") == "");
}
