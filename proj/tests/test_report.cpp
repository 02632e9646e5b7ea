#include <regex>

#include <doctest.h>

#include "fixtures.hpp"
#include "tmesh/report.hpp"

using namespace tmesh;

namespace {
std::size_t count_of(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}
}  // namespace

TEST_CASE("analysis report")
{
    auto j = analyze_report(fixture_mesh("mesh_k.json"), 3);
    CHECK(j["rank"] == 16);
    CHECK(j["dimension"]["general"] == 56);
    CHECK(j["dimension"]["cndc"] == 56);
    CHECK(j["dimension"]["diagonal"].is_null());
    CHECK(j["diagonalizable"] == false);
    CHECK(j["stats"]["n_v"] == 28);
    REQUIRE(j["blocks"].size() == 1);
    CHECK(j["blocks"][0]["key_cycle"] == json::array({0, 2, 1, 3}));
    CHECK(j["blocks"][0]["key_cycle_det"] == "5/9");
    CHECK_FALSE(j["blocks"][0].contains("matrix"));

    auto dumped = analyze_report(fixture_mesh("mesh_k.json"), 3, true);
    CHECK(dumped["blocks"][0]["matrix"]["rows"].size() == 16);

    auto e = analyze_report(fixture_mesh("three_edges.json"), 2);
    CHECK(e["diagonalizable"] == true);
    CHECK(e["dimension"]["general"] == e["dimension"]["diagonal"]);
    CHECK(e["warnings"].size() == 1);

    auto grid = analyze_report(grid_mesh(2, 2), 2);
    CHECK(grid["dimension"]["general"] == 25);
    CHECK(grid["blocks"].empty());

    // byte-stable output
    CHECK(analyze_report(fixture_mesh("mesh_g.json"), 2).dump() == analyze_report(fixture_mesh("mesh_g.json"), 2).dump());
}

TEST_CASE("vanishable CNDC edges do not break the report")
{
    // a lone t-edge with three vertices is its own CNDC for d = 3
    TMesh m;
    m.domain = {0, 0, 6, 6};
    m.vsegments = {{1, 0, 6}, {3, 0, 6}, {5, 0, 6}};
    m.hsegments = {{3, 1, 5}};
    m = normalize(m);
    REQUIRE(validate(m).ok());
    auto j = analyze_report(m, 3);
    CHECK(j["s"] == 1);
    CHECK(j["blocks"][0]["key_cycle"].is_null());
    CHECK(j["dimension"]["general"] == j["dimension"]["cndc"]);

    auto w = witness_search(to_generalized(t_component(m)), 3, {});
    CHECK(w.cycle.empty());
    CHECK(w.status == WitnessStatus::Inconclusive);
}

TEST_CASE("partition and witness reports")
{
    auto p = partition_report(fixture_gt("three_edges_gt.json"), 2);
    CHECK(p["s"] == 0);
    CHECK(p["order"] == json::array({0, 1, 2}));
    CHECK(p["rank_identity"]["holds"] == true);

    auto k = to_generalized(t_component(fixture_mesh("mesh_k.json")));
    auto w = witness_report(witness_search(k, 3, {}));
    CHECK(w["status"] == "witness-found");
    CHECK(w["method"] == "closed-form");
    CHECK(w["witness"] == 2);
    CHECK(w["original"] == 7);
    CHECK(w["rank_before"] == 16);
    CHECK(w["rank_after"] == 15);
    CHECK(w["witnessed"]["edges"].size() == 4);

    CHECK(histogram_json({{15, 3}, {16, 497}}).dump() == R"({"15":3,"16":497})");
}

TEST_CASE("validation report")
{
    TMesh bad;
    bad.domain = {0, 0, 4, 4};
    bad.hsegments = {{2, 0, 3}};
    bad.vsegments = {{2, 0, 4}};
    auto j = validation_report(validate(bad));
    CHECK(j["valid"] == false);
    CHECK(j["issues"][0]["kind"] == "dangling-endpoint");
    CHECK(validation_report(validate(grid_mesh(1, 1)))["valid"] == true);
}

TEST_CASE("svg rendering")
{
    auto grid = render_svg(grid_mesh(2, 2));
    CHECK(count_of(grid, "class=\"t-edge\"") == 0);
    CHECK(count_of(grid, "stroke-dasharray") == 0);
    CHECK(count_of(grid, "class=\"multi\"") == 0);

    auto k = render_svg(fixture_mesh("mesh_k.json"));
    CHECK(count_of(k, "class=\"t-edge\"") == 4);
    CHECK(count_of(k, "stroke-dasharray") == 7);
    CHECK(count_of(k, "class=\"multi\"") == 4);
    CHECK(count_of(k, "class=\"mono\"") == 12);
    CHECK(k == render_svg(fixture_mesh("mesh_k.json")));

    auto g = render_svg(fixture_mesh("mesh_g.json"));
    CHECK(count_of(g, "class=\"t-edge\"") == 6);
    CHECK(count_of(g, "stroke-dasharray") == 4);
    CHECK(count_of(g, "class=\"multi\"") == 8);
    CHECK(count_of(g, "class=\"mono\"") == 10);
}
