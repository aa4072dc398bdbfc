#include <catch2/catch.hpp>

#include "orbistack/groupoid_io.hpp"

using namespace orbistack;

namespace {

Json z2_swap_json() {
    return Json::parse(R"({
        "objects": [10, 20],
        "group": {"order": 2, "table": [[0, 1], [1, 0]]},
        "action": [[10, 20], [20, 10]]
    })");
}

}  // namespace

TEST_CASE("loading an action with external ids") {
    auto named = load_action(z2_swap_json());
    CHECK(named.object_ids == std::vector<long>{10, 20});
    CHECK(named.action.objects() == 2);
    CHECK(named.action.group().order() == 2);
    CHECK(named.action.apply(1, 0) == 1);
    CHECK(named.index_of(20) == 1);
    CHECK_THROWS_AS(named.index_of(30), DomainError);
}

TEST_CASE("adjacency is optional and id-based") {
    auto j = z2_swap_json();
    j["adjacency"] = Json::array({Json::array({10, 20})});
    auto named = load_action(j);
    CHECK(named.action.has_explicit_adjacency());
    CHECK(named.action.adjacent(0, 1));

    j["adjacency"] = Json::array();
    auto disconnected = load_action(j);
    CHECK(disconnected.action.adjacency_components().size() == 2);
}

TEST_CASE("malformed files are rejected with a clear error") {
    auto j = z2_swap_json();
    j.erase("group");
    CHECK_THROWS_AS(load_action(j), DomainError);

    auto dup = z2_swap_json();
    dup["objects"] = Json::array({10, 10});
    CHECK_THROWS_AS(load_action(dup), DomainError);

    auto bad_table = z2_swap_json();
    bad_table["group"]["table"] = Json::array({Json::array({0, 1}), Json::array({1, 1})});
    CHECK_THROWS_AS(load_action(bad_table), InvalidStructureError);

    auto bad_action = z2_swap_json();
    bad_action["action"][0][0] = 99;
    CHECK_THROWS_AS(load_action(bad_action), DomainError);
}

TEST_CASE("morphism loading validates against both sides") {
    auto dom = load_action(z2_swap_json());
    auto cod = load_action(Json::parse(R"({
        "objects": [0],
        "group": {"order": 1, "table": [[0]]},
        "action": [[0]]
    })"));
    auto m = load_action_morphism(Json::parse(R"({"lambda": [0, 0], "phi": [0, 0]})"), dom, cod);
    CHECK(is_morita(dom.action, cod.action, m).morita);

    CHECK_THROWS_AS(
        load_action_morphism(Json::parse(R"({"lambda": [0, 1], "phi": [0, 0]})"), dom, cod),
        MalformedMorphismError);
}

TEST_CASE("round trip through action_to_json") {
    auto named = load_action(z2_swap_json());
    auto again = load_action(action_to_json(named));
    CHECK(again.object_ids == named.object_ids);
    CHECK(again.action.objects() == named.action.objects());
    for (int g = 0; g < 2; ++g)
        for (int x = 0; x < 2; ++x) CHECK(again.action.apply(g, x) == named.action.apply(g, x));
}

TEST_CASE("the worked files under docs/examples load and factor") {
    std::string dir = std::string(ORBISTACK_SOURCE_DIR) + "/docs/examples/";
    auto dom = load_action(load_json_file(dir + "z4-rotation.json"));
    auto cod = load_action(load_json_file(dir + "z2-rotation.json"));
    auto m = load_action_morphism(load_json_file(dir + "mod2-reduction.json"), dom, cod);
    CHECK(is_morita(dom.action, cod.action, m).morita);
    auto f = factor_morita(dom.action, cod.action, m);
    REQUIRE(f.ok());
    CHECK(f.success->kernel.group.order() == 2);
}
