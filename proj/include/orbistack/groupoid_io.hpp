#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbistack/action.hpp"
#include "orbistack/morphism.hpp"

namespace orbistack {

using Json = nlohmann::ordered_json;

/// Action loaded from the interchange format, keeping the external
/// object ids (arbitrary distinct integers; internal indices follow
/// their order of appearance).
struct NamedAction {
    FiniteAction action;
    std::vector<long> object_ids;

    int index_of(long id) const {
        for (std::size_t i = 0; i < object_ids.size(); ++i)
            if (object_ids[i] == id) return static_cast<int>(i);
        throw DomainError("unknown object id " + std::to_string(id));
    }
};

/// Groupoid interchange format:
/// {
///   "objects":   [ids...],                     distinct integers
///   "group":     {"order": k, "table": [[..]]} multiplication table
///   "action":    [[id per object] per group element]
///   "adjacency": [[id, id], ...]               optional; omitted = complete
/// }
inline NamedAction load_action(const Json& j) {
    if (!j.is_object()) throw DomainError("groupoid file must be a JSON object");
    if (!j.contains("objects") || !j.contains("group") || !j.contains("action"))
        throw DomainError("groupoid file needs objects, group and action");

    std::vector<long> ids = j.at("objects").get<std::vector<long>>();
    std::map<long, int> index;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (!index.emplace(ids[i], static_cast<int>(i)).second)
            throw DomainError("duplicate object id " + std::to_string(ids[i]));

    const Json& jg = j.at("group");
    int order = jg.at("order").get<int>();
    auto table = jg.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != order)
        throw DomainError("group table size does not match the declared order");
    FiniteGroup group(table);  // validates the axioms

    auto act_ids = j.at("action").get<std::vector<std::vector<long>>>();
    if (static_cast<int>(act_ids.size()) != order)
        throw DomainError("action needs one row per group element");
    std::vector<std::vector<int>> act(order, std::vector<int>(ids.size()));
    for (int g = 0; g < order; ++g) {
        if (act_ids[g].size() != ids.size()) throw DomainError("action row length mismatch");
        for (std::size_t x = 0; x < ids.size(); ++x) {
            auto it = index.find(act_ids[g][x]);
            if (it == index.end())
                throw DomainError("action refers to unknown object id " +
                                  std::to_string(act_ids[g][x]));
            act[g][x] = it->second;
        }
    }
    FiniteAction action(std::move(group), static_cast<int>(ids.size()), std::move(act));

    if (j.contains("adjacency")) {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("adjacency")) {
            if (!e.is_array() || e.size() != 2) throw DomainError("adjacency entries are pairs");
            long a = e[0].get<long>(), b = e[1].get<long>();
            auto ia = index.find(a), ib = index.find(b);
            if (ia == index.end() || ib == index.end())
                throw DomainError("adjacency refers to unknown object id");
            edges.emplace_back(ia->second, ib->second);
        }
        action.set_adjacency(edges);
    }
    return {std::move(action), std::move(ids)};
}

/// Morphism interchange format:
/// {"lambda": [h per g], "phi": [codomain id per domain object]}
inline ActionMorphism load_action_morphism(const Json& j, const NamedAction& dom,
                                           const NamedAction& cod) {
    if (!j.contains("lambda") || !j.contains("phi"))
        throw DomainError("morphism file needs lambda and phi");
    ActionMorphism m;
    m.lambda = j.at("lambda").get<std::vector<int>>();
    for (long id : j.at("phi").get<std::vector<long>>()) m.phi.push_back(cod.index_of(id));
    validate_action_morphism(dom.action, cod.action, m);
    return m;
}

inline Json action_to_json(const NamedAction& named) {
    const FiniteAction& a = named.action;
    Json j;
    j["objects"] = named.object_ids;
    Json table = Json::array();
    for (int g = 0; g < a.group().order(); ++g) {
        Json row = Json::array();
        for (int h = 0; h < a.group().order(); ++h) row.push_back(a.group().mul(g, h));
        table.push_back(std::move(row));
    }
    j["group"] = Json{{"order", a.group().order()}, {"table", std::move(table)}};
    Json act = Json::array();
    for (int g = 0; g < a.group().order(); ++g) {
        Json row = Json::array();
        for (int x = 0; x < a.objects(); ++x) row.push_back(named.object_ids[a.apply(g, x)]);
        act.push_back(std::move(row));
    }
    j["action"] = std::move(act);
    if (a.has_explicit_adjacency()) {
        Json edges = Json::array();
        for (int x = 0; x < a.objects(); ++x)
            for (int y = x + 1; y < a.objects(); ++y)
                if (a.adjacent(x, y))
                    edges.push_back(Json::array({named.object_ids[x], named.object_ids[y]}));
        j["adjacency"] = std::move(edges);
    }
    return j;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("invalid JSON in ") + path + ": " + e.what(), 0);
    }
    return j;
}

}  // namespace orbistack
