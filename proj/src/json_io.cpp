#include "asa/json_io.hpp"

#include <map>
#include <string>

namespace asa {

namespace {

const std::array<std::string, 6> kFaceKeys = {"north", "east", "south", "west", "up", "down"};

Json payload_to_json(const Payload& payload) {
    Json j;
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, MultBody>) {
                j = {{"kind", "mult_body"}, {"a", p.a}, {"b", p.b}, {"c", p.c},
                     {"s", p.s}, {"c_out", p.c2}, {"s_out", p.s2}};
            } else if constexpr (std::is_same_v<T, InputBit>) {
                j = {{"kind", "input"}, {"position", p.position}, {"value", p.value}};
            } else if constexpr (std::is_same_v<T, ResultBit>) {
                j = {{"kind", "result"}, {"value", p.value}};
            } else if constexpr (std::is_same_v<T, Frame>) {
                j = {{"kind", "frame"}};
            } else if constexpr (std::is_same_v<T, Start>) {
                j = {{"kind", "start"}};
            } else if constexpr (std::is_same_v<T, End>) {
                j = {{"kind", "end"}};
            } else if constexpr (std::is_same_v<T, ConvBody>) {
                j = {{"kind", "conv_body"}, {"a", p.a_val}, {"b", p.b_val},
                     {"product", p.product}};
            } else if constexpr (std::is_same_v<T, BridgeConnectorLower>) {
                j = {{"kind", "bridge_lower"}, {"value", p.value}};
            } else if constexpr (std::is_same_v<T, BridgeConnectorUpper>) {
                j = {{"kind", "bridge_upper"}, {"sum", p.sum}};
            } else if constexpr (std::is_same_v<T, BridgeSpacer>) {
                j = {{"kind", "spacer"}};
            } else if constexpr (std::is_same_v<T, BinTile>) {
                j = {{"kind", "bin"}, {"intervals", p.intervals}, {"family", p.family}};
            }
        },
        payload);
    return j;
}

Payload payload_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "mult_body")
        return MultBody{j.at("a").get<int>(), j.at("b").get<int>(), j.at("c").get<int>(),
                        j.at("s").get<int>(), j.at("c_out").get<int>(), j.at("s_out").get<int>()};
    if (kind == "input") return InputBit{j.at("position").get<int>(), j.at("value").get<int>()};
    if (kind == "result") return ResultBit{j.at("value").get<int>()};
    if (kind == "frame") return Frame{};
    if (kind == "start") return Start{};
    if (kind == "end") return End{};
    if (kind == "conv_body")
        return ConvBody{j.at("a").get<long long>(), j.at("b").get<long long>(),
                        j.at("product").get<long long>()};
    if (kind == "bridge_lower") return BridgeConnectorLower{j.at("value").get<long long>()};
    if (kind == "bridge_upper") return BridgeConnectorUpper{j.at("sum").get<long long>()};
    if (kind == "spacer") return BridgeSpacer{};
    if (kind == "bin")
        return BinTile{j.at("intervals").get<std::vector<int>>(), j.at("family").get<int>()};
    throw DomainError(ErrorCode::InvalidInput, "unknown payload kind: " + kind);
}

Json coord_to_json(const Coord& c) { return Json{{"x", c.x}, {"y", c.y}, {"z", c.z}}; }

Coord coord_from_json(const Json& j) {
    return Coord{j.at("x").get<long long>(), j.at("y").get<long long>(),
                 j.at("z").get<long long>()};
}

}  // namespace

Json glue_to_json(const GlueLabel& g) {
    return Json{{"name", g.name}, {"strength", g.strength}};
}

GlueLabel glue_from_json(const Json& j) {
    return GlueLabel{j.at("name").get<std::string>(), j.at("strength").get<int>()};
}

Json tile_to_json(const Tile& t) {
    Json faces = Json::object();
    for (Face f : all_faces)
        if (const auto& g = t.face(f)) faces[kFaceKeys[static_cast<size_t>(f)]] = glue_to_json(*g);
    return Json{{"class", t.class_id}, {"faces", std::move(faces)},
                {"payload", payload_to_json(t.payload)}};
}

Tile tile_from_json(const Json& j) {
    Tile t;
    t.class_id = j.at("class").get<std::string>();
    t.payload = payload_from_json(j.at("payload"));
    const Json& faces = j.at("faces");
    for (Face f : all_faces) {
        const auto it = faces.find(kFaceKeys[static_cast<size_t>(f)]);
        if (it != faces.end()) t.face(f) = glue_from_json(*it);
    }
    return t;
}

Json tileset_to_json(const TileSet& ts) {
    Json inventory = Json::object();
    for (const auto& [role, count] : ts.inventory)
        inventory[std::string(role_name(role))] = count;
    Json tiles = Json::array();
    for (const Tile& t : ts.tiles) tiles.push_back(tile_to_json(t));
    return Json{{"name", ts.name}, {"temperature", ts.temperature},
                {"seed_class", ts.seed_class}, {"inventory", std::move(inventory)},
                {"tiles", std::move(tiles)}};
}

TileSet tileset_from_json(const Json& j) {
    std::vector<Tile> tiles;
    for (const Json& t : j.at("tiles")) tiles.push_back(tile_from_json(t));
    std::map<Role, int> inventory;
    for (const auto& [key, count] : j.at("inventory").items()) {
        bool known = false;
        for (int r = 0; r <= static_cast<int>(Role::Bin); ++r) {
            if (role_name(static_cast<Role>(r)) == key) {
                inventory[static_cast<Role>(r)] = count.get<int>();
                known = true;
                break;
            }
        }
        if (!known) throw DomainError(ErrorCode::InvalidInput, "unknown role: " + key);
    }
    return TileSet::create(j.at("name").get<std::string>(), j.at("temperature").get<int>(),
                           j.at("seed_class").get<std::string>(), std::move(tiles), inventory);
}

Json assembly_to_json(const Assembly& a) {
    Json tiles = Json::array();
    for (const auto& [at, placed] : a.placed) {
        Json t = coord_to_json(at);
        t["class"] = placed.class_id;
        t["mismatch"] = placed.mismatch;
        tiles.push_back(std::move(t));
    }
    Json arcs = Json::array();
    for (const auto& [from, to] : a.arcs)
        arcs.push_back(Json{{"from", coord_to_json(from)}, {"to", coord_to_json(to)}});
    return Json{{"tileset", a.tileset_name}, {"rng_seed", a.rng_seed},
                {"step_count", a.step_count}, {"mismatches", a.mismatch_count()},
                {"tiles", std::move(tiles)}, {"arcs", std::move(arcs)}};
}

Json placements_to_json(const std::vector<Placement>& placements) {
    Json out = Json::array();
    for (const Placement& p : placements) {
        Json j = coord_to_json(p.at);
        j["class"] = p.class_id;
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<Placement> placements_from_json(const Json& j) {
    std::vector<Placement> out;
    for (const Json& p : j)
        out.push_back({coord_from_json(p), p.at("class").get<std::string>()});
    return out;
}

Json poly_to_json(const Poly& v) { return Json(v); }

Poly poly_from_json(const Json& j) { return j.get<Poly>(); }

Json params_to_json(const NtruParams& params) {
    return Json{{"n", params.N}, {"p", params.p}, {"q", params.q}, {"d", params.d},
                {"s", params.s}, {"k", params.k}, {"bin_width", params.bin_width}};
}

NtruParams params_from_json(const Json& j) {
    NtruParams params;
    params.N = j.at("n").get<int>();
    params.p = j.at("p").get<long long>();
    params.q = j.at("q").get<long long>();
    params.d = j.at("d").get<int>();
    if (j.contains("s")) params.s = j.at("s").get<int>();
    if (j.contains("k")) params.k = j.at("k").get<int>();
    if (j.contains("bin_width")) params.bin_width = j.at("bin_width").get<long long>();
    return params;
}

Json keypair_to_json(const KeyPair& kp) {
    Json j{{"params", params_to_json(kp.params)}, {"f", poly_to_json(kp.f)}};
    j["f_q_inv"] = kp.f_q_inv ? poly_to_json(*kp.f_q_inv) : Json(nullptr);
    j["f_p_inv"] = kp.f_p_inv ? poly_to_json(*kp.f_p_inv) : Json(nullptr);
    j["g"] = poly_to_json(kp.g);
    j["h"] = poly_to_json(kp.h);
    return j;
}

KeyPair keypair_from_json(const Json& j) {
    KeyPair kp;
    kp.params = params_from_json(j.at("params"));
    kp.f = poly_from_json(j.at("f"));
    if (j.contains("f_q_inv") && !j.at("f_q_inv").is_null())
        kp.f_q_inv = poly_from_json(j.at("f_q_inv"));
    if (j.contains("f_p_inv") && !j.at("f_p_inv").is_null())
        kp.f_p_inv = poly_from_json(j.at("f_p_inv"));
    kp.g = poly_from_json(j.at("g"));
    kp.h = poly_from_json(j.at("h"));
    return kp;
}

Json capacity_to_json(const CapacityReport& report) {
    return Json{{"search_space_log2", report.search_space_log2},
                {"molecule_budget_log2", report.molecule_budget_log2},
                {"bf_capacity_log2", report.bf_capacity_log2},
                {"mitm_capacity_log2", report.mitm_capacity_log2},
                {"over_bf_capacity", report.over_bf_capacity},
                {"enumerable_at_budget_log2", report.enumerable_at_budget_log2},
                {"bf_breakable_security_log2", report.bf_breakable_security_log2},
                {"mitm_breakable_security_log2", report.mitm_breakable_security_log2},
                {"ground_tile_classes", report.ground_tile_classes},
                {"bridge_upper_classes", report.bridge_upper_classes},
                {"bridge_lower_classes", report.bridge_lower_classes},
                {"bridge_tile_classes", report.bridge_tile_classes}};
}

}  // namespace asa
