#include "asa/tile.hpp"

#include <set>
#include <stdexcept>

namespace asa {

Coord offset(Face f) {
    switch (f) {
        case Face::North: return {0, 1, 0};
        case Face::East: return {1, 0, 0};
        case Face::South: return {0, -1, 0};
        case Face::West: return {-1, 0, 0};
        case Face::Up: return {0, 0, 1};
        case Face::Down: return {0, 0, -1};
    }
    return {};
}

Face opposite(Face f) {
    switch (f) {
        case Face::North: return Face::South;
        case Face::East: return Face::West;
        case Face::South: return Face::North;
        case Face::West: return Face::East;
        case Face::Up: return Face::Down;
        case Face::Down: return Face::Up;
    }
    return Face::North;
}

std::string_view face_name(Face f) {
    switch (f) {
        case Face::North: return "north";
        case Face::East: return "east";
        case Face::South: return "south";
        case Face::West: return "west";
        case Face::Up: return "up";
        case Face::Down: return "down";
    }
    return "";
}

namespace {

struct RoleVisitor {
    Role operator()(const MultBody&) const { return Role::Body; }
    Role operator()(const InputBit&) const { return Role::Input; }
    Role operator()(const ResultBit&) const { return Role::Result; }
    Role operator()(const Frame&) const { return Role::Frame; }
    Role operator()(const Start&) const { return Role::Start; }
    Role operator()(const End&) const { return Role::End; }
    Role operator()(const ConvBody&) const { return Role::Body; }
    Role operator()(const BridgeConnectorLower&) const { return Role::LowerConnector; }
    Role operator()(const BridgeConnectorUpper&) const { return Role::UpperConnector; }
    Role operator()(const BridgeSpacer&) const { return Role::Spacer; }
    Role operator()(const BinTile&) const { return Role::Bin; }
};

}  // namespace

Role role_of(const Payload& p) { return std::visit(RoleVisitor{}, p); }

std::string_view role_name(Role r) {
    switch (r) {
        case Role::Start: return "start";
        case Role::End: return "end";
        case Role::Frame: return "frame";
        case Role::Input: return "input";
        case Role::Body: return "body";
        case Role::Result: return "result";
        case Role::LowerConnector: return "lower_connector";
        case Role::UpperConnector: return "upper_connector";
        case Role::Spacer: return "spacer";
        case Role::Bin: return "bin";
    }
    return "";
}

TileSet TileSet::create(std::string name, int temperature, std::string seed_class,
                        std::vector<Tile> tiles, std::map<Role, int> expected_inventory) {
    if (temperature < 1) throw std::logic_error("tileset temperature must be positive");
    std::set<std::string> ids;
    std::map<Role, int> actual;
    for (const Tile& t : tiles) {
        if (!ids.insert(t.class_id).second)
            throw std::logic_error("duplicate tile class_id: " + t.class_id);
        for (const auto& g : t.faces)
            if (g && g->strength < 0)
                throw std::logic_error("negative glue strength on " + t.class_id);
        ++actual[role_of(t.payload)];
    }
    for (auto& [role, count] : actual) {
        auto it = expected_inventory.find(role);
        if (it == expected_inventory.end() || it->second != count)
            throw std::logic_error(name + ": inventory mismatch for role " +
                                   std::string(role_name(role)));
    }
    for (auto& [role, count] : expected_inventory) {
        if (count != 0 && !actual.contains(role))
            throw std::logic_error(name + ": inventory expects absent role " +
                                   std::string(role_name(role)));
    }
    if (!seed_class.empty() && !ids.contains(seed_class))
        throw std::logic_error(name + ": seed class not in tile set");
    TileSet ts;
    ts.name = std::move(name);
    ts.temperature = temperature;
    ts.seed_class = std::move(seed_class);
    ts.tiles = std::move(tiles);
    ts.inventory = std::move(expected_inventory);
    return ts;
}

const Tile* TileSet::find(std::string_view class_id) const {
    for (const Tile& t : tiles)
        if (t.class_id == class_id) return &t;
    return nullptr;
}

bool faces_match(const std::optional<GlueLabel>& a, const std::optional<GlueLabel>& b) {
    return a.has_value() && b.has_value() && a->name == b->name;
}

int attachment_strength(const FaceMap& exposed, const Tile& candidate) {
    int total = 0;
    for (Face f : all_faces) {
        const auto& mine = candidate.face(f);
        const auto& theirs = exposed[static_cast<size_t>(f)];
        if (!mine || !theirs) continue;
        if (mine->name != theirs->name) return -1;
        total += mine->strength;
    }
    return total;
}

MultBody mult_body_payload(int a, int b, int c, int s) {
    const int t = a * b + c + s;
    return MultBody{a, b, c, s, t / 2, t % 2};
}

std::vector<std::string> lint_tileset(const TileSet& ts) {
    std::vector<std::string> warnings;
    // axis of a face: 0 = N/S, 1 = E/W, 2 = Up/Down
    auto axis = [](Face f) {
        switch (f) {
            case Face::North: case Face::South: return 0;
            case Face::East: case Face::West: return 1;
            default: return 2;
        }
    };
    std::map<std::string, int> strength_of;
    std::map<std::string, int> axis_of;
    for (const Tile& t : ts.tiles) {
        for (Face f : all_faces) {
            const auto& g = t.face(f);
            if (!g) continue;
            auto [sit, fresh_s] = strength_of.try_emplace(g->name, g->strength);
            if (!fresh_s && sit->second != g->strength)
                warnings.push_back("glue " + g->name + " used with strengths " +
                                   std::to_string(sit->second) + " and " +
                                   std::to_string(g->strength));
            auto [ait, fresh_a] = axis_of.try_emplace(g->name, axis(f));
            if (!fresh_a && ait->second != axis(f))
                warnings.push_back("glue " + g->name + " spans more than one lattice axis");
        }
    }
    return warnings;
}

}  // namespace asa
