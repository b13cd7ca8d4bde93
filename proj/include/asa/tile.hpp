#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace asa {

enum class Face { North = 0, East, South, West, Up, Down };

inline constexpr std::array<Face, 6> all_faces = {
    Face::North, Face::East, Face::South, Face::West, Face::Up, Face::Down,
};

struct Coord {
    long long x = 0;
    long long y = 0;
    long long z = 0;
    auto operator<=>(const Coord&) const = default;
};

Coord offset(Face f);
Face opposite(Face f);
std::string_view face_name(Face f);

inline Coord operator+(Coord a, Coord b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

// Faces match by name equality; strength is the attachment weight of the bond.
struct GlueLabel {
    std::string name;
    int strength = 1;
    bool operator==(const GlueLabel&) const = default;
};

using FaceMap = std::array<std::optional<GlueLabel>, 6>;

// Payloads: the semantic record carried by a tile class.
struct MultBody {
    int a = 0, b = 0, c = 0, s = 0;  // inputs: operand bits, carry, sum
    int c2 = 0, s2 = 0;              // outputs: carry and sum of a*b + c + s
};
struct InputBit {
    int position = 0;
    int value = 0;
};
struct ResultBit {
    int value = 0;
};
struct Frame {};
struct Start {};
struct End {};
struct ConvBody {
    long long a_val = 0, b_val = 0;
    long long product = 0;  // a_val * b_val, pass-through faces carry a_val/b_val
};
struct BridgeConnectorLower {
    long long value = 0;  // value mod q picked up from the layer below
};
struct BridgeConnectorUpper {
    long long sum = 0;  // (u + v) mod q exposed to the next layer
};
struct BridgeSpacer {};
struct BinTile {
    std::vector<int> intervals;  // interval indices this tile encodes
    int family = 0;              // 0 = first-half cells, 1 = widened second-half cells
};

using Payload = std::variant<MultBody, InputBit, ResultBit, Frame, Start, End, ConvBody,
                             BridgeConnectorLower, BridgeConnectorUpper, BridgeSpacer, BinTile>;

enum class Role {
    Start = 0, End, Frame, Input, Body, Result, LowerConnector, UpperConnector, Spacer, Bin,
};

Role role_of(const Payload& p);
std::string_view role_name(Role r);

struct Tile {
    std::string class_id;
    FaceMap faces;
    Payload payload;

    const std::optional<GlueLabel>& face(Face f) const { return faces[static_cast<size_t>(f)]; }
    std::optional<GlueLabel>& face(Face f) { return faces[static_cast<size_t>(f)]; }
};

struct TileSet {
    std::string name;
    int temperature = 2;
    std::string seed_class;
    std::vector<Tile> tiles;
    std::map<Role, int> inventory;

    // Validates unique class_ids and that expected_inventory matches the
    // actual per-role class counts; throws std::logic_error otherwise.
    static TileSet create(std::string name, int temperature, std::string seed_class,
                          std::vector<Tile> tiles, std::map<Role, int> expected_inventory);

    size_t total_classes() const { return tiles.size(); }
    const Tile* find(std::string_view class_id) const;
};

bool faces_match(const std::optional<GlueLabel>& a, const std::optional<GlueLabel>& b);

// exposed[f] is the glue the neighborhood shows toward the candidate's face f
// (i.e. the neighbor tile's opposite face). Returns the sum of strengths of the
// candidate's matching faces, or -1 if any present face meets a different name.
int attachment_strength(const FaceMap& exposed, const Tile& candidate);

MultBody mult_body_payload(int a, int b, int c, int s);

// Tile-set hygiene checks: one glue name must keep one strength everywhere, and
// must stay on a single lattice axis pair so it cannot bind in two directions.
std::vector<std::string> lint_tileset(const TileSet& ts);

}  // namespace asa
