#include "doctest.h"

#include <set>
#include <stdexcept>

#include "asa/mult.hpp"
#include "asa/tile.hpp"

using namespace asa;

namespace {

Tile make_tile(std::string id, std::optional<GlueLabel> n, std::optional<GlueLabel> e,
               std::optional<GlueLabel> s, std::optional<GlueLabel> w,
               std::optional<GlueLabel> up = std::nullopt,
               std::optional<GlueLabel> down = std::nullopt) {
    Tile t;
    t.class_id = std::move(id);
    t.face(Face::North) = std::move(n);
    t.face(Face::East) = std::move(e);
    t.face(Face::South) = std::move(s);
    t.face(Face::West) = std::move(w);
    t.face(Face::Up) = std::move(up);
    t.face(Face::Down) = std::move(down);
    t.payload = Frame{};
    return t;
}

}  // namespace

TEST_CASE("face offsets span the lattice and oppose pairwise") {
    CHECK(offset(Face::North) == Coord{0, 1, 0});
    CHECK(offset(Face::East) == Coord{1, 0, 0});
    CHECK(offset(Face::South) == Coord{0, -1, 0});
    CHECK(offset(Face::West) == Coord{-1, 0, 0});
    CHECK(offset(Face::Up) == Coord{0, 0, 1});
    CHECK(offset(Face::Down) == Coord{0, 0, -1});
    for (Face f : all_faces) {
        CHECK(opposite(opposite(f)) == f);
        const Coord sum = offset(f) + offset(opposite(f));
        CHECK(sum == Coord{0, 0, 0});
    }
    CHECK(face_name(Face::North) == "north");
    CHECK(face_name(Face::Down) == "down");
}

TEST_CASE("full-adder payload satisfies 2*c' + s' = a*b + c + s on all 16 inputs") {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int s = 0; s < 2; ++s) {
                    const MultBody body = mult_body_payload(a, b, c, s);
                    CHECK(body.a == a);
                    CHECK(body.b == b);
                    CHECK(body.c == c);
                    CHECK(body.s == s);
                    CHECK(2 * body.c2 + body.s2 == a * b + c + s);
                    CHECK((body.c2 == 0 || body.c2 == 1));
                    CHECK((body.s2 == 0 || body.s2 == 1));
                }
}

TEST_CASE("faces_match compares names and treats absent faces as matching nothing") {
    const GlueLabel x1{"x", 1};
    const GlueLabel x2{"x", 2};
    const GlueLabel y1{"y", 1};
    CHECK(faces_match(x1, x1));
    CHECK(faces_match(x1, x2));  // same name, strength irrelevant for matching
    CHECK_FALSE(faces_match(x1, y1));
    CHECK_FALSE(faces_match(std::nullopt, x1));
    CHECK_FALSE(faces_match(x1, std::nullopt));
    CHECK_FALSE(faces_match(std::nullopt, std::nullopt));
}

TEST_CASE("attachment strength sums matched faces and signals conflicts") {
    Tile t = make_tile("t", GlueLabel{"n", 1}, GlueLabel{"e", 2}, std::nullopt, std::nullopt);

    FaceMap exposed{};
    SUBCASE("no neighbors at all") { CHECK(attachment_strength(exposed, t) == 0); }
    SUBCASE("one matching face") {
        exposed[static_cast<size_t>(Face::North)] = GlueLabel{"n", 1};
        CHECK(attachment_strength(exposed, t) == 1);
    }
    SUBCASE("two matching faces sum their strengths") {
        exposed[static_cast<size_t>(Face::North)] = GlueLabel{"n", 1};
        exposed[static_cast<size_t>(Face::East)] = GlueLabel{"e", 2};
        CHECK(attachment_strength(exposed, t) == 3);
    }
    SUBCASE("present-vs-present name clash is a conflict, not a zero") {
        exposed[static_cast<size_t>(Face::North)] = GlueLabel{"wrong", 1};
        CHECK(attachment_strength(exposed, t) == -1);
    }
    SUBCASE("conflict wins even when another face matches") {
        exposed[static_cast<size_t>(Face::North)] = GlueLabel{"n", 1};
        exposed[static_cast<size_t>(Face::East)] = GlueLabel{"wrong", 2};
        CHECK(attachment_strength(exposed, t) == -1);
    }
    SUBCASE("neighbor glue against an absent candidate face is zero, not a conflict") {
        exposed[static_cast<size_t>(Face::South)] = GlueLabel{"s", 1};
        CHECK(attachment_strength(exposed, t) == 0);
    }
}

TEST_CASE("role_of maps payloads onto the inventory roles") {
    CHECK(role_of(Start{}) == Role::Start);
    CHECK(role_of(End{}) == Role::End);
    CHECK(role_of(Frame{}) == Role::Frame);
    CHECK(role_of(InputBit{}) == Role::Input);
    CHECK(role_of(MultBody{}) == Role::Body);
    CHECK(role_of(ConvBody{}) == Role::Body);
    CHECK(role_of(ResultBit{}) == Role::Result);
    CHECK(role_of(BridgeConnectorLower{}) == Role::LowerConnector);
    CHECK(role_of(BridgeConnectorUpper{}) == Role::UpperConnector);
    CHECK(role_of(BridgeSpacer{}) == Role::Spacer);
    CHECK(role_of(BinTile{}) == Role::Bin);
    CHECK(role_name(Role::UpperConnector) == "upper_connector");
    CHECK(role_name(Role::Start) == "start");
}

TEST_CASE("TileSet::create validates ids and the declared inventory") {
    std::vector<Tile> tiles;
    tiles.push_back(make_tile("a", GlueLabel{"g", 2}, std::nullopt, std::nullopt, std::nullopt));
    tiles.push_back(make_tile("b", std::nullopt, std::nullopt, GlueLabel{"g", 2}, std::nullopt));

    SUBCASE("accepts a correct inventory") {
        const TileSet ts = TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 2}});
        CHECK(ts.total_classes() == 2);
        CHECK(ts.find("a") != nullptr);
        CHECK(ts.find("missing") == nullptr);
        CHECK(ts.inventory.at(Role::Frame) == 2);
    }
    SUBCASE("rejects duplicate class ids") {
        tiles.push_back(make_tile("a", std::nullopt, std::nullopt, std::nullopt, std::nullopt));
        CHECK_THROWS_AS(TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 3}}),
                        std::logic_error);
    }
    SUBCASE("rejects an inventory that miscounts a role") {
        CHECK_THROWS_AS(TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 3}}),
                        std::logic_error);
    }
    SUBCASE("rejects an inventory that misses a role") {
        tiles[1].payload = Start{};
        CHECK_THROWS_AS(TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 2}}),
                        std::logic_error);
    }
}

TEST_CASE("lint flags inconsistent glue strengths and axis-crossing glue names") {
    std::vector<Tile> tiles;
    tiles.push_back(make_tile("a", GlueLabel{"g", 2}, std::nullopt, std::nullopt, std::nullopt));
    tiles.push_back(make_tile("b", std::nullopt, std::nullopt, GlueLabel{"g", 2}, std::nullopt));

    SUBCASE("clean set lints clean") {
        const TileSet ts = TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 2}});
        CHECK(lint_tileset(ts).empty());
    }
    SUBCASE("same name, two strengths") {
        tiles[1].face(Face::South)->strength = 1;
        const TileSet ts = TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 2}});
        CHECK_FALSE(lint_tileset(ts).empty());
    }
    SUBCASE("same name on two axes") {
        tiles[1].face(Face::East) = GlueLabel{"g", 2};
        const TileSet ts = TileSet::create("demo", 2, "a", tiles, {{Role::Frame, 2}});
        CHECK_FALSE(lint_tileset(ts).empty());
    }
}
