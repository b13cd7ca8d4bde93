#pragma once

#include "json.hpp"

#include "asa/conv.hpp"
#include "asa/engine.hpp"
#include "asa/ntru.hpp"
#include "asa/tile.hpp"

namespace asa {

using Json = nlohmann::ordered_json;

Json glue_to_json(const GlueLabel& g);
GlueLabel glue_from_json(const Json& j);

Json tile_to_json(const Tile& t);
Tile tile_from_json(const Json& j);

Json tileset_to_json(const TileSet& ts);
TileSet tileset_from_json(const Json& j);

Json assembly_to_json(const Assembly& a);

Json placements_to_json(const std::vector<Placement>& placements);
std::vector<Placement> placements_from_json(const Json& j);

Json poly_to_json(const Poly& v);
Poly poly_from_json(const Json& j);

Json params_to_json(const NtruParams& params);
NtruParams params_from_json(const Json& j);

Json keypair_to_json(const KeyPair& kp);
KeyPair keypair_from_json(const Json& j);

Json capacity_to_json(const CapacityReport& report);

}  // namespace asa
