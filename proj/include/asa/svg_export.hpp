#pragma once

#include <string>

#include "asa/engine.hpp"
#include "asa/tile.hpp"

namespace asa {

// Renders one z-slice of an assembly: a square per tile, filled by role,
// digit payloads labeled, mismatched tiles stroked red, and any recorded arcs
// that start on this slice drawn as dashed lines.
std::string assembly_to_svg(const Assembly& assembly, const TileSet& ts, long long z_slice = 0);

}  // namespace asa
