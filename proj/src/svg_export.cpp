#include "asa/svg_export.hpp"

#include <algorithm>
#include <sstream>

namespace asa {

namespace {

constexpr long long kCell = 24;

std::string fill_for(Role role) {
    switch (role) {
        case Role::Start: return "#ffd166";
        case Role::End: return "#ef476f";
        case Role::Frame: return "#cdd5df";
        case Role::Input: return "#73c2fb";
        case Role::Body: return "#e8ecf1";
        case Role::Result: return "#06d6a0";
        case Role::LowerConnector: return "#b197fc";
        case Role::UpperConnector: return "#845ef7";
        case Role::Spacer: return "#f1f3f5";
        case Role::Bin: return "#f4a261";
    }
    return "#ffffff";
}

std::string label_for(const Tile& tile) {
    if (const auto* r = std::get_if<ResultBit>(&tile.payload)) return std::to_string(r->value);
    if (const auto* i = std::get_if<InputBit>(&tile.payload)) return std::to_string(i->value);
    if (const auto* b = std::get_if<ConvBody>(&tile.payload)) return std::to_string(b->product);
    if (const auto* u = std::get_if<BridgeConnectorUpper>(&tile.payload))
        return std::to_string(u->sum);
    if (const auto* l = std::get_if<BridgeConnectorLower>(&tile.payload))
        return std::to_string(l->value);
    return "";
}

}  // namespace

std::string assembly_to_svg(const Assembly& assembly, const TileSet& ts, long long z_slice) {
    long long min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool any = false;
    for (const auto& [at, placed] : assembly.placed) {
        if (at.z != z_slice) continue;
        if (!any) {
            min_x = max_x = at.x;
            min_y = max_y = at.y;
            any = true;
        }
        min_x = std::min(min_x, at.x);
        max_x = std::max(max_x, at.x);
        min_y = std::min(min_y, at.y);
        max_y = std::max(max_y, at.y);
    }
    const long long width = (any ? max_x - min_x + 1 : 1) * kCell + 2 * kCell;
    const long long height = (any ? max_y - min_y + 1 : 1) * kCell + 2 * kCell;
    // Lattice y grows upward; SVG y grows downward.
    const auto px = [&](long long x) { return (x - min_x) * kCell + kCell; };
    const auto py = [&](long long y) { return (max_y - y) * kCell + kCell; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    for (const auto& [at, placed] : assembly.placed) {
        if (at.z != z_slice) continue;
        const Tile* tile = ts.find(placed.class_id);
        const Role role = tile ? role_of(tile->payload) : Role::Body;
        svg << "  <rect x=\"" << px(at.x) << "\" y=\"" << py(at.y) << "\" width=\"" << kCell
            << "\" height=\"" << kCell << "\" fill=\"" << fill_for(role) << "\" stroke=\""
            << (placed.mismatch ? "#d00000" : "#5c677d") << "\" stroke-width=\""
            << (placed.mismatch ? 3 : 1) << "\"/>\n";
        const std::string label = tile ? label_for(*tile) : "";
        if (!label.empty())
            svg << "  <text x=\"" << px(at.x) + kCell / 2 << "\" y=\"" << py(at.y) + kCell / 2 + 4
                << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << label
                << "</text>\n";
    }
    for (const auto& [from, to] : assembly.arcs) {
        if (from.z != z_slice && to.z != z_slice) continue;
        svg << "  <line x1=\"" << px(from.x) + kCell / 2 << "\" y1=\"" << py(from.y) + kCell / 2
            << "\" x2=\"" << px(to.x) + kCell / 2 << "\" y2=\"" << py(to.y) + kCell / 2
            << "\" stroke=\"#845ef7\" stroke-width=\"2\" stroke-dasharray=\"4 3\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace asa
