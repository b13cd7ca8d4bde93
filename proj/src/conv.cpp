#include "asa/conv.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace asa {

namespace {

std::string num(long long v) { return std::to_string(v); }

GlueLabel glue(std::string name, int strength = 1) { return GlueLabel{std::move(name), strength}; }

Tile tile(std::string id, Payload payload) {
    Tile t;
    t.class_id = std::move(id);
    t.payload = std::move(payload);
    return t;
}

// Glue families. "cv" is the inter-layer value interface (strength 2, shared
// by every layer); "cw" and "carc" are layer-local tower / arc glues.
std::string a_glue(long long v) { return "ca." + num(v); }
std::string b_glue(long long v) { return "cb." + num(v); }
std::string value_glue(long long v) { return "cv." + num(v); }
std::string tower_glue(int layer, long long v) { return "cw." + num(layer) + "." + num(v); }
std::string arc_glue(int layer, long long v) { return "carc." + num(layer) + "." + num(v); }
std::string arow_glue(int x) { return "caj." + num(x); }
std::string bcol_glue(int y) { return "cbj." + num(y); }

std::string body_id(long long va, long long vb) { return "bd.a" + num(va) + ".b" + num(vb); }
std::string layer_id(int layer, const std::string& rest) {
    return "l" + num(layer) + "." + rest;
}

void check_instance(const ConvInstance& inst) {
    if (inst.N < 2 || (inst.N & (inst.N - 1)) != 0)
        throw DomainError(ErrorCode::InvalidInput, "N must be a power of two, at least 2");
    if (inst.q < 2) throw DomainError(ErrorCode::InvalidInput, "q must be at least 2");
    if (inst.s < 1 || inst.t < 1)
        throw DomainError(ErrorCode::InvalidInput, "alphabet sizes must be positive");
    if (static_cast<int>(inst.a.size()) != inst.N || static_cast<int>(inst.b.size()) != inst.N)
        throw DomainError(ErrorCode::LengthMismatch, "operand length must equal N");
    for (long long v : inst.a)
        if (v < 0 || v >= inst.s)
            throw DomainError(ErrorCode::InvalidInput, "a coefficient out of range");
    for (long long v : inst.b)
        if (v < 0 || v >= inst.t)
            throw DomainError(ErrorCode::InvalidInput, "b coefficient out of range");
}

int log2_of(int N) {
    int x = 0;
    while ((1 << x) < N) ++x;
    return x;
}

Tile lower_arc_tile(long long q, int layer, long long u) {
    Tile t = tile(layer_id(layer, "lowA." + num(u)), BridgeConnectorLower{u});
    t.face(Face::Down) = glue(value_glue(u % q), 2);
    t.face(Face::Up) = glue(arc_glue(layer, u), 2);
    return t;
}

Tile lower_tower_tile(long long q, int layer, long long v) {
    Tile t = tile(layer_id(layer, "lowB." + num(v)), BridgeConnectorLower{v});
    t.face(Face::Down) = glue(value_glue(v % q), 2);
    t.face(Face::Up) = glue(tower_glue(layer, v), 2);
    return t;
}

Tile spacer_tile(int layer, long long v) {
    Tile t = tile(layer_id(layer, "sp." + num(v)), BridgeSpacer{});
    t.face(Face::Down) = glue(tower_glue(layer, v), 2);
    t.face(Face::Up) = glue(tower_glue(layer, v), 2);
    return t;
}

Tile upper_tile(long long q, int layer, long long u, long long v) {
    Tile t = tile(layer_id(layer, "up." + num(u) + "." + num(v)),
                  BridgeConnectorUpper{(u + v) % q});
    t.face(Face::Down) = glue(tower_glue(layer, v), 2);
    t.face(Face::Up) = glue(value_glue((u + v) % q), 2);
    return t;
}

}  // namespace

Poly star(const Poly& A, const Poly& B) {
    if (A.empty() || A.size() != B.size())
        throw DomainError(ErrorCode::LengthMismatch, "operands must share a positive length");
    const int N = static_cast<int>(A.size());
    Poly C(static_cast<size_t>(N), 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) C[static_cast<size_t>((i + j) % N)] += A[i] * B[j];
    return C;
}

Poly star_mod(const Poly& A, const Poly& B, long long q) {
    if (q < 1) throw DomainError(ErrorCode::InvalidInput, "modulus must be positive");
    Poly C = star(A, B);
    for (long long& v : C) v = ((v % q) + q) % q;
    return C;
}

BridgeSpec bridge_spec(int layer) {
    if (layer < 1) throw DomainError(ErrorCode::InvalidInput, "bridge layers start at 1");
    BridgeSpec spec;
    spec.layer = layer;
    spec.span = 1 << layer;
    spec.lower_connectors = 2;
    spec.upper_connectors = 1;
    spec.spacer_count = spec.span - 2;
    return spec;
}

TileSet build_ground_layer(const ConvInstance& inst, bool combinatorial_b) {
    check_instance(inst);
    const int N = inst.N;
    std::vector<Tile> tiles;

    Tile start = tile("st", Start{});
    start.face(Face::North) = glue("cfn");
    start.face(Face::West) = glue("cfw");
    start.face(Face::East) = glue(arow_glue(0));
    start.face(Face::South) = glue(bcol_glue(N));
    tiles.push_back(start);

    for (int x = 0; x < 2 * N; ++x) {
        const long long av = inst.a[static_cast<size_t>(x % N)];
        Tile t = tile("in.a" + num(x), InputBit{x, static_cast<int>(av)});
        t.face(Face::West) = glue(arow_glue(x));
        t.face(Face::East) = glue(arow_glue(x + 1));
        t.face(Face::South) = glue(a_glue(av));
        tiles.push_back(t);
    }

    if (combinatorial_b) {
        for (int y = 0; y < N; ++y)
            for (long long v = 0; v < inst.t; ++v) {
                Tile t = tile("in.b" + num(y) + ".v" + num(v), InputBit{y, static_cast<int>(v)});
                t.face(Face::North) = glue(bcol_glue(y + 1));
                t.face(Face::South) = glue(bcol_glue(y));
                t.face(Face::East) = glue(b_glue(v));
                tiles.push_back(t);
            }
    } else {
        for (int y = 0; y < N; ++y) {
            const long long bv = inst.b[static_cast<size_t>(y)];
            Tile t = tile("in.b" + num(y), InputBit{y, static_cast<int>(bv)});
            t.face(Face::North) = glue(bcol_glue(y + 1));
            t.face(Face::South) = glue(bcol_glue(y));
            t.face(Face::East) = glue(b_glue(bv));
            tiles.push_back(t);
        }
    }

    for (long long va = 0; va < inst.s; ++va)
        for (long long vb = 0; vb < inst.t; ++vb) {
            const long long prod = (va * vb) % inst.q;
            Tile t = tile(body_id(va, vb), ConvBody{va, vb, prod});
            t.face(Face::North) = glue(a_glue(va));
            t.face(Face::South) = glue(a_glue(va));
            t.face(Face::West) = glue(b_glue(vb));
            t.face(Face::East) = glue(b_glue(vb));
            t.face(Face::Up) = glue(value_glue(prod), 2);
            tiles.push_back(t);
        }

    Tile arow_cap = tile("end.arow_cap", End{});
    arow_cap.face(Face::West) = glue(arow_glue(2 * N));
    arow_cap.face(Face::South) = glue("cne");
    arow_cap.face(Face::East) = glue("cfe");
    tiles.push_back(arow_cap);

    Tile ne_stop = tile("end.ne_stop", End{});
    ne_stop.face(Face::North) = glue("cne");
    tiles.push_back(ne_stop);

    Tile bcol_cap = tile("end.bcol_cap", End{});
    bcol_cap.face(Face::North) = glue(bcol_glue(0));
    bcol_cap.face(Face::South) = glue("cfs");
    tiles.push_back(bcol_cap);

    Tile frame_n = tile("fr.n", Frame{});
    frame_n.face(Face::South) = glue("cfn");
    tiles.push_back(frame_n);
    Tile frame_w = tile("fr.w", Frame{});
    frame_w.face(Face::East) = glue("cfw");
    tiles.push_back(frame_w);
    Tile frame_e = tile("fr.e", Frame{});
    frame_e.face(Face::West) = glue("cfe");
    tiles.push_back(frame_e);
    Tile frame_s = tile("fr.s", Frame{});
    frame_s.face(Face::North) = glue("cfs");
    tiles.push_back(frame_s);

    std::map<Role, int> inventory;
    inventory[Role::Start] = 1;
    inventory[Role::End] = 3;
    inventory[Role::Frame] = 4;
    inventory[Role::Input] = combinatorial_b ? 2 * N + inst.t * N : 3 * N;
    inventory[Role::Body] = inst.s * inst.t;

    return TileSet::create("conv.ground.N" + num(N) + ".q" + num(inst.q), 2, "st",
                           std::move(tiles), inventory);
}

TileSet build_ground_layer(int N, long long q, int s, int t, bool combinatorial_b) {
    ConvInstance inst;
    inst.N = N;
    inst.q = q;
    inst.s = s;
    inst.t = t;
    inst.a.assign(static_cast<size_t>(N), 0);
    inst.b.assign(static_cast<size_t>(N), 0);
    return build_ground_layer(inst, combinatorial_b);
}

std::vector<Placement> ground_placements(const ConvInstance& inst, bool combinatorial_b) {
    check_instance(inst);
    const int N = inst.N;
    std::vector<Placement> out;
    out.push_back({{-1, N, 0}, "st"});
    out.push_back({{-1, N + 1, 0}, "fr.n"});
    out.push_back({{-2, N, 0}, "fr.w"});
    for (int x = 0; x < 2 * N; ++x) out.push_back({{x, N, 0}, "in.a" + num(x)});
    out.push_back({{2 * N, N, 0}, "end.arow_cap"});
    out.push_back({{2 * N + 1, N, 0}, "fr.e"});
    out.push_back({{2 * N, N - 1, 0}, "end.ne_stop"});
    for (int y = N - 1; y >= 0; --y) {
        std::string id = "in.b" + num(y);
        if (combinatorial_b) id += ".v" + num(inst.b[static_cast<size_t>(y)]);
        out.push_back({{-1, y, 0}, std::move(id)});
    }
    out.push_back({{-1, -1, 0}, "end.bcol_cap"});
    out.push_back({{-1, -2, 0}, "fr.s"});
    return out;
}

TileSet build_bridge_layer(long long q, int layer) {
    if (q < 2) throw DomainError(ErrorCode::InvalidInput, "q must be at least 2");
    const BridgeSpec spec = bridge_spec(layer);
    std::vector<Tile> tiles;
    for (long long u = 0; u < q; ++u) tiles.push_back(lower_arc_tile(q, layer, u));
    for (long long v = 0; v < q; ++v) tiles.push_back(lower_tower_tile(q, layer, v));
    if (spec.spacer_count > 0)
        for (long long v = 0; v < q; ++v) tiles.push_back(spacer_tile(layer, v));
    for (long long u = 0; u < q; ++u)
        for (long long v = 0; v < q; ++v) tiles.push_back(upper_tile(q, layer, u, v));

    std::map<Role, int> inventory;
    inventory[Role::LowerConnector] = static_cast<int>(2 * q);
    inventory[Role::UpperConnector] = static_cast<int>(q * q);
    if (spec.spacer_count > 0) inventory[Role::Spacer] = static_cast<int>(q);

    return TileSet::create("conv.bridge.q" + num(q) + ".l" + num(layer), 2, "",
                           std::move(tiles), inventory);
}

TileSet conv_combined_tileset(const ConvInstance& inst) {
    check_instance(inst);
    TileSet ground = build_ground_layer(inst);
    std::vector<Tile> tiles = ground.tiles;
    std::map<Role, int> inventory = ground.inventory;
    const int x = log2_of(inst.N);
    for (int layer = 1; layer <= x; ++layer) {
        TileSet bridge = build_bridge_layer(inst.q, layer);
        for (Tile& t : bridge.tiles) tiles.push_back(std::move(t));
        for (const auto& [role, count] : bridge.inventory) inventory[role] += count;
    }
    return TileSet::create("conv.tower.N" + num(inst.N) + ".q" + num(inst.q), 2, "st",
                           std::move(tiles), inventory);
}

ConvRun star_via_assembly_run(const ConvInstance& inst, const GrowthPolicy& policy,
                              uint64_t rng_seed, bool combinatorial_b) {
    check_instance(inst);
    const int N = inst.N;
    const long long q = inst.q;
    const int x = log2_of(N);

    TileSet ground = build_ground_layer(inst, combinatorial_b);
    ConvRun run;
    run.assembly = grow(ground, ground_placements(inst, combinatorial_b), policy, rng_seed);
    run.layers = x + 1;
    run.exposures.resize(static_cast<size_t>(x) + 1);
    run.bridges_per_layer.assign(static_cast<size_t>(x), 0);
    run.spacer_instances_per_layer.assign(static_cast<size_t>(x), 0);

    // Exposed value units per diagonal, kept sorted by y. Read back from the
    // grown assembly so injected errors show up in the tower, not just in the
    // ground.
    std::map<int, std::vector<LayerExposure>> diag;
    for (const auto& [at, placed] : run.assembly.placed) {
        if (at.z != 0 || at.x < 0 || at.x >= 2 * N || at.y < 0 || at.y >= N) continue;
        const Tile* t = ground.find(placed.class_id);
        if (t == nullptr || !std::holds_alternative<ConvBody>(t->payload)) continue;
        const int d = static_cast<int>(at.x + at.y);
        diag[d].push_back({at, d, std::get<ConvBody>(t->payload).product});
    }
    for (auto& [d, units] : diag) {
        std::sort(units.begin(), units.end(),
                  [](const LayerExposure& l, const LayerExposure& r) { return l.at.y < r.at.y; });
        for (const LayerExposure& u : units) run.exposures[0].push_back(u);
    }

    long long z_surface = 0;
    for (int layer = 1; layer <= x; ++layer) {
        const int span = 1 << layer;
        std::map<int, std::vector<LayerExposure>> next;
        for (const auto& [d, units] : diag) {
            for (size_t t = 0; 2 * t + 1 < units.size(); ++t) {
                const LayerExposure& L = units[2 * t];
                const LayerExposure& R = units[2 * t + 1];
                const long long u = L.value;
                const long long v = R.value;
                const long long sum = (u + v) % q;
                const Coord arc_at{L.at.x, L.at.y, z_surface + 1};
                const Coord top_at{R.at.x, R.at.y, z_surface + span};
                run.assembly.placed[arc_at] = {layer_id(layer, "lowA." + num(u)), false};
                run.assembly.placed[{R.at.x, R.at.y, z_surface + 1}] =
                    {layer_id(layer, "lowB." + num(v)), false};
                for (long long z = z_surface + 2; z < z_surface + span; ++z)
                    run.assembly.placed[{R.at.x, R.at.y, z}] =
                        {layer_id(layer, "sp." + num(v)), false};
                run.assembly.placed[top_at] =
                    {layer_id(layer, "up." + num(u) + "." + num(v)), false};
                run.assembly.step_count += static_cast<uint64_t>(span) + 1;
                run.assembly.arcs.emplace_back(arc_at, top_at);
                next[d].push_back({top_at, d, sum});
                run.bridges_per_layer[static_cast<size_t>(layer - 1)] += 1;
                run.spacer_instances_per_layer[static_cast<size_t>(layer - 1)] += span - 2;
            }
        }
        diag = std::move(next);
        z_surface += span;
        for (const auto& [d, units] : diag)
            for (const LayerExposure& u : units)
                run.exposures[static_cast<size_t>(layer)].push_back(u);
    }

    run.result.assign(static_cast<size_t>(N), 0);
    for (int k = 0; k < N; ++k) {
        auto it = diag.find(N + k);
        if (it == diag.end() || it->second.size() != 1)
            throw DomainError(ErrorCode::IncompleteAssembly,
                              "diagonal " + num(N + k) + " did not reach the top layer");
        run.result[static_cast<size_t>(k)] = it->second.front().value;
        run.readout_path.push_back({it->second.front().at, Role::UpperConnector});
    }
    auto dup = diag.find(N - 1);
    if (dup == diag.end() || dup->second.size() != 1)
        throw DomainError(ErrorCode::IncompleteAssembly,
                          "duplicate diagonal did not reach the top layer");
    run.duplicate_readout = dup->second.front().value;
    return run;
}

Poly star_via_assembly(const ConvInstance& inst, const GrowthPolicy& policy, uint64_t rng_seed,
                       bool combinatorial_b) {
    return star_via_assembly_run(inst, policy, rng_seed, combinatorial_b).result;
}

}  // namespace asa
