#include "asa/mult.hpp"

#include <algorithm>

namespace asa {

namespace {

constexpr int kTemperature = 3;

std::string num(int v) { return std::to_string(v); }

GlueLabel glue(const std::string& name, int strength = 1) { return GlueLabel{name, strength}; }

Tile tile(std::string id, Payload payload) {
    Tile t;
    t.class_id = std::move(id);
    t.payload = std::move(payload);
    return t;
}

// Sum values travel north-south, (b, carry) pairs travel west-east, operand-a
// bits come down from the plane above.
std::string sum_glue(int v) { return "ms." + num(v); }
std::string bc_glue(int b, int c) { return "mbc." + num(b) + "." + num(c); }
std::string a_glue(int v) { return "ma." + num(v); }
std::string bcol_glue(int k) { return "mbj." + num(k); }

Tile body_tile(int a, int b, int c, int s) {
    MultBody p = mult_body_payload(a, b, c, s);
    Tile t = tile("mb.a" + num(a) + "b" + num(b) + "c" + num(c) + "s" + num(s), p);
    t.face(Face::North) = glue(sum_glue(p.s));
    t.face(Face::South) = glue(sum_glue(p.s2));
    t.face(Face::West) = glue(bc_glue(p.b, p.c));
    t.face(Face::East) = glue(bc_glue(p.b, p.c2));
    t.face(Face::Up) = glue(a_glue(p.a));
    return t;
}

Tile a_input_tile(const std::string& id, int position, int value) {
    Tile t = tile(id, InputBit{position, value});
    t.face(Face::West) = glue("mrow");
    t.face(Face::East) = glue("mrow");
    t.face(Face::Down) = glue(a_glue(value));
    return t;
}

Tile b_input_tile(const std::string& id, int position, int value) {
    Tile t = tile(id, InputBit{position, value});
    t.face(Face::North) = glue(bcol_glue(position + 1));
    t.face(Face::South) = glue(bcol_glue(position), position == 0 ? 3 : 1);
    t.face(Face::East) = glue(bc_glue(value, 0));
    return t;
}

std::vector<Tile> fixed_tiles(const MultInstance& inst, bool combinatorial) {
    const int m = inst.m, n = inst.n;
    std::vector<Tile> tiles;

    Tile start = tile("st", Start{});
    start.face(Face::East) = glue("mtop");
    start.face(Face::South) = glue(bcol_glue(n));
    start.face(Face::Up) = glue("mrlh");
    tiles.push_back(start);

    if (combinatorial) {
        for (int i = 0; i < m; ++i)
            for (int v : {0, 1})
                tiles.push_back(a_input_tile("in.a" + num(i) + ".v" + num(v), i, v));
        for (int k = 0; k < n; ++k)
            for (int v : {0, 1})
                tiles.push_back(b_input_tile("in.b" + num(k) + ".v" + num(v), k, v));
    } else {
        for (int i = 0; i < m; ++i)
            tiles.push_back(a_input_tile("in.a" + num(i), i, inst.a_bits[i]));
        for (int k = 0; k < n; ++k)
            tiles.push_back(b_input_tile("in.b" + num(k), k, inst.b_bits[k]));
    }

    for (int a : {0, 1})
        for (int b : {0, 1})
            for (int c : {0, 1})
                for (int s : {0, 1}) tiles.push_back(body_tile(a, b, c, s));

    Tile top = tile("fr.top", Frame{});
    top.face(Face::West) = glue("mtop");
    top.face(Face::East) = glue("mtop");
    top.face(Face::South) = glue(sum_glue(0));
    tiles.push_back(top);

    Tile pad_w = tile("fr.pad_w", Frame{});
    pad_w.face(Face::West) = glue("mrow");
    pad_w.face(Face::East) = glue("mrow");
    pad_w.face(Face::Down) = glue(a_glue(0));
    tiles.push_back(pad_w);

    Tile pad_e = tile("fr.pad_e", Frame{});
    pad_e.face(Face::West) = glue("mrow");
    pad_e.face(Face::East) = glue("mrow");
    pad_e.face(Face::Down) = glue(a_glue(0));
    tiles.push_back(pad_e);

    Tile rail = tile("fr.rail", Frame{});
    rail.face(Face::North) = glue("mrl");
    rail.face(Face::South) = glue("mrl");
    rail.face(Face::East) = glue("mrow");
    tiles.push_back(rail);

    Tile rail_head = tile("fr.rail_head", Frame{});
    rail_head.face(Face::Down) = glue("mrlh");
    rail_head.face(Face::South) = glue("mrl");
    tiles.push_back(rail_head);

    Tile slab_cap = tile("fr.slab_cap", Frame{});
    slab_cap.face(Face::West) = glue("mrow");
    tiles.push_back(slab_cap);

    for (int v : {0, 1}) {
        Tile res = tile("res." + num(v), ResultBit{v});
        res.face(Face::North) = glue(sum_glue(v));
        res.face(Face::West) = glue("mre", 2);
        res.face(Face::East) = glue("mre", 2);
        tiles.push_back(res);
    }

    Tile top_cap = tile("end.top_cap", End{});
    top_cap.face(Face::West) = glue("mtop");
    tiles.push_back(top_cap);

    Tile anchor = tile("end.readout_anchor", End{});
    anchor.face(Face::North) = glue(bcol_glue(0), 3);
    anchor.face(Face::East) = glue("mre", 2);
    tiles.push_back(anchor);

    Tile rail_cap = tile("end.rail_cap", End{});
    rail_cap.face(Face::North) = glue("mrl");
    tiles.push_back(rail_cap);

    return tiles;
}

void check_instance(const MultInstance& inst) {
    if (inst.m < 1 || inst.n < 1)
        throw DomainError(ErrorCode::InvalidInput, "operand lengths must be at least 1");
    if (static_cast<int>(inst.a_bits.size()) != inst.m ||
        static_cast<int>(inst.b_bits.size()) != inst.n)
        throw DomainError(ErrorCode::LengthMismatch, "operand bit vectors disagree with m, n");
    for (int v : inst.a_bits)
        if (v != 0 && v != 1) throw DomainError(ErrorCode::InvalidInput, "a bits must be 0 or 1");
    for (int v : inst.b_bits)
        if (v != 0 && v != 1) throw DomainError(ErrorCode::InvalidInput, "b bits must be 0 or 1");
}

}  // namespace

TileSet build_mult_tileset(const MultInstance& inst, bool combinatorial) {
    check_instance(inst);
    const int m = inst.m, n = inst.n;
    std::map<Role, int> inventory = {
        {Role::Start, 1},        {Role::End, 3},   {Role::Frame, 6},
        {Role::Input, combinatorial ? 2 * (m + n) : m + n},
        {Role::Body, 16},        {Role::Result, 2},
    };
    return TileSet::create("mult.m" + std::to_string(m) + ".n" + std::to_string(n), kTemperature,
                           "st", fixed_tiles(inst, combinatorial), std::move(inventory));
}

TileSet build_mult_tileset(int m, int n, bool combinatorial) {
    MultInstance inst{m, n, std::vector<int>(std::max(m, 1), 0), std::vector<int>(std::max(n, 1), 0)};
    return build_mult_tileset(inst, combinatorial);
}

std::vector<Placement> mult_input_placements(const MultInstance& inst, bool combinatorial) {
    check_instance(inst);
    const int m = inst.m, n = inst.n, w = m + n;
    auto a_class = [&](int i) {
        return combinatorial ? "in.a" + std::to_string(i) + ".v" + std::to_string(inst.a_bits[i])
                             : "in.a" + std::to_string(i);
    };
    auto b_class = [&](int k) {
        return combinatorial ? "in.b" + std::to_string(k) + ".v" + std::to_string(inst.b_bits[k])
                             : "in.b" + std::to_string(k);
    };
    std::vector<Placement> inputs;
    inputs.push_back({{-1, 1, 0}, "st"});
    for (int x = 0; x < w; ++x) inputs.push_back({{x, 1, 0}, "fr.top"});
    inputs.push_back({{w, 1, 0}, "end.top_cap"});
    for (int j = 0; j < n; ++j) inputs.push_back({{-1, -j, 0}, b_class(n - 1 - j)});
    inputs.push_back({{-1, 1, 1}, "fr.rail_head"});
    for (int j = 0; j < n; ++j) inputs.push_back({{-1, -j, 1}, "fr.rail"});
    inputs.push_back({{-1, -n, 1}, "end.rail_cap"});
    for (int j = 0; j < n; ++j) {
        const int shift = n - 1 - j;  // row y = -j holds a shifted to weight 2^(n-1-j)
        for (int x = 0; x < w; ++x) {
            if (x < shift)
                inputs.push_back({{x, -j, 1}, "fr.pad_w"});
            else if (x < shift + m)
                inputs.push_back({{x, -j, 1}, a_class(x - shift)});
            else
                inputs.push_back({{x, -j, 1}, "fr.pad_e"});
        }
        inputs.push_back({{w, -j, 1}, "fr.slab_cap"});
    }
    return inputs;
}

std::vector<ReadoutSelector> mult_result_selectors(const MultInstance& inst) {
    std::vector<ReadoutSelector> path;
    for (int x = 0; x < inst.m + inst.n; ++x)
        path.push_back({{x, -inst.n, 0}, Role::Result});
    return path;
}

MultRun multiply_run(const std::vector<int>& a_bits, const std::vector<int>& b_bits,
                     const GrowthPolicy& policy, uint64_t rng_seed) {
    MultInstance inst{static_cast<int>(a_bits.size()), static_cast<int>(b_bits.size()), a_bits,
                      b_bits};
    TileSet ts = build_mult_tileset(inst);
    MultRun run{grow(ts, mult_input_placements(inst), policy, rng_seed), {}, 0};
    run.result_bits = readout_reporter(run.assembly, ts, mult_result_selectors(inst));
    run.product = bits_to_integer(run.result_bits);
    return run;
}

uint64_t multiply(const std::vector<int>& a_bits, const std::vector<int>& b_bits,
                  const GrowthPolicy& policy, uint64_t rng_seed) {
    return multiply_run(a_bits, b_bits, policy, rng_seed).product;
}

std::vector<int> sample_input(const ConcentrationMap& map, uint64_t rng_seed) {
    Rng rng(rng_seed);
    std::vector<int> bits;
    bits.reserve(map.weights.size());
    for (auto [w0, w1] : map.weights) {
        if (w0 <= 0.0 || w1 <= 0.0)
            throw DomainError(ErrorCode::InvalidInput, "concentration weights must be positive");
        bits.push_back(rng.unit() < w1 / (w0 + w1) ? 1 : 0);
    }
    return bits;
}

MultStats mult_stats(const TileSet& ts, const Assembly& assembly, bool reporter_mode) {
    MultStats stats;
    stats.tile_classes = ts.inventory;
    stats.total_classes = ts.total_classes();
    stats.reaction_steps = reporter_mode ? 1 : 2;
    stats.step_count = assembly.step_count;
    stats.mismatches = assembly.mismatch_count();
    return stats;
}

std::vector<int> bits_from_binary_string(const std::string& text) {
    if (text.empty()) throw DomainError(ErrorCode::InvalidInput, "empty binary string");
    std::vector<int> bits;
    bits.reserve(text.size());
    for (auto it = text.rbegin(); it != text.rend(); ++it) {
        if (*it != '0' && *it != '1')
            throw DomainError(ErrorCode::InvalidInput, "binary string may contain only 0 and 1");
        bits.push_back(*it - '0');
    }
    return bits;
}

std::string bits_to_binary_string(const std::vector<int>& bits) {
    std::string text;
    bool leading = true;
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        if (leading && *it == 0) continue;
        leading = false;
        text.push_back(static_cast<char>('0' + *it));
    }
    return text.empty() ? "0" : text;
}

uint64_t bits_to_integer(const std::vector<int>& bits) {
    uint64_t value = 0;
    for (size_t i = bits.size(); i-- > 0;) value = value * 2 + static_cast<uint64_t>(bits[i]);
    return value;
}

std::vector<int> integer_to_bits(uint64_t value) {
    std::vector<int> bits;
    do {
        bits.push_back(static_cast<int>(value & 1));
        value >>= 1;
    } while (value != 0);
    return bits;
}

}  // namespace asa
