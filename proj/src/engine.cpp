#include "asa/engine.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace asa {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonTerminal: return "NonTerminal";
        case ErrorCode::AmbiguousAttachment: return "AmbiguousAttachment";
        case ErrorCode::IncompleteAssembly: return "IncompleteAssembly";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::Ambiguous: return "Ambiguous";
        case ErrorCode::KeygenExhausted: return "KeygenExhausted";
        case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

size_t Assembly::mismatch_count() const {
    size_t n = 0;
    for (const auto& [coord, tile] : placed) n += tile.mismatch ? 1 : 0;
    return n;
}

namespace {

std::string coord_str(Coord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," + std::to_string(c.z) + ")";
}

constexpr int kNoGlue = -1;

struct CompiledTile {
    std::array<int, 6> glue;      // interned glue id per face, kNoGlue if absent
    std::array<int, 6> strength;  // face strength, 0 if absent
};

struct CompiledSet {
    const TileSet* ts = nullptr;
    std::vector<CompiledTile> tiles;
    std::map<std::string, int, std::less<>> class_index;

    explicit CompiledSet(const TileSet& set) : ts(&set) {
        std::map<std::string, int, std::less<>> glue_ids;
        tiles.reserve(set.tiles.size());
        for (size_t i = 0; i < set.tiles.size(); ++i) {
            const Tile& t = set.tiles[i];
            class_index.emplace(t.class_id, static_cast<int>(i));
            CompiledTile ct{};
            for (Face f : all_faces) {
                const auto fi = static_cast<size_t>(f);
                const auto& g = t.face(f);
                if (g) {
                    auto [it, ignored] = glue_ids.try_emplace(g->name, static_cast<int>(glue_ids.size()));
                    ct.glue[fi] = it->second;
                    ct.strength[fi] = g->strength;
                } else {
                    ct.glue[fi] = kNoGlue;
                    ct.strength[fi] = 0;
                }
            }
            tiles.push_back(ct);
        }
    }
};

struct SiteInfo {
    std::vector<int> clean;
    std::vector<int> faulty;
};

class Grower {
public:
    Grower(Assembly& assembly, const TileSet& ts) : asm_(assembly), ts_(ts), cs_(ts) {
        for (const auto& [coord, placed] : asm_.placed) {
            auto it = cs_.class_index.find(placed.class_id);
            if (it == cs_.class_index.end())
                throw DomainError(ErrorCode::InvalidInput,
                                  "placed class not in tile set: " + placed.class_id);
            placed_idx_.emplace(coord, it->second);
        }
        std::set<Coord> rim;
        for (const auto& [coord, idx] : placed_idx_)
            for (Face f : all_faces) {
                Coord n = coord + offset(f);
                if (!placed_idx_.contains(n)) rim.insert(n);
            }
        for (Coord c : rim) refresh_site(c);
    }

    // One attachment; returns nullopt when no conflict-free tile fits anywhere.
    std::optional<StepResult> try_step(const GrowthPolicy& policy, Rng& rng) {
        if (policy.mode == GrowthPolicy::Mode::Deterministic) {
            for (const auto& [coord, info] : frontier_) {
                if (info.clean.empty()) continue;
                if (info.clean.size() > 1)
                    throw DomainError(ErrorCode::AmbiguousAttachment,
                                      std::to_string(info.clean.size()) +
                                          " tile classes attachable at " + coord_str(coord));
                Coord at = coord;
                place(at, info.clean[0], false);
                return StepResult{at, false};
            }
            return std::nullopt;
        }
        size_t n_clean = 0, n_faulty = 0;
        for (const auto& [coord, info] : frontier_) {
            n_clean += info.clean.size();
            n_faulty += info.faulty.size();
        }
        if (n_clean == 0) return std::nullopt;
        const bool inject = policy.error_rate > 0.0 && n_faulty > 0 && rng.bernoulli(policy.error_rate);
        uint64_t pick = rng.below(inject ? n_faulty : n_clean);
        for (const auto& [coord, info] : frontier_) {
            const auto& list = inject ? info.faulty : info.clean;
            if (pick >= list.size()) {
                pick -= list.size();
                continue;
            }
            Coord at = coord;
            place(at, list[pick], inject);
            return StepResult{at, inject};
        }
        return std::nullopt;  // unreachable
    }

private:
    void refresh_site(Coord c) {
        std::array<int, 6> exposed;
        for (Face f : all_faces) {
            auto it = placed_idx_.find(c + offset(f));
            exposed[static_cast<size_t>(f)] =
                it == placed_idx_.end()
                    ? kNoGlue
                    : cs_.tiles[it->second].glue[static_cast<size_t>(opposite(f))];
        }
        SiteInfo info;
        for (size_t i = 0; i < cs_.tiles.size(); ++i) {
            const CompiledTile& ct = cs_.tiles[i];
            int matched = 0, conflicts = 0, conflict_strength = 0;
            for (size_t fi = 0; fi < 6; ++fi) {
                if (ct.glue[fi] == kNoGlue || exposed[fi] == kNoGlue) continue;
                if (ct.glue[fi] == exposed[fi])
                    matched += ct.strength[fi];
                else {
                    ++conflicts;
                    conflict_strength += ct.strength[fi];
                }
            }
            if (conflicts == 0 && matched >= ts_.temperature)
                info.clean.push_back(static_cast<int>(i));
            else if (conflicts == 1 && matched + conflict_strength >= ts_.temperature)
                info.faulty.push_back(static_cast<int>(i));
        }
        if (info.clean.empty() && info.faulty.empty())
            frontier_.erase(c);
        else
            frontier_[c] = std::move(info);
    }

    void place(Coord c, int tile_idx, bool mismatch) {
        asm_.placed[c] = PlacedTile{cs_.ts->tiles[tile_idx].class_id, mismatch};
        placed_idx_.emplace(c, tile_idx);
        ++asm_.step_count;
        frontier_.erase(c);
        for (Face f : all_faces) {
            Coord n = c + offset(f);
            if (!placed_idx_.contains(n)) refresh_site(n);
        }
    }

    Assembly& asm_;
    const TileSet& ts_;
    CompiledSet cs_;
    std::map<Coord, int> placed_idx_;
    std::map<Coord, SiteInfo> frontier_;
};

Assembly assemble_inputs(const TileSet& ts, const std::vector<Placement>& inputs,
                         uint64_t rng_seed) {
    if (inputs.empty()) throw DomainError(ErrorCode::InvalidInput, "no pre-placed tiles");
    Assembly assembly;
    assembly.tileset_name = ts.name;
    assembly.rng_seed = rng_seed;
    std::map<Coord, const Tile*> tiles_at;
    for (const Placement& p : inputs) {
        const Tile* t = ts.find(p.class_id);
        if (!t)
            throw DomainError(ErrorCode::InvalidInput, "unknown tile class: " + p.class_id);
        if (!tiles_at.emplace(p.at, t).second)
            throw DomainError(ErrorCode::InvalidInput, "two tiles pre-placed at " + coord_str(p.at));
        assembly.placed[p.at] = PlacedTile{p.class_id, false};
    }
    assembly.seed = inputs.front().at;
    for (const Placement& p : inputs)
        if (p.class_id == ts.seed_class) {
            assembly.seed = p.at;
            break;
        }
    // Pre-placed tiles must not conflict on shared faces, and must be
    // bond-connected to the seed (matching faces form the bonds).
    std::queue<Coord> q;
    std::set<Coord> seen;
    q.push(assembly.seed);
    seen.insert(assembly.seed);
    while (!q.empty()) {
        Coord c = q.front();
        q.pop();
        const Tile* t = tiles_at.at(c);
        for (Face f : all_faces) {
            Coord n = c + offset(f);
            auto it = tiles_at.find(n);
            if (it == tiles_at.end()) continue;
            const auto& mine = t->face(f);
            const auto& theirs = it->second->face(opposite(f));
            if (mine && theirs && mine->name != theirs->name)
                throw DomainError(ErrorCode::InvalidInput, "pre-placed glue conflict between " +
                                                               coord_str(c) + " and " + coord_str(n));
            if (faces_match(mine, theirs) && seen.insert(n).second) q.push(n);
        }
    }
    if (seen.size() != tiles_at.size())
        throw DomainError(ErrorCode::InvalidInput,
                          "pre-placed tiles are not bond-connected to the seed");
    return assembly;
}

}  // namespace

Assembly grow(const TileSet& ts, const std::vector<Placement>& inputs, const GrowthPolicy& policy,
              uint64_t rng_seed) {
    if (policy.mode == GrowthPolicy::Mode::Deterministic && policy.error_rate != 0.0)
        throw DomainError(ErrorCode::InvalidInput, "deterministic growth requires error_rate 0");
    Assembly assembly = assemble_inputs(ts, inputs, rng_seed);
    Grower grower(assembly, ts);
    Rng rng(rng_seed);
    uint64_t grown = 0;
    while (true) {
        if (grown == policy.max_steps) {
            // Terminal already? Only an actual further attachment means failure.
            if (grower.try_step(policy, rng))
                throw DomainError(ErrorCode::NonTerminal,
                                  "max_steps (" + std::to_string(policy.max_steps) +
                                      ") exhausted before terminal assembly");
            break;
        }
        if (!grower.try_step(policy, rng)) break;
        ++grown;
    }
    return assembly;
}

StepResult step(Assembly& assembly, const TileSet& ts, const GrowthPolicy& policy, Rng& rng) {
    if (policy.mode == GrowthPolicy::Mode::Deterministic && policy.error_rate != 0.0)
        throw DomainError(ErrorCode::InvalidInput, "deterministic growth requires error_rate 0");
    Grower grower(assembly, ts);
    auto result = grower.try_step(policy, rng);
    return result ? *result : StepResult{};
}

std::vector<int> readout_reporter(const Assembly& assembly, const TileSet& ts,
                                  const std::vector<ReadoutSelector>& path) {
    std::vector<int> digits;
    digits.reserve(path.size());
    for (const ReadoutSelector& sel : path) {
        auto it = assembly.placed.find(sel.at);
        if (it == assembly.placed.end())
            throw DomainError(ErrorCode::IncompleteAssembly,
                              "no tile at readout position " + coord_str(sel.at));
        const Tile* t = ts.find(it->second.class_id);
        if (!t)
            throw DomainError(ErrorCode::InvalidInput,
                              "placed class not in tile set: " + it->second.class_id);
        if (role_of(t->payload) != sel.role)
            throw DomainError(ErrorCode::InvalidInput,
                              "tile at " + coord_str(sel.at) + " has role " +
                                  std::string(role_name(role_of(t->payload))) + ", expected " +
                                  std::string(role_name(sel.role)));
        if (const auto* r = std::get_if<ResultBit>(&t->payload))
            digits.push_back(r->value);
        else if (const auto* u = std::get_if<BridgeConnectorUpper>(&t->payload))
            digits.push_back(static_cast<int>(u->sum));
        else
            throw DomainError(ErrorCode::InvalidInput,
                              "tile at " + coord_str(sel.at) + " carries no readable digit");
    }
    return digits;
}

bool adjacent_pairs_sound(const Assembly& assembly, const TileSet& ts) {
    for (const auto& [coord, placed] : assembly.placed) {
        const Tile* t = ts.find(placed.class_id);
        if (!t) return false;
        for (Face f : {Face::North, Face::East, Face::Up}) {
            auto it = assembly.placed.find(coord + offset(f));
            if (it == assembly.placed.end()) continue;
            const Tile* other = ts.find(it->second.class_id);
            if (!other) return false;
            const auto& mine = t->face(f);
            const auto& theirs = other->face(opposite(f));
            if (mine && theirs && mine->name != theirs->name) return false;
        }
    }
    return true;
}

}  // namespace asa
