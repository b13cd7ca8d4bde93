#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "asa/rng.hpp"
#include "asa/tile.hpp"

namespace asa {

enum class ErrorCode {
    NonTerminal,
    AmbiguousAttachment,
    IncompleteAssembly,
    LengthMismatch,
    NotFound,
    Ambiguous,
    KeygenExhausted,
    EnumerationCapExceeded,
    InvalidInput,
};

const char* error_name(ErrorCode code);

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}
    ErrorCode code() const { return code_; }
    const char* name() const { return error_name(code_); }

private:
    ErrorCode code_;
};

struct PlacedTile {
    std::string class_id;
    bool mismatch = false;
    bool operator==(const PlacedTile&) const = default;
};

struct Placement {
    Coord at;
    std::string class_id;
};

struct Assembly {
    std::string tileset_name;
    Coord seed;
    uint64_t rng_seed = 0;
    uint64_t step_count = 0;
    std::map<Coord, PlacedTile> placed;
    // Off-lattice bonds (bridge arcs): pairs of tile coordinates.
    std::vector<std::pair<Coord, Coord>> arcs;

    size_t mismatch_count() const;
};

struct GrowthPolicy {
    enum class Mode { Deterministic, Stochastic };
    Mode mode = Mode::Deterministic;
    double error_rate = 0.0;
    uint64_t max_steps = 1'000'000;
};

// Grows from the pre-placed inputs (which must contain the tile at the seed
// coordinate, be bond-connected, and be free of glue conflicts) until no empty
// site admits a conflict-free tile at strength >= temperature.
Assembly grow(const TileSet& ts, const std::vector<Placement>& inputs, const GrowthPolicy& policy,
              uint64_t rng_seed);

struct StepResult {
    std::optional<Coord> attached;
    bool mismatch = false;
};

// Single attachment event on an existing assembly. Recomputes the frontier, so
// it is meant for tests and inspection, not bulk growth.
StepResult step(Assembly& assembly, const TileSet& ts, const GrowthPolicy& policy, Rng& rng);

struct ReadoutSelector {
    Coord at;
    Role role;
};

// Emulates the reporter strand: walks the selectors in order and returns the
// digit carried by each selected tile (ResultBit value or upper-connector sum).
std::vector<int> readout_reporter(const Assembly& assembly, const TileSet& ts,
                                  const std::vector<ReadoutSelector>& path);

// True when no pair of adjacent placed tiles exposes conflicting glue names on
// the shared boundary (matching or absent faces both count as sound).
bool adjacent_pairs_sound(const Assembly& assembly, const TileSet& ts);

}  // namespace asa
