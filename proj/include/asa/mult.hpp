#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asa/engine.hpp"
#include "asa/tile.hpp"

namespace asa {

// Operand bits are little-endian: index 0 is the least significant bit.
struct MultInstance {
    int m = 1;                    // bit length of a
    int n = 1;                    // bit length of b
    std::vector<int> a_bits;      // size m
    std::vector<int> b_bits;      // size n
};

// Relative concentrations (weight0, weight1) of the value-0 and value-1 input
// tile at each position; sampling probability of 1 is w1 / (w0 + w1).
struct ConcentrationMap {
    std::vector<std::pair<double, double>> weights;
};

// The multiplier lattice:
//   - computation rows at z = 0, y = 0 .. -(n-1); row at y = -j processes bit
//     b[n-1-j], so b0's row is the lowest and the readout anchor grows below it
//   - column x holds the weight-2^x sum; carries ripple west to east inside a
//     row, sums fall straight south, and each body reads its a-operand bit
//     through its Up face from a pre-placed operand plane at z = 1
//   - the operand plane repeats a shifted by n-1-j in row y = -j, padded with
//     0-bit frame tiles, and hangs off a rail column stitched to the start tile
//   - result tiles grow at y = -n after an anchor (the readout dummy) attaches
//     under b0; temperature is 3 so bodies need all of north + west + up
TileSet build_mult_tileset(const MultInstance& inst, bool combinatorial = false);
TileSet build_mult_tileset(int m, int n, bool combinatorial = false);  // zero operands

std::vector<Placement> mult_input_placements(const MultInstance& inst, bool combinatorial = false);

// Readout path along the result row, least significant bit first, excluding
// the anchor tile under b0.
std::vector<ReadoutSelector> mult_result_selectors(const MultInstance& inst);

struct MultRun {
    Assembly assembly;
    std::vector<int> result_bits;  // m+n digits, little-endian
    uint64_t product = 0;
};

MultRun multiply_run(const std::vector<int>& a_bits, const std::vector<int>& b_bits,
                     const GrowthPolicy& policy, uint64_t rng_seed);

uint64_t multiply(const std::vector<int>& a_bits, const std::vector<int>& b_bits,
                  const GrowthPolicy& policy, uint64_t rng_seed);

std::vector<int> sample_input(const ConcentrationMap& map, uint64_t rng_seed);

struct MultStats {
    std::map<Role, int> tile_classes;
    size_t total_classes = 0;
    int reaction_steps = 0;  // 1 with an in-lattice reporter strand, 2 with the readout row
    uint64_t step_count = 0;
    size_t mismatches = 0;
};

MultStats mult_stats(const TileSet& ts, const Assembly& assembly, bool reporter_mode = false);

// "110" (most significant first) -> {0,1,1}; throws InvalidInput on bad chars.
std::vector<int> bits_from_binary_string(const std::string& text);
std::string bits_to_binary_string(const std::vector<int>& bits);  // strips leading zeros
uint64_t bits_to_integer(const std::vector<int>& bits);
std::vector<int> integer_to_bits(uint64_t value);  // at least one bit

}  // namespace asa
