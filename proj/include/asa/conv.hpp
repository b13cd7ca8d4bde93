#pragma once

#include <cstdint>
#include <vector>

#include "asa/engine.hpp"
#include "asa/tile.hpp"

namespace asa {

using Poly = std::vector<long long>;

// Cyclic convolution product over Z[X]/(X^N - 1): C_k = sum of A_i * B_j with
// i + j = k (mod N), unreduced.
Poly star(const Poly& A, const Poly& B);
Poly star_mod(const Poly& A, const Poly& B, long long q);

struct ConvInstance {
    int N = 2;       // power of 2
    long long q = 4;
    int s = 2;       // a_i in {0, ..., s-1}
    int t = 2;       // b_j in {0, ..., t-1}
    Poly a;
    Poly b;
};

struct BridgeSpec {
    int layer = 1;
    int span = 2;             // lattice distance bridged; doubles per layer
    int lower_connectors = 2;
    int upper_connectors = 1;
    int spacer_count = 0;     // span - 2 spacer instances per bridge
};

BridgeSpec bridge_spec(int layer);

// Ground layer: the (repeated-a) x (b) product grid. Row y = N holds the 2N
// position-indexed a tiles, column x = -1 the N b tiles; bodies fill
// x = 0..2N-1, y = 0..N-1 and expose a*b mod q upward. Cell (x, y) feeds the
// diagonal x + y; diagonals N-1 .. 2N-1 are the full ones.
TileSet build_ground_layer(const ConvInstance& inst, bool combinatorial_b = false);
TileSet build_ground_layer(int N, long long q, int s, int t, bool combinatorial_b = false);

std::vector<Placement> ground_placements(const ConvInstance& inst, bool combinatorial_b = false);

// Bridge layer l: q^2 upper connectors (one per value pair, carrying the mod-q
// sum), 2q lower connectors (arc side and tower side), and q value-relaying
// spacer classes once the span leaves room for them (layer 2 up).
TileSet build_bridge_layer(long long q, int layer);

// Ground plus every bridge layer of the instance in one set (class ids are
// layer-qualified); useful for readout and export of a full tower assembly.
TileSet conv_combined_tileset(const ConvInstance& inst);

struct LayerExposure {
    Coord at;
    int diagonal = 0;
    long long value = 0;
};

struct ConvRun {
    Assembly assembly;
    Poly result;                                   // C_0 .. C_{N-1} mod q
    int layers = 0;                                // x + 1 including the ground
    std::vector<int> bridges_per_layer;            // bridge layers 1..x
    std::vector<long long> spacer_instances_per_layer;
    std::vector<std::vector<LayerExposure>> exposures;  // per layer 0..x
    long long duplicate_readout = -1;              // dropped duplicate C_{N-1}
    std::vector<ReadoutSelector> readout_path;     // top-layer C_0..C_{N-1}
};

// Grows the ground layer under the policy, then attaches pre-assembled bridges
// layer by layer (greedy pairing along each diagonal; leftovers stall) and
// reads the top layer, dropping the duplicate C_{N-1}.
ConvRun star_via_assembly_run(const ConvInstance& inst, const GrowthPolicy& policy,
                              uint64_t rng_seed, bool combinatorial_b = false);
Poly star_via_assembly(const ConvInstance& inst, const GrowthPolicy& policy, uint64_t rng_seed,
                       bool combinatorial_b = false);

}  // namespace asa
