#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "asa/conv.hpp"
#include "asa/tile.hpp"

namespace asa {

struct NtruParams {
    int N = 16;
    long long p = 3;
    long long q = 64;
    int d = 4;               // ones in the private key f
    int s = 2;               // g coefficients range over {0, ..., s-1}
    int k = 3;               // bin coordinates for the meet-in-the-middle search
    long long bin_width = 0; // 0 picks the default q/4

    long long width() const { return bin_width > 0 ? bin_width : q / 4; }
};

struct KeyPair {
    NtruParams params;
    Poly f;
    std::optional<Poly> f_q_inv; // empty for planted keys whose f has no mod-q inverse
    std::optional<Poly> f_p_inv; // empty for attack-only planted keys; required by decrypt
    Poly g;
    Poly h;                      // f_q_inv * g mod q, or a solved equivalent: f * h = g mod q
};

Poly poly_mod(const Poly& v, long long m);
Poly poly_add(const Poly& a, const Poly& b);
Poly centered_lift(const Poly& v, long long q); // into (-q/2, q/2]
Poly rotate(const Poly& v, int shift);
bool is_rotation(const Poly& a, const Poly& b);
int popcount_poly(const Poly& v);

// Inverse in Z_modulus[X]/(X^N - 1) for a prime or prime-power modulus:
// extended Euclid against X^N - 1 over the prime field, then Newton lifting
// u <- u * (2 - f * u) up the prime power.
std::optional<Poly> invert_mod(const Poly& f, long long modulus);

// Rejection-samples f (exactly d ones, invertible mod q and mod p) and a
// uniform g over {0,...,s-1}^N. Throws KeygenExhausted after 1000 attempts —
// which provably happens whenever d is even and q is a power of two, since
// then (X + 1) divides f over F_2.
KeyPair keygen(const NtruParams& params, uint64_t rng_seed);

// Builds a keypair without requiring f to be invertible mod q: samples f
// (d ones, invertible mod p) and small g, then solves f * h = g mod q for h
// directly (bitwise 2-adic lifting over the circulant of f when q = 2^e).
// This is what makes even-d parameter sets usable end to end.
KeyPair plant_keypair(const NtruParams& params, uint64_t rng_seed);

Poly sample_message(const NtruParams& params, uint64_t rng_seed); // uniform {0,...,p-1}^N
Poly sample_blinder(const NtruParams& params, uint64_t rng_seed); // p * (binary, d ones)

Poly encrypt(const NtruParams& params, const Poly& h, const Poly& m, const Poly& r);
Poly decrypt(const KeyPair& kp, const Poly& e);

enum class AttackBackend { Arithmetic, Assembly };
enum class AttackSide { FSide, GSide };

struct BfResult {
    Poly f;
    uint64_t candidates_tested = 0;
    long long separation_steps = 0; // q - s rejection passes per survivor filter
};

// F-side: enumerates binary candidates with d ones and keeps those whose
// product with h stays below s everywhere. G-side: enumerates {0,...,s-1}^N,
// maps through h^{-1}, and keeps binary weight-d preimages. Survivors that
// are rotations of each other count as one key.
BfResult brute_force_attack(const NtruParams& params, const Poly& h,
                            AttackSide side = AttackSide::FSide,
                            AttackBackend backend = AttackBackend::Arithmetic,
                            uint64_t enumeration_cap = uint64_t{1} << 24);

struct BinKey {
    std::vector<int> intervals; // one cell index per bin coordinate
    int family = 0;             // 0 = first half, 1 = second half (widened)
    bool operator==(const BinKey&) const = default;
};

BinKey first_half_key(const Poly& t, const NtruParams& params);
// All keys whose widened cells cover [t_i, t_i + s - 1] per coordinate; a
// first-half key matches a second-half insertion iff the cell tuples agree.
std::vector<BinKey> second_half_keys(const Poly& t, const NtruParams& params);
bool bins_match(const BinKey& first, const BinKey& second);

struct MitmResult {
    Poly f;
    int repetitions = 0;
    uint64_t pairs_verified = 0;
};

MitmResult mitm_attack_run(const NtruParams& params, const Poly& h, uint64_t rng_seed,
                           AttackBackend backend = AttackBackend::Arithmetic,
                           int repetition_cap = 0, // 0 picks ceil(8 * sqrt(d))
                           uint64_t half_space_cap = uint64_t{1} << 20);
Poly mitm_attack(const NtruParams& params, const Poly& h, uint64_t rng_seed);

struct CapacityReport {
    double search_space_log2 = 0;      // N * log2(s) candidate polynomials
    double molecule_budget_log2 = 0;   // log2 of the molecule budget (~10^23)
    double bf_capacity_log2 = 0;       // inputs a one-strand-per-candidate soup can try
    double mitm_capacity_log2 = 0;     // key-space coverable when strands pair up
    bool over_bf_capacity = false;
    double enumerable_at_budget_log2 = 0;      // min(search space, brute-force capacity)
    double bf_breakable_security_log2 = 0;     // sqrt of key space: best-attack step count
    double mitm_breakable_security_log2 = 0;   // square of the brute-force figure
    long long ground_tile_classes = 0;         // 8 + 3N + s*t
    long long bridge_upper_classes = 0;        // q^2
    long long bridge_lower_classes = 0;        // 2q
    long long bridge_tile_classes = 0;         // q^2 + 2q per layer
};

CapacityReport capacity_estimate(const NtruParams& params, double budget_log2 = 80.0);

// Bin tiles for the paired-strand search: one tile per (family, coordinate,
// cell); the two families share a link glue per (coordinate, cell) so a
// first-half strand hybridizes exactly with a matching second-half strand.
TileSet make_bin_tileset(const NtruParams& params);

}  // namespace asa
