#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "asa/ntru.hpp"
#include "asa/rng.hpp"
#include "oracles.hpp"

using namespace asa;

namespace {

NtruParams params_of(int N, long long p, long long q, int d, int s = 2, int k = 3) {
    NtruParams params;
    params.N = N;
    params.p = p;
    params.q = q;
    params.d = d;
    params.s = s;
    params.k = k;
    return params;
}

Poly identity_poly(int N) {
    Poly e(static_cast<size_t>(N), 0);
    e[0] = 1;
    return e;
}

std::optional<ErrorCode> code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("poly helpers: mod, add, centered lift, rotation, popcount") {
    CHECK(poly_mod({-1, 5, 8}, 8) == Poly{7, 5, 0});
    CHECK(poly_add({1, 2, 3}, {4, 5, 6}) == Poly{5, 7, 9});
    // centered lift lands in (-q/2, q/2]
    CHECK(centered_lift({0, 3, 4, 5, 7}, 8) == Poly{0, 3, 4, -3, -1});
    CHECK(rotate({1, 2, 3, 4}, 1) == Poly{4, 1, 2, 3});
    CHECK(rotate({1, 2, 3, 4}, 3) == Poly{2, 3, 4, 1});
    CHECK(is_rotation({1, 2, 3, 4}, {3, 4, 1, 2}));
    CHECK_FALSE(is_rotation({1, 2, 3, 4}, {1, 2, 4, 3}));
    CHECK(popcount_poly({1, 0, 1, 1}) == 3);  // counts coefficients equal to one
    CHECK(popcount_poly({1, 0, 2, 1}) == 2);
}

TEST_CASE("inversion against X^N - 1 over primes and prime powers") {
    Rng rng(6);
    SUBCASE("identity is self-inverse") {
        const Poly e = identity_poly(8);
        const auto inv = invert_mod(e, 3);
        REQUIRE(inv.has_value());
        CHECK(*inv == e);
    }
    SUBCASE("the all-ones polynomial with even N has no inverse mod 2") {
        const auto inv = invert_mod(Poly(8, 1), 2);
        CHECK_FALSE(inv.has_value());
    }
    SUBCASE("(1 + X) shares a root with X^N - 1 and has no inverse mod 3") {
        Poly f(4, 0);
        f[0] = 1;
        f[1] = 1;
        CHECK_FALSE(invert_mod(f, 3).has_value());
    }
    SUBCASE("random odd-weight binaries invert mod 2^e and verify by product") {
        for (long long modulus : {2LL, 3LL, 32LL, 64LL, 128LL}) {
            int found = 0;
            for (int trial = 0; trial < 200 && found < 8; ++trial) {
                Poly f(8, 0);
                for (long long& c : f) c = static_cast<long long>(rng.below(2));
                const auto inv = invert_mod(f, modulus);
                if (!inv) continue;
                ++found;
                CHECK(star_mod(f, *inv, modulus) == identity_poly(8));
            }
            CHECK(found == 8);
        }
    }
}

TEST_CASE("keygen with odd d yields verified inverses and s-ary g") {
    const NtruParams params = params_of(16, 3, 64, 5);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const KeyPair kp = keygen(params, seed);
        CHECK(popcount_poly(kp.f) == 5);
        REQUIRE(kp.f_q_inv.has_value());
        REQUIRE(kp.f_p_inv.has_value());
        CHECK(star_mod(kp.f, *kp.f_q_inv, 64) == identity_poly(16));
        CHECK(star_mod(kp.f, *kp.f_p_inv, 3) == identity_poly(16));
        CHECK(std::all_of(kp.g.begin(), kp.g.end(), [](long long c) { return 0 <= c && c < 2; }));
        CHECK(kp.h == star_mod(*kp.f_q_inv, kp.g, 64));
        // determinism
        const KeyPair again = keygen(params, seed);
        CHECK(again.f == kp.f);
        CHECK(again.h == kp.h);
    }
}

TEST_CASE("keygen provably exhausts when d is even and q a power of two") {
    // (X + 1) divides any even-weight f over F_2, so no weight-4 f is a unit
    // mod 64; the documented retry limit must trip.
    const auto code = code_of([] { keygen(params_of(16, 3, 64, 4), 1); });
    REQUIRE(code.has_value());
    CHECK(*code == ErrorCode::KeygenExhausted);
}

TEST_CASE("planted keypairs satisfy f * h = g mod q even without a unit f") {
    const NtruParams params = params_of(16, 3, 64, 4);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const KeyPair kp = plant_keypair(params, seed);
        CHECK(popcount_poly(kp.f) == 4);
        CHECK(star_mod(kp.f, kp.h, 64) == poly_mod(kp.g, 64));
        CHECK(std::all_of(kp.g.begin(), kp.g.end(), [](long long c) { return 0 <= c && c < 2; }));
        REQUIRE(kp.f_p_inv.has_value());  // decrypt-capable at these parameters
        CHECK(star_mod(kp.f, *kp.f_p_inv, 3) == identity_poly(16));
        CHECK_FALSE(kp.f_q_inv.has_value());
    }
}

TEST_CASE("attack-only planted keypairs refuse to decrypt") {
    // No weight-2 binary is a unit mod 3 at N = 8 (1 + X^m always shares an
    // 8th root of unity over F_9), so planting falls back to no f_p_inv.
    const KeyPair kp = plant_keypair(params_of(8, 3, 32, 2), 1);
    CHECK_FALSE(kp.f_p_inv.has_value());
    const auto code = code_of([&] { (void)decrypt(kp, Poly(8, 0)); });
    REQUIRE(code.has_value());
    CHECK(*code == ErrorCode::InvalidInput);
}

TEST_CASE("encrypt/decrypt round-trips under the smallness bound") {
    const NtruParams params = params_of(16, 3, 64, 4);
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        const KeyPair kp = plant_keypair(params, seed);
        const Poly m = sample_message(params, seed * 31 + 1);
        const Poly r = sample_blinder(params, seed * 31 + 2);
        const Poly e = encrypt(params, kp.h, m, r);

        // The lift recovers p*(r/p * g) + f*m exactly when it stays within
        // (-q/2, q/2]; with the defaults the worst case is 3*4 + 4*2 = 20.
        Poly exact = oracle::star(r, kp.g);
        const Poly fm = oracle::star(kp.f, m);
        for (size_t i = 0; i < exact.size(); ++i) exact[i] += fm[i];
        long long worst = 0;
        for (long long c : exact) worst = std::max(worst, std::llabs(c));
        CHECK(worst <= params.q / 2);
        CHECK(centered_lift(star_mod(kp.f, e, params.q), params.q) == exact);

        CHECK(decrypt(kp, e) == m);
    }
}

TEST_CASE("trivial encryptions decode by inspection") {
    const NtruParams params = params_of(16, 3, 64, 4);
    const KeyPair kp = plant_keypair(params, 3);
    const Poly zero(16, 0);
    SUBCASE("zero blinder leaves the message") {
        Poly m(16, 0);
        m[0] = 2;
        m[5] = 1;
        CHECK(encrypt(params, kp.h, m, zero) == m);
        CHECK(decrypt(kp, m) == m);
    }
    SUBCASE("zero ciphertext decodes to zero") { CHECK(decrypt(kp, zero) == zero); }
    SUBCASE("length checks") {
        CHECK(code_of([&] { (void)encrypt(params, kp.h, Poly(15, 0), zero); }) ==
              ErrorCode::LengthMismatch);
        CHECK(code_of([&] { (void)encrypt(params, kp.h, zero, Poly(3, 0)); }) ==
              ErrorCode::LengthMismatch);
        CHECK(code_of([&] { (void)decrypt(kp, Poly(17, 0)); }) == ErrorCode::LengthMismatch);
    }
}

TEST_CASE("brute force recovers planted keys up to rotation") {
    const NtruParams params = params_of(8, 3, 32, 2);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const KeyPair kp = plant_keypair(params, seed);
        const BfResult bf = brute_force_attack(params, kp.h);
        CHECK(is_rotation(bf.f, kp.f));
        CHECK(bf.candidates_tested == 28);  // C(8,2)
        CHECK(bf.separation_steps == 30);   // q - s rejection passes
        const Poly g = star_mod(bf.f, kp.h, 32);
        CHECK(std::all_of(g.begin(), g.end(), [&](long long c) { return 0 <= c && c < params.s; }));
    }
}

TEST_CASE("f-side and g-side attacks agree where h is invertible") {
    // d = 5 keeps f(1) odd, so planted keys here take the invertible-f route
    // and come uniqueness-certified; h is a unit exactly when g(1) is odd.
    const NtruParams params = params_of(8, 3, 32, 5);
    int exercised = 0;
    for (uint64_t seed = 1; seed <= 24 && exercised < 3; ++seed) {
        const KeyPair kp = plant_keypair(params, seed);
        if (!invert_mod(kp.h, params.q)) continue;
        ++exercised;
        const BfResult f_side = brute_force_attack(params, kp.h, AttackSide::FSide);
        const BfResult g_side = brute_force_attack(params, kp.h, AttackSide::GSide);
        CHECK(is_rotation(f_side.f, kp.f));
        CHECK(is_rotation(g_side.f, f_side.f));
        CHECK(g_side.candidates_tested == 256);  // s^N odometer
    }
    CHECK(exercised == 3);
}

TEST_CASE("arithmetic and assembly backends return identical results") {
    for (int N : {2, 4}) {
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            const NtruParams params = params_of(N, 3, 8, 1);
            const KeyPair kp = plant_keypair(params, seed);
            const BfResult arith =
                brute_force_attack(params, kp.h, AttackSide::FSide, AttackBackend::Arithmetic);
            const BfResult assembly =
                brute_force_attack(params, kp.h, AttackSide::FSide, AttackBackend::Assembly);
            CHECK(arith.f == assembly.f);
            CHECK(arith.candidates_tested == assembly.candidates_tested);
        }
    }
}

TEST_CASE("attack error taxonomy: NotFound, Ambiguous, cap exceeded") {
    SUBCASE("no survivor") {
        // All rotations of h = (2,5,9,3) have a 9 > s somewhere.
        const NtruParams params = params_of(4, 3, 16, 1);
        CHECK(code_of([&] { brute_force_attack(params, {2, 5, 9, 3}); }) == ErrorCode::NotFound);
    }
    SUBCASE("everything survives h = 0, so survivors are ambiguous") {
        const NtruParams params = params_of(4, 3, 16, 2);
        CHECK(code_of([&] { brute_force_attack(params, Poly(4, 0)); }) == ErrorCode::Ambiguous);
    }
    SUBCASE("g-side needs an invertible h") {
        const NtruParams params = params_of(4, 3, 16, 1);
        CHECK(code_of([&] { brute_force_attack(params, Poly(4, 0), AttackSide::GSide); }) ==
              ErrorCode::NotFound);
    }
    SUBCASE("enumeration caps trip") {
        const NtruParams params = params_of(16, 3, 64, 4);
        CHECK(code_of([&] {
            brute_force_attack(params, Poly(16, 0), AttackSide::FSide, AttackBackend::Arithmetic,
                               10);
        }) == ErrorCode::EnumerationCapExceeded);
        CHECK(code_of([&] {
            mitm_attack_run(params, Poly(16, 0), 1, AttackBackend::Arithmetic, 0, 5);
        }) == ErrorCode::EnumerationCapExceeded);
    }
    SUBCASE("meet-in-the-middle needs even N and d") {
        CHECK(code_of([&] { mitm_attack_run(params_of(16, 3, 64, 3), Poly(16, 0), 1); }) ==
              ErrorCode::InvalidInput);
    }
}

TEST_CASE("meet-in-the-middle recovers planted keys and is reproducible") {
    const NtruParams params = params_of(16, 3, 64, 4);
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        const KeyPair kp = plant_keypair(params, seed);
        const MitmResult a = mitm_attack_run(params, kp.h, seed + 50);
        CHECK(is_rotation(a.f, kp.f));
        CHECK(a.repetitions >= 1);
        CHECK(a.repetitions <= 16);  // ceil(8 * sqrt(4))
        CHECK(a.pairs_verified >= 1);
        const MitmResult b = mitm_attack_run(params, kp.h, seed + 50);
        CHECK(a.f == b.f);
        CHECK(a.repetitions == b.repetitions);
        CHECK(mitm_attack(params, kp.h, seed + 50) == a.f);
    }
}

TEST_CASE("meet-in-the-middle and brute force agree at N = 8") {
    const NtruParams params = params_of(8, 3, 32, 2, 2, 2);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const KeyPair kp = plant_keypair(params, seed);
        const BfResult bf = brute_force_attack(params, kp.h);
        const MitmResult mitm = mitm_attack_run(params, kp.h, seed + 9);
        CHECK(is_rotation(mitm.f, bf.f));
    }
}

TEST_CASE("bin membership is a complete necessary condition (exhaustive)") {
    // For every second-half value t2 and every small g, the first-half key of
    // t1 = t2 + g must be among the widened second-half keys of t2; this is
    // what makes binning a filter that can never lose the true pair.
    const NtruParams params = params_of(8, 3, 16, 2, 2, 2);
    REQUIRE(params.width() == 4);
    for (long long t2a = 0; t2a < 16; ++t2a)
        for (long long t2b = 0; t2b < 16; ++t2b)
            for (long long ga = 0; ga < 2; ++ga)
                for (long long gb = 0; gb < 2; ++gb) {
                    Poly t2(8, 0), t1(8, 0);
                    t2[0] = t2a;
                    t2[1] = t2b;
                    t1[0] = (t2a + ga) % 16;
                    t1[1] = (t2b + gb) % 16;
                    const BinKey first = first_half_key(t1, params);
                    const auto seconds = second_half_keys(t2, params);
                    const bool covered =
                        std::any_of(seconds.begin(), seconds.end(),
                                    [&](const BinKey& k) { return bins_match(first, k); });
                    CHECK(covered);
                }
}

TEST_CASE("bin keys respect family direction and interval equality") {
    const NtruParams params = params_of(8, 3, 16, 2, 2, 2);
    const BinKey first = first_half_key({5, 9, 0, 0, 0, 0, 0, 0}, params);
    CHECK(first.family == 0);
    CHECK(first.intervals == std::vector<int>{1, 2});
    BinKey second = first;
    second.family = 1;
    CHECK(bins_match(first, second));
    CHECK_FALSE(bins_match(second, first));   // wrong direction
    CHECK_FALSE(bins_match(first, first));    // same family
    second.intervals = {1, 3};
    CHECK_FALSE(bins_match(first, second));
}

TEST_CASE("widened second-half keys stay sorted, unique, and of bounded count") {
    const NtruParams params = params_of(8, 3, 16, 2, 2, 2);
    Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        Poly t(8, 0);
        for (int i = 0; i < 2; ++i) t[static_cast<size_t>(i)] = static_cast<long long>(rng.below(16));
        auto keys = second_half_keys(t, params);
        CHECK(!keys.empty());
        CHECK(keys.size() <= 4);  // at most 2 cells per coordinate when s <= width
        for (const BinKey& k : keys) CHECK(k.family == 1);
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end(),
                  [](const BinKey& x, const BinKey& y) { return x.intervals < y.intervals; });
        for (size_t i = 0; i + 1 < sorted.size(); ++i)
            CHECK(sorted[i].intervals != sorted[i + 1].intervals);
    }
}

TEST_CASE("capacity report reproduces the headline figures") {
    NtruParams params = params_of(64, 3, 64, 4, 3);
    const CapacityReport report = capacity_estimate(params);
    CHECK(report.search_space_log2 == doctest::Approx(64.0 * std::log2(3.0)));
    CHECK(report.molecule_budget_log2 == doctest::Approx(23.0 * std::log2(10.0)));
    CHECK(report.bf_capacity_log2 == 80.0);
    CHECK(report.mitm_capacity_log2 == 160.0);
    CHECK(report.over_bf_capacity);
    CHECK(report.enumerable_at_budget_log2 == 80.0);
    CHECK(report.bf_breakable_security_log2 == 40.0);
    CHECK(report.mitm_breakable_security_log2 == 80.0);
    CHECK(report.ground_tile_classes == 8 + 3 * 64 + 3 * 64);
    CHECK(report.bridge_upper_classes == 4096);
    CHECK(report.bridge_lower_classes == 128);
    CHECK(report.bridge_tile_classes == 4224);

    params.s = 2;  // within brute-force reach: 2^64 < 2^80
    const CapacityReport small = capacity_estimate(params);
    CHECK_FALSE(small.over_bf_capacity);
    CHECK(small.enumerable_at_budget_log2 == 64.0);
}

TEST_CASE("bin tile set pairs the two families through shared link glues") {
    const NtruParams params = params_of(16, 3, 16, 4, 2, 2);
    const TileSet bins = make_bin_tileset(params);
    CHECK(bins.inventory.at(Role::Bin) == 2 * 2 * 4);  // 2 families * k * (q/width)
    CHECK(lint_tileset(bins).empty());
    const Tile* i_tile = bins.find("bin.I.i0.c2");
    const Tile* j_tile = bins.find("bin.J.i0.c2");
    REQUIRE(i_tile != nullptr);
    REQUIRE(j_tile != nullptr);
    CHECK(faces_match(i_tile->face(Face::Down), j_tile->face(Face::Up)));
    const auto* ip = std::get_if<BinTile>(&i_tile->payload);
    const auto* jp = std::get_if<BinTile>(&j_tile->payload);
    REQUIRE(ip != nullptr);
    REQUIRE(jp != nullptr);
    CHECK(ip->family == 0);
    CHECK(jp->family == 1);
    CHECK(ip->intervals == jp->intervals);
}
