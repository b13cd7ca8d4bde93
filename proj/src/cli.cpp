#include "asa/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "asa/conv.hpp"
#include "asa/engine.hpp"
#include "asa/json_io.hpp"
#include "asa/mult.hpp"
#include "asa/ntru.hpp"
#include "asa/rng.hpp"
#include "asa/svg_export.hpp"

namespace asa {

namespace {

struct UsageError {
    std::string message;
};

Poly parse_csv(const std::string& text) {
    Poly out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw UsageError{"bad coefficient: " + item};
        } catch (const std::invalid_argument&) {
            throw UsageError{"bad coefficient: " + item};
        } catch (const std::out_of_range&) {
            throw UsageError{"coefficient out of range: " + item};
        }
    }
    if (out.empty()) throw UsageError{"empty coefficient list"};
    return out;
}

std::string to_csv(const Poly& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string to_csv_int(const std::vector<int>& v) {
    return to_csv(Poly(v.begin(), v.end()));
}

GrowthPolicy parse_policy(const std::string& name, double error_rate) {
    GrowthPolicy policy;
    if (name == "det" || name == "deterministic") {
        policy.mode = GrowthPolicy::Mode::Deterministic;
    } else if (name == "stoch" || name == "stochastic") {
        policy.mode = GrowthPolicy::Mode::Stochastic;
    } else {
        throw UsageError{"unknown policy: " + name};
    }
    policy.error_rate = error_rate;
    return policy;
}

struct Common {
    uint64_t seed = 1;
    std::string out_dir;
    std::string json_path;
    std::string svg_path;
    bool quiet = false;
};

void add_common(CLI::App* sub, Common& common, bool with_exports = true) {
    sub->add_option("--seed", common.seed, "rng seed");
    sub->add_flag("--quiet", common.quiet, "suppress the stats line");
    if (with_exports) {
        sub->add_option("--out", common.out_dir, "directory for exported files");
        sub->add_option("--json,--export-json", common.json_path, "write a JSON export here");
        sub->add_option("--svg,--export-svg", common.svg_path, "write an SVG export here");
    }
}

std::string resolve(const Common& common, const std::string& path) {
    if (common.out_dir.empty() || path.find('/') == 0) return path;
    return common.out_dir + "/" + path;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError(ErrorCode::InvalidInput, "cannot open " + path);
    file << content;
    if (!file) throw DomainError(ErrorCode::InvalidInput, "write failed: " + path);
}

Json read_json_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw DomainError(ErrorCode::InvalidInput, "cannot open " + path);
    Json j;
    try {
        file >> j;
    } catch (const Json::parse_error& e) {
        throw DomainError(ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
    }
    return j;
}

void maybe_export_assembly(const Common& common, const Assembly& assembly, const TileSet& ts) {
    if (!common.json_path.empty())
        write_file(resolve(common, common.json_path), assembly_to_json(assembly).dump(2) + "\n");
    if (!common.svg_path.empty())
        write_file(resolve(common, common.svg_path), assembly_to_svg(assembly, ts, 0));
}

AttackBackend parse_backend(const std::string& name) {
    if (name == "arith" || name == "arithmetic") return AttackBackend::Arithmetic;
    if (name == "assembly") return AttackBackend::Assembly;
    throw UsageError{"unknown backend: " + name};
}

struct NtruFlags {
    NtruParams params;
    std::string key_path;
    std::string h_csv;
    std::string backend = "arith";
};

void add_ntru_params(CLI::App* sub, NtruParams& params) {
    sub->add_option("--n", params.N, "ring degree");
    sub->add_option("--p", params.p, "small modulus");
    sub->add_option("--q", params.q, "large modulus");
    sub->add_option("--d", params.d, "ones in f");
    sub->add_option("--s", params.s, "g coefficient bound");
    sub->add_option("--k", params.k, "bin coordinates");
    sub->add_option("--width", params.bin_width, "bin cell width (0 = q/4)");
}

// Loads params + h either from a key file or from flags + --h.
std::pair<NtruParams, Poly> attack_target(const NtruFlags& flags) {
    if (!flags.key_path.empty()) {
        const KeyPair kp = keypair_from_json(read_json_file(flags.key_path));
        return {kp.params, kp.h};
    }
    if (flags.h_csv.empty()) throw UsageError{"need --key or --pub"};
    return {flags.params, parse_csv(flags.h_csv)};
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tile self-assembly toolkit: binary multiplication, cyclic convolution "
                 "towers, and desk-scale NTRU attacks"};
    app.require_subcommand(1);

    // ---- tileset ----
    auto* tileset_cmd = app.add_subcommand("tileset", "generate a tile set and report counts");
    struct {
        std::string kind;
        int m = 1, n = 2, layer = 1, s = 2, t = 2, k = 3;
        long long q = 4, width = 0;
        bool combinatorial = false;
    } ts_flags;
    Common ts_common;
    tileset_cmd->add_option("--kind", ts_flags.kind, "mult | conv-ground | conv-bridge | ntru-bins")
        ->required();
    tileset_cmd->add_option("--m", ts_flags.m, "multiplier: bits of a");
    tileset_cmd->add_option("--n", ts_flags.n, "multiplier: bits of b; conv: operand length");
    tileset_cmd->add_option("--q", ts_flags.q, "modulus");
    tileset_cmd->add_option("--s", ts_flags.s, "a-alphabet size");
    tileset_cmd->add_option("--t", ts_flags.t, "b-alphabet size");
    tileset_cmd->add_option("--layer", ts_flags.layer, "bridge layer index");
    tileset_cmd->add_option("--k", ts_flags.k, "bin coordinates");
    tileset_cmd->add_option("--width", ts_flags.width, "bin cell width (0 = q/4)");
    tileset_cmd->add_flag("--combinatorial", ts_flags.combinatorial, "combinatorial input classes");
    add_common(tileset_cmd, ts_common);

    // ---- assemble ----
    auto* assemble_cmd = app.add_subcommand("assemble", "grow an assembly from JSON inputs");
    struct {
        std::string tileset_path;
        std::string inputs_path;
        std::string policy = "det";
        double error_rate = 0.0;
        uint64_t max_steps = 1'000'000;
    } asm_flags;
    Common asm_common;
    assemble_cmd->add_option("--tileset", asm_flags.tileset_path, "tile set JSON")->required();
    assemble_cmd->add_option("--inputs", asm_flags.inputs_path, "placements JSON")->required();
    assemble_cmd->add_option("--policy", asm_flags.policy, "det | stoch");
    assemble_cmd->add_option("--error-rate", asm_flags.error_rate, "faulty attachment rate");
    assemble_cmd->add_option("--max-steps", asm_flags.max_steps, "growth step budget");
    add_common(assemble_cmd, asm_common);

    // ---- mult ----
    auto* mult_cmd = app.add_subcommand("mult", "multiply two binary numbers by self-assembly");
    struct {
        std::string a, b;
        std::string policy = "det";
        double error_rate = 0.0;
        bool stats = false;
        bool reporter = false;
    } mult_flags;
    Common mult_common;
    const CLI::Validator binary_check{
        [](std::string& s) {
            return s.find_first_not_of("01") == std::string::npos && !s.empty()
                       ? std::string{}
                       : std::string{"expected a binary string"};
        },
        "BITS"};
    mult_cmd->add_option("--a", mult_flags.a, "first factor, binary, most significant first")
        ->required()
        ->check(binary_check);
    mult_cmd->add_option("--b", mult_flags.b, "second factor, binary, most significant first")
        ->required()
        ->check(binary_check);
    mult_cmd->add_option("--policy", mult_flags.policy, "det | stoch");
    mult_cmd->add_option("--error-rate", mult_flags.error_rate, "faulty attachment rate");
    mult_cmd->add_flag("--stats", mult_flags.stats, "print a JSON stats line");
    mult_cmd->add_flag("--reporter", mult_flags.reporter,
                       "count reaction steps for an in-lattice reporter readout");
    add_common(mult_cmd, mult_common);

    // ---- conv ----
    auto* conv_cmd = app.add_subcommand("conv", "cyclic convolution product via a tile tower");
    struct {
        int n = 4;
        long long q = 8;
        int s = 0, t = 0; // 0 = derive from operand values
        std::string a, b;
        std::string policy = "det";
        double error_rate = 0.0;
        bool stats = false;
    } conv_flags;
    Common conv_common;
    conv_cmd->add_option("--n", conv_flags.n, "operand length (power of 2)")->required();
    conv_cmd->add_option("--q", conv_flags.q, "modulus")->required();
    conv_cmd->add_option("--a", conv_flags.a, "a coefficients, csv")->required();
    conv_cmd->add_option("--b", conv_flags.b, "b coefficients, csv, or 'combinatorial'")
        ->required();
    conv_cmd->add_option("--s", conv_flags.s, "a-alphabet size (default: max(a)+1, min 2)");
    conv_cmd->add_option("--t", conv_flags.t, "b-alphabet size (default: max(b)+1, min 2)");
    conv_cmd->add_option("--policy", conv_flags.policy, "det | stoch");
    conv_cmd->add_option("--error-rate", conv_flags.error_rate, "faulty attachment rate");
    conv_cmd->add_flag("--stats", conv_flags.stats, "print a JSON stats line");
    add_common(conv_cmd, conv_common);

    // ---- ntru ----
    auto* ntru_cmd = app.add_subcommand("ntru", "NTRU keygen, encryption, and attacks");
    ntru_cmd->require_subcommand(1);

    auto* keygen_cmd = ntru_cmd->add_subcommand("keygen", "generate a keypair");
    NtruFlags keygen_flags;
    Common keygen_common;
    bool keygen_plant = false;
    add_ntru_params(keygen_cmd, keygen_flags.params);
    keygen_cmd->add_flag("--plant", keygen_plant,
                         "solve for h directly instead of requiring f invertible mod q");
    keygen_cmd->add_option("--key", keygen_flags.key_path, "write the keypair JSON here");
    add_common(keygen_cmd, keygen_common, false);

    auto* encrypt_cmd = ntru_cmd->add_subcommand("encrypt", "e = r * h + m mod q");
    NtruFlags encrypt_flags;
    Common encrypt_common;
    std::string encrypt_m, encrypt_r;
    encrypt_cmd->add_option("--key", encrypt_flags.key_path, "keypair JSON")->required();
    encrypt_cmd->add_option("--m", encrypt_m, "message, csv (default: sampled from --seed)");
    encrypt_cmd->add_option("--r", encrypt_r, "blinder, csv (default: sampled from --seed)");
    add_common(encrypt_cmd, encrypt_common, false);

    auto* decrypt_cmd = ntru_cmd->add_subcommand("decrypt", "recover m from e");
    NtruFlags decrypt_flags;
    Common decrypt_common;
    std::string decrypt_e;
    decrypt_cmd->add_option("--key", decrypt_flags.key_path, "keypair JSON")->required();
    decrypt_cmd->add_option("--e", decrypt_e, "ciphertext, csv")->required();
    add_common(decrypt_cmd, decrypt_common, false);

    auto* bf_cmd = ntru_cmd->add_subcommand("attack-bf", "brute-force key search");
    NtruFlags bf_flags;
    Common bf_common;
    std::string bf_side = "f";
    uint64_t bf_cap = uint64_t{1} << 24;
    add_ntru_params(bf_cmd, bf_flags.params);
    bf_cmd->add_option("--key", bf_flags.key_path, "keypair JSON (uses its params and h)");
    bf_cmd->add_option("--pub", bf_flags.h_csv, "public key, csv");
    bf_cmd->add_option("--side", bf_side, "f | g");
    bf_cmd->add_option("--backend", bf_flags.backend, "arith | assembly");
    bf_cmd->add_option("--enum-cap", bf_cap, "candidate enumeration cap");
    add_common(bf_cmd, bf_common, false);

    auto* mitm_cmd = ntru_cmd->add_subcommand("attack-mitm", "meet-in-the-middle key search");
    NtruFlags mitm_flags;
    Common mitm_common;
    int mitm_reps = 0;
    uint64_t mitm_half_cap = uint64_t{1} << 20;
    add_ntru_params(mitm_cmd, mitm_flags.params);
    mitm_cmd->add_option("--key", mitm_flags.key_path, "keypair JSON (uses its params and h)");
    mitm_cmd->add_option("--pub", mitm_flags.h_csv, "public key, csv");
    mitm_cmd->add_option("--backend", mitm_flags.backend, "arith | assembly");
    mitm_cmd->add_option("--reps", mitm_reps, "repetition cap (0 = ceil(8*sqrt(d)))");
    mitm_cmd->add_option("--half-cap", mitm_half_cap, "half-space enumeration cap");
    add_common(mitm_cmd, mitm_common, false);

    auto* ntru_capacity_cmd = ntru_cmd->add_subcommand("capacity", "capacity report");
    NtruParams ntru_capacity_params;
    double ntru_budget = 80.0;
    add_ntru_params(ntru_capacity_cmd, ntru_capacity_params);
    ntru_capacity_cmd->add_option("--budget-log2", ntru_budget, "molecule budget, log2");

    // ---- capacity (top-level alias) ----
    auto* capacity_cmd = app.add_subcommand("capacity", "capacity report");
    NtruParams capacity_params;
    double capacity_budget = 80.0;
    add_ntru_params(capacity_cmd, capacity_params);
    capacity_cmd->add_option("--budget-log2", capacity_budget, "molecule budget, log2");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("asakit");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tileset_cmd->parsed()) {
            TileSet ts;
            if (ts_flags.kind == "mult") {
                ts = build_mult_tileset(ts_flags.m, ts_flags.n, ts_flags.combinatorial);
            } else if (ts_flags.kind == "conv-ground") {
                ts = build_ground_layer(ts_flags.n, ts_flags.q, ts_flags.s, ts_flags.t,
                                        ts_flags.combinatorial);
            } else if (ts_flags.kind == "conv-bridge") {
                ts = build_bridge_layer(ts_flags.q, ts_flags.layer);
            } else if (ts_flags.kind == "ntru-bins") {
                NtruParams params;
                params.q = ts_flags.q;
                params.k = ts_flags.k;
                params.bin_width = ts_flags.width;
                ts = make_bin_tileset(params);
            } else {
                throw UsageError{"unknown tileset kind: " + ts_flags.kind};
            }
            out << "name=" << ts.name << " classes=" << ts.total_classes()
                << " temperature=" << ts.temperature << "\n";
            if (!ts_common.json_path.empty())
                write_file(resolve(ts_common, ts_common.json_path),
                           tileset_to_json(ts).dump(2) + "\n");
        } else if (assemble_cmd->parsed()) {
            const TileSet ts = tileset_from_json(read_json_file(asm_flags.tileset_path));
            const auto inputs = placements_from_json(read_json_file(asm_flags.inputs_path));
            GrowthPolicy policy = parse_policy(asm_flags.policy, asm_flags.error_rate);
            policy.max_steps = asm_flags.max_steps;
            const Assembly assembly = grow(ts, inputs, policy, asm_common.seed);
            out << "steps=" << assembly.step_count << " mismatches=" << assembly.mismatch_count()
                << " tiles=" << assembly.placed.size() << "\n";
            maybe_export_assembly(asm_common, assembly, ts);
        } else if (mult_cmd->parsed()) {
            const auto a_bits = bits_from_binary_string(mult_flags.a);
            const auto b_bits = bits_from_binary_string(mult_flags.b);
            const GrowthPolicy policy = parse_policy(mult_flags.policy, mult_flags.error_rate);
            const MultRun run = multiply_run(a_bits, b_bits, policy, mult_common.seed);
            out << bits_to_binary_string(run.result_bits) << " (" << run.product << ")\n";
            MultInstance inst{static_cast<int>(a_bits.size()), static_cast<int>(b_bits.size()),
                              a_bits, b_bits};
            const TileSet ts = build_mult_tileset(inst);
            if (!mult_common.quiet)
                out << "steps=" << run.assembly.step_count
                    << " mismatches=" << run.assembly.mismatch_count() << "\n";
            if (mult_flags.stats) {
                const MultStats stats = mult_stats(ts, run.assembly, mult_flags.reporter);
                Json by_role = Json::object();
                for (const auto& [role, count] : stats.tile_classes)
                    by_role[std::string(role_name(role))] = count;
                out << Json{{"tile_classes", stats.total_classes},
                            {"by_role", std::move(by_role)},
                            {"reaction_steps", stats.reaction_steps},
                            {"step_count", stats.step_count},
                            {"mismatches", stats.mismatches}}
                           .dump()
                    << "\n";
            }
            maybe_export_assembly(mult_common, run.assembly, ts);
        } else if (conv_cmd->parsed()) {
            ConvInstance inst;
            inst.N = conv_flags.n;
            inst.q = conv_flags.q;
            inst.a = parse_csv(conv_flags.a);
            const bool combinatorial = conv_flags.b == "combinatorial";
            if (combinatorial) {
                Rng rng(conv_common.seed);
                inst.t = conv_flags.t > 0 ? conv_flags.t : 2;
                inst.b.assign(static_cast<size_t>(conv_flags.n), 0);
                for (long long& c : inst.b)
                    c = static_cast<long long>(rng.below(static_cast<uint64_t>(inst.t)));
            } else {
                inst.b = parse_csv(conv_flags.b);
            }
            const auto alphabet = [](const Poly& v, int requested) {
                long long top = 1;
                for (long long c : v) top = std::max(top, c + 1);
                return requested > 0 ? requested : static_cast<int>(std::max<long long>(top, 2));
            };
            inst.s = alphabet(inst.a, conv_flags.s);
            inst.t = alphabet(inst.b, conv_flags.t);
            const GrowthPolicy policy = parse_policy(conv_flags.policy, conv_flags.error_rate);
            const ConvRun run = star_via_assembly_run(inst, policy, conv_common.seed, combinatorial);
            out << to_csv(run.result) << "\n";
            if (conv_flags.stats) {
                const TileSet ground = build_ground_layer(inst, combinatorial);
                out << Json{{"ground_tile_classes", ground.total_classes()},
                            {"layers", run.layers},
                            {"reaction_steps", run.layers},
                            {"bridges_per_layer", run.bridges_per_layer},
                            {"spacer_instances_per_layer", run.spacer_instances_per_layer},
                            {"duplicate_readout", run.duplicate_readout},
                            {"step_count", run.assembly.step_count},
                            {"mismatches", run.assembly.mismatch_count()}}
                           .dump()
                    << "\n";
            }
            if (!conv_common.json_path.empty())
                write_file(resolve(conv_common, conv_common.json_path),
                           assembly_to_json(run.assembly).dump(2) + "\n");
            if (!conv_common.svg_path.empty())
                write_file(resolve(conv_common, conv_common.svg_path),
                           assembly_to_svg(run.assembly, conv_combined_tileset(inst), 0));
        } else if (ntru_cmd->parsed()) {
            if (keygen_cmd->parsed()) {
                const KeyPair kp = keygen_plant
                                       ? plant_keypair(keygen_flags.params, keygen_common.seed)
                                       : keygen(keygen_flags.params, keygen_common.seed);
                const std::string text = keypair_to_json(kp).dump(2) + "\n";
                if (keygen_flags.key_path.empty()) {
                    out << text;
                } else {
                    write_file(keygen_flags.key_path, text);
                    out << "wrote " << keygen_flags.key_path << "\n";
                }
            } else if (encrypt_cmd->parsed()) {
                const KeyPair kp = keypair_from_json(read_json_file(encrypt_flags.key_path));
                const Poly m = encrypt_m.empty() ? sample_message(kp.params, encrypt_common.seed)
                                                 : parse_csv(encrypt_m);
                const Poly r = encrypt_r.empty()
                                   ? sample_blinder(kp.params, encrypt_common.seed + 1)
                                   : parse_csv(encrypt_r);
                out << to_csv(encrypt(kp.params, kp.h, m, r)) << "\n";
                if (!encrypt_common.quiet && encrypt_m.empty()) out << "m=" << to_csv(m) << "\n";
            } else if (decrypt_cmd->parsed()) {
                const KeyPair kp = keypair_from_json(read_json_file(decrypt_flags.key_path));
                out << to_csv(decrypt(kp, parse_csv(decrypt_e))) << "\n";
            } else if (bf_cmd->parsed()) {
                const auto [params, h] = attack_target(bf_flags);
                const AttackSide side = bf_side == "g" ? AttackSide::GSide : AttackSide::FSide;
                const BfResult result =
                    brute_force_attack(params, h, side, parse_backend(bf_flags.backend), bf_cap);
                out << "f=" << to_csv(result.f) << " tested=" << result.candidates_tested
                    << " separation_steps=" << result.separation_steps << "\n";
            } else if (mitm_cmd->parsed()) {
                const auto [params, h] = attack_target(mitm_flags);
                const MitmResult result =
                    mitm_attack_run(params, h, mitm_common.seed,
                                    parse_backend(mitm_flags.backend), mitm_reps, mitm_half_cap);
                out << "f=" << to_csv(result.f) << " repetitions=" << result.repetitions
                    << " pairs_verified=" << result.pairs_verified << "\n";
            } else if (ntru_capacity_cmd->parsed()) {
                out << capacity_to_json(capacity_estimate(ntru_capacity_params, ntru_budget)).dump()
                    << "\n";
            }
        } else if (capacity_cmd->parsed()) {
            out << capacity_to_json(capacity_estimate(capacity_params, capacity_budget)).dump()
                << "\n";
        }
    } catch (const UsageError& e) {
        err << e.message << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << Json{{"error", e.name()}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace asa
