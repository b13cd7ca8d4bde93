#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "asa/cli.hpp"
#include "asa/json_io.hpp"
#include "asa/mult.hpp"
#include "asa/ntru.hpp"

using namespace asa;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("mult command prints the product and a stats line") {
    const CliResult r = invoke({"mult", "--a", "101", "--b", "110"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "11110 (30)");
    CHECK(lines[1] == "steps=25 mismatches=0");  // (m+n)(n+1)+1 at m=n=3
    CHECK(r.err.empty());

    const CliResult quiet = invoke({"mult", "--a", "101", "--b", "110", "--quiet"});
    CHECK(lines_of(quiet.out) == std::vector<std::string>{"11110 (30)"});
}

TEST_CASE("mult --stats emits a parseable census") {
    const CliResult r = invoke({"mult", "--a", "101", "--b", "110", "--stats"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    const Json stats = Json::parse(lines[2]);
    CHECK(stats.at("tile_classes").get<int>() == 34);
    CHECK(stats.at("by_role").at("body").get<int>() == 16);
    CHECK(stats.at("reaction_steps").get<int>() == 2);
    CHECK(stats.at("mismatches").get<int>() == 0);
}

TEST_CASE("conv command computes a star product with identity and stats") {
    const CliResult r =
        invoke({"conv", "--n", "4", "--q", "8", "--a", "2,3,4,5", "--b", "1,0,0,0", "--stats"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "2,3,4,5");  // a * identity = a
    const Json stats = Json::parse(lines[1]);
    CHECK(stats.at("layers").get<int>() == 3);  // log2(4) + 1
    CHECK(stats.at("reaction_steps").get<int>() == 3);
    CHECK(stats.at("duplicate_readout").get<long long>() == 5);
    CHECK(stats.at("ground_tile_classes").get<int>() == 8 + 3 * 4 + 6 * 2);  // s=6, t=2 inferred
    CHECK(stats.at("mismatches").get<int>() == 0);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::string> mult_args{"mult",   "--a",    "1101", "--b", "1011",
                                             "--policy", "stoch", "--seed", "9"};
    CHECK(invoke(mult_args).out == invoke(mult_args).out);

    const std::vector<std::string> conv_args{"conv", "--n", "4",  "--q",    "8",
                                             "--a",  "1,2,3,4", "--b", "combinatorial",
                                             "--seed", "12"};
    const CliResult c1 = invoke(conv_args);
    const CliResult c2 = invoke(conv_args);
    REQUIRE(c1.code == 0);
    CHECK(c1.out == c2.out);

    const std::vector<std::string> cap_args{"capacity", "--n", "64", "--s", "3", "--q", "64"};
    CHECK(invoke(cap_args).out == invoke(cap_args).out);
}

TEST_CASE("usage problems exit with code 2") {
    CHECK(invoke({"mult", "--a", "1", "--b", "1", "--zz"}).code == 2);
    CHECK(invoke({"mult", "--b", "1"}).code == 2);                  // --a is required
    CHECK(invoke({"conv", "--n", "4"}).code == 2);                  // missing --q/--a
    CHECK(invoke({"mult", "--a", "1", "--b", "1", "--policy", "bogus"}).code == 2);
    CHECK(invoke({"conv", "--n", "2", "--q", "4", "--a", "1,x", "--b", "1,0"}).code == 2);
    CHECK(invoke({"tileset", "--kind", "nonsense"}).code == 2);
    CHECK(invoke({"ntru", "attack-bf", "--n", "8"}).code == 2);     // need --key or --pub
}

TEST_CASE("domain errors exit 1 with a JSON error object on stderr") {
    SUBCASE("operand length must be a power of two") {
        const CliResult r = invoke({"conv", "--n", "3", "--q", "4", "--a", "1,1,1", "--b", "1,0,0"});
        CHECK(r.code == 1);
        const Json e = Json::parse(r.err);
        CHECK(e.at("error").get<std::string>() == "InvalidInput");
        CHECK(!e.at("detail").get<std::string>().empty());
    }
    SUBCASE("non-binary multiplier operands are rejected at the option") {
        CHECK(invoke({"mult", "--a", "102", "--b", "1"}).code == 2);
    }
    SUBCASE("enumeration cap") {
        const CliResult r = invoke({"ntru", "attack-bf", "--n", "16", "--q", "64", "--d", "4",
                                    "--pub", "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16",
                                    "--enum-cap", "10"});
        CHECK(r.code == 1);
        CHECK(Json::parse(r.err).at("error").get<std::string>() == "EnumerationCapExceeded");
    }
    SUBCASE("half-space cap") {
        const CliResult r = invoke({"ntru", "attack-mitm", "--n", "16", "--q", "64", "--d", "4",
                                    "--pub", "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16",
                                    "--half-cap", "5"});
        CHECK(r.code == 1);
        CHECK(Json::parse(r.err).at("error").get<std::string>() == "EnumerationCapExceeded");
    }
}

TEST_CASE("keygen, encrypt, decrypt, and attacks round-trip through key files") {
    const auto key_path = temp_file("asa_cli_key.json");
    const CliResult kg = invoke({"ntru", "keygen", "--plant", "--n", "16", "--q", "64", "--d", "4",
                                 "--seed", "7", "--key", key_path.string()});
    REQUIRE(kg.code == 0);
    CHECK(kg.out == "wrote " + key_path.string() + "\n");

    const CliResult enc = invoke({"ntru", "encrypt", "--key", key_path.string(), "--seed", "5"});
    REQUIRE(enc.code == 0);
    const auto enc_lines = lines_of(enc.out);
    REQUIRE(enc_lines.size() == 2);
    REQUIRE(enc_lines[1].rfind("m=", 0) == 0);
    const std::string message_csv = enc_lines[1].substr(2);

    const CliResult dec =
        invoke({"ntru", "decrypt", "--key", key_path.string(), "--e", enc_lines[0]});
    REQUIRE(dec.code == 0);
    CHECK(lines_of(dec.out) == std::vector<std::string>{message_csv});

    // Both attacks recover a rotation of the planted f recorded in the file.
    std::ifstream in(key_path);
    const KeyPair kp = keypair_from_json(Json::parse(in));
    for (const char* attack : {"attack-bf", "attack-mitm"}) {
        const CliResult atk =
            invoke({"ntru", attack, "--key", key_path.string(), "--seed", "3"});
        REQUIRE(atk.code == 0);
        const std::string f_field = lines_of(atk.out)[0];
        REQUIRE(f_field.rfind("f=", 0) == 0);
        Poly f;
        std::istringstream csv(f_field.substr(2, f_field.find(' ') - 2));
        for (std::string tok; std::getline(csv, tok, ',');) f.push_back(std::stoll(tok));
        CHECK(is_rotation(f, kp.f));
    }
    std::filesystem::remove(key_path);
}

TEST_CASE("keygen without --key prints the keypair JSON") {
    const CliResult r = invoke(
        {"ntru", "keygen", "--plant", "--n", "16", "--q", "64", "--d", "4", "--seed", "2"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("f").size() == 16);
    CHECK(j.at("h").size() == 16);
    CHECK(j.at("f_q_inv").is_null());    // planted route: f has no mod-q inverse
    CHECK(!j.at("f_p_inv").is_null());   // but stays decrypt-capable
    CHECK(j.at("params").at("n").get<int>() == 16);
}

TEST_CASE("capacity reports are identical at both mount points and check out") {
    const CliResult top = invoke({"capacity", "--n", "64", "--s", "3", "--q", "64"});
    const CliResult sub = invoke({"ntru", "capacity", "--n", "64", "--s", "3", "--q", "64"});
    REQUIRE(top.code == 0);
    REQUIRE(sub.code == 0);
    CHECK(top.out == sub.out);
    const Json j = Json::parse(top.out);
    CHECK(j.at("bridge_tile_classes").get<long long>() == 4224);
    CHECK(j.at("mitm_capacity_log2").get<double>() == 160.0);
    CHECK(j.at("enumerable_at_budget_log2").get<double>() == 80.0);
    CHECK(j.at("over_bf_capacity").get<bool>());
}

TEST_CASE("tileset command reports class counts for every kind") {
    const CliResult mult = invoke({"tileset", "--kind", "mult", "--m", "3", "--n", "3"});
    REQUIRE(mult.code == 0);
    CHECK(mult.out.find("classes=34") != std::string::npos);
    CHECK(mult.out.find("temperature=3") != std::string::npos);

    const CliResult ground =
        invoke({"tileset", "--kind", "conv-ground", "--n", "4", "--q", "8", "--s", "2", "--t", "2"});
    REQUIRE(ground.code == 0);
    CHECK(ground.out.find("classes=24") != std::string::npos);  // 8 + 3N + st
    CHECK(ground.out.find("temperature=2") != std::string::npos);

    const CliResult bridge = invoke({"tileset", "--kind", "conv-bridge", "--q", "4", "--layer", "1"});
    REQUIRE(bridge.code == 0);
    CHECK(bridge.out.find("classes=24") != std::string::npos);  // q^2 + 2q

    const CliResult bins =
        invoke({"tileset", "--kind", "ntru-bins", "--q", "16", "--k", "2", "--width", "4"});
    REQUIRE(bins.code == 0);
    CHECK(bins.out.find("classes=16") != std::string::npos);  // 2k(q/width)
}

TEST_CASE("assemble command grows a tile set exported to JSON") {
    const auto ts_path = temp_file("asa_cli_tileset.json");
    const auto in_path = temp_file("asa_cli_inputs.json");
    const MultInstance inst{2, 2, {1, 1}, {1, 1}};  // 3 * 3
    {
        std::ofstream ts_file(ts_path);
        ts_file << tileset_to_json(build_mult_tileset(inst)).dump(2) << "\n";
        std::ofstream in_file(in_path);
        in_file << placements_to_json(mult_input_placements(inst)).dump(2) << "\n";
    }
    const CliResult r =
        invoke({"assemble", "--tileset", ts_path.string(), "--inputs", in_path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("steps=13 mismatches=0") != std::string::npos);  // (m+n)(n+1)+1
    std::filesystem::remove(ts_path);
    std::filesystem::remove(in_path);
}
