#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <thread>
#include <fstream>
#include <sstream>

#include "modcrit/fixture.hpp"
#include "modcrit/cache.hpp"
#include "modcrit/flatness.hpp"
#include "modcrit/runner.hpp"

using namespace modcrit;

namespace {

std::string fx(const std::string& name) { return std::string(MODCRIT_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string run_cli(std::vector<std::string> args, int expect_code) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    CHECK(code == expect_code);
    return out.str();
}

const char* kCorpus[] = {"node_q.fx", "qxy.fx",     "cusp_f2.fx", "node_f3.fx",
                         "f2x.fx",    "f2xy.fx",    "tsq.fx",     "embedded_q.fx",
                         "split_q.fx", "qx.fx",     "sroot_q.fx"};

}  // namespace

TEST_CASE("every corpus fixture parses, validates, and round-trips byte-exactly") {
    for (auto name : kCorpus) {
        CAPTURE(name);
        std::string text = slurp(fx(name));
        FixtureDocument doc = parse_fixture(text, name);
        CHECK(serialize_fixture(doc) == text);
        ValidationReport rep = validate_fixture(doc.fixture);
        CHECK(rep.valid());
    }
}

TEST_CASE("parse errors carry positions and name the duplicate label") {
    std::string dup = slurp(fx("node_q.fx"));
    auto pos = dup.find("module My");
    REQUIRE(pos != std::string::npos);
    dup.replace(pos, 9, "module Mx");
    try {
        parse_fixture(dup);
        FAIL("expected a parse error");
    } catch (const ParseError& ex) {
        CHECK(std::string(ex.what()).find("Mx") != std::string::npos);
        CHECK(ex.line > 1);
    }

    CHECK_THROWS_AS(parse_fixture("ring { field: QQ\n vars: [x], order: grevlex }"), ParseError);
    CHECK_THROWS_AS(parse_fixture("module M { }"), ParseError);  // ring must come first
}

TEST_CASE("the shipped mutation fixture fails in its annotated way") {
    FixtureDocument bad = load_fixture(fx("mutations/node_bad_min.fx"));
    ValidationReport rep = validate_fixture(bad.fixture);
    CHECK_FALSE(rep.valid());
    // the annotation says validate.valid = false, so the CLI run agrees (exit 0)
    run_cli({"validate", fx("mutations/node_bad_min.fx")}, 0);
}

TEST_CASE("expectation mismatches drive the exit code") {
    std::string text = slurp(fx("node_q.fx"));
    auto pos = text.find("\"flat.oracle.Mx\": not_flat");
    REQUIRE(pos != std::string::npos);
    std::string lying = text;
    lying.replace(pos, 26, "\"flat.oracle.Mx\": flat    ");
    std::string tmp = std::filesystem::temp_directory_path() / "lying_node.fx";
    {
        std::ofstream out(tmp);
        out << lying;
    }
    std::ostringstream os, es;
    int code = cli_main({"flat", tmp, "--module", "Mx", "--mode", "oracle"}, os, es);
    CHECK(code == 1);
    CHECK(os.str().find("MISMATCH") != std::string::npos);
    std::filesystem::remove(tmp);
}

TEST_CASE("usage and missing files exit with code 2") {
    std::ostringstream out, err;
    CHECK(cli_main({"frobnicate", "x.fx"}, out, err) == 2);
    CHECK(cli_main({"validate", "no_such_file.fx"}, out, err) == 2);
    CHECK(cli_main({"flat", fx("node_q.fx"), "--module", "Missing", "--mode", "oracle"}, out,
                   err) == 2);
}

TEST_CASE("gb, ideal, and mod subcommands") {
    std::string gb = run_cli({"gb", fx("node_q.fx")}, 0);
    CHECK(gb.find("x*y") != std::string::npos);
    std::string inter =
        run_cli({"ideal", fx("node_q.fx"), "--op", "intersect", "--a", "p_x", "--b", "p_y"}, 0);
    CHECK(inter.find("x*y") != std::string::npos);
    std::string rad = run_cli({"ideal", fx("qxy.fx"), "--op", "radical-member", "--a", "p_x",
                               "--f", "x^3"},
                              0);
    CHECK(rad.find("\"verdict\": \"true\"") != std::string::npos);
    std::string fit = run_cli({"mod", fx("node_q.fx"), "--module", "Mx", "--op", "fitting",
                               "--j", "0"},
                              0);
    CHECK(fit.find("\"x\"") != std::string::npos);
    run_cli({"mod", fx("node_q.fx"), "--module", "Mx", "--op", "torsion"}, 0);
    run_cli({"mod", fx("node_q.fx"), "--module", "MR", "--op", "ass", "--prime", "p_x"}, 0);
}

TEST_CASE("reports are byte-deterministic, cache-transparent, and jobs-independent") {
    std::string cache = (std::filesystem::temp_directory_path() / "modcrit_cache_test").string();
    std::filesystem::remove_all(cache);

    std::vector<std::string> cmd = {"theorems", "flatred", fx("node_q.fx"),
                                    "--module", "Mx", "--cache", cache};
    std::string cold = run_cli(cmd, 0);
    std::string warm = run_cli(cmd, 0);
    CHECK(cold == warm);
    CHECK(std::filesystem::exists(cache));

    auto with_jobs = cmd;
    with_jobs.push_back("--jobs");
    with_jobs.push_back("8");
    CHECK(run_cli(with_jobs, 0) == cold);

    std::filesystem::remove_all(cache);
}

TEST_CASE("golden report: flat oracle run over the node") {
    std::string got = run_cli({"flat", fx("node_q.fx"), "--module", "Mx", "--mode", "oracle"}, 0);
    // normalize the fixture path, which depends on the source layout
    std::string key = std::string("\"path\": \"") + fx("node_q.fx") + "\"";
    auto pos = got.find(key);
    REQUIRE(pos != std::string::npos);
    got.replace(pos, key.size(), "\"path\": \"fixtures/node_q.fx\"");
    std::string golden_path = std::string(MODCRIT_GOLDEN_DIR) + "/flat_oracle_node_mx.json";
    if (const char* regen = std::getenv("MODCRIT_REGEN_GOLDEN")) {
        (void)regen;
        std::ofstream out(golden_path);
        out << got;
    }
    CHECK(got == slurp(golden_path));
}

TEST_CASE("table rendering covers the same rows") {
    std::string table = run_cli({"validate", fx("node_q.fx"), "--format", "table"}, 0);
    CHECK(table.find("validate.valid") != std::string::npos);
    CHECK(table.find("CERTIFIED") != std::string::npos);
}

TEST_CASE("corpus expectation annotations all pass through the runner") {
    for (auto name : kCorpus) {
        CAPTURE(name);
        FixtureDocument doc = load_fixture(fx(name));
        for (auto& [key, expected] : doc.expectations) {
            CAPTURE(key);
            std::vector<std::string> cmd;
            auto split = [&](const std::string& k) {
                std::vector<std::string> parts;
                std::string cur;
                for (char c : k) {
                    if (c == '.') {
                        parts.push_back(cur);
                        cur.clear();
                    } else {
                        cur.push_back(c);
                    }
                }
                parts.push_back(cur);
                return parts;
            };
            auto parts = split(key);
            if (parts[0] == "validate") {
                cmd = {"validate", fx(name)};
            } else if (parts[0] == "flat" && parts[1] == "oracle") {
                cmd = {"flat", fx(name), "--module", parts[2], "--mode", "oracle"};
            } else if (parts[0] == "flat" && parts[1] == "faithful") {
                cmd = {"flat", fx(name), "--module", parts[2], "--mode", "faithful"};
            } else if (parts[0] == "flat") {
                cmd = {"flat", fx(name), "--module", parts[2], "--mode", parts[1],
                       "--prime", parts[3]};
            } else if (parts[0] == "flatred") {
                cmd = {"theorems", "flatred", fx(name), "--module", "Mt"};
            } else if (parts[0] == "mod" && parts[1] == "torsion_free") {
                cmd = {"mod", fx(name), "--module", parts[2], "--op", "torsion"};
            } else if (parts[0] == "mod" && parts[1] == "ass") {
                cmd = {"mod", fx(name), "--module", parts[2], "--op", "ass", "--prime", parts[3]};
            } else if (parts[0] == "div") {
                cmd = {"div", fx(name), "--module", parts[2], "--w", parts[3], "--check", "tf"};
            } else if (parts[0] == "frob" && parts[1] == "pushforward") {
                cmd = {"frob", "pushforward", fx(name), "--e", "1"};
            } else if (parts[0] == "frob" || parts[0] == "theorems") {
                cmd = {"theorems", parts[0] == "frob" ? "frob" : parts[1], fx(name)};
                if (parts[0] == "theorems" && parts[1] == "flatred") {
                    cmd = {"theorems", "flatred", fx(name), "--module", parts[2]};
                }
            } else if (parts[0] == "endo") {
                cmd = {"endo", "check", fx(name), "--endo", parts[2], "--prime", parts[3]};
            } else if (parts[0] == "inj") {
                cmd = {"inj", fx(name), "--carrier", parts[2], "--check", "predicates"};
            } else {
                continue;
            }
            std::ostringstream out, err;
            int code = cli_main(cmd, out, err);
            CHECK(code == 0);
            CHECK(out.str().find("MISMATCH") == std::string::npos);
        }
    }
}

TEST_CASE("corrupted cache entries are detected and recomputed") {
    namespace fs = std::filesystem;
    std::string cache = (fs::temp_directory_path() / "modcrit_corrupt_cache").string();
    fs::remove_all(cache);
    GroebnerCache::instance().clear_memory();
    std::vector<std::string> cmd = {"gb", fx("node_q.fx"), "--cache", cache};
    std::string first = run_cli(cmd, 0);
    size_t entries = 0;
    for (auto& e : fs::directory_iterator(cache)) {
        std::ofstream out(e.path());  // truncate: the stored key no longer matches
        out << "garbage\n";
        ++entries;
    }
    REQUIRE(entries > 0);
    GroebnerCache::instance().clear_memory();
    std::string again = run_cli(cmd, 0);
    CHECK(first == again);
    fs::remove_all(cache);
}

TEST_CASE("full-nzd multiplicative sets route to the dual dictionary") {
    std::string text = slurp(fx("node_q.fx"));
    text += "multset Wall { gens: [], full_nzd: true }\n";
    std::string tmp = std::filesystem::temp_directory_path() / "node_full_nzd.fx";
    {
        std::ofstream out(tmp);
        out << text;
    }
    std::ostringstream os, es;
    int code = cli_main({"div", tmp, "--module", "Mx", "--w", "Wall", "--check", "tf"}, os, es);
    CHECK(code == 0);
    CHECK(os.str().find("not_applicable") != std::string::npos);
    std::filesystem::remove(tmp);
}

TEST_CASE("parser rejects degenerate numeric input") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const PolyRing& R = node.fixture.ring();
    CHECK_THROWS_AS(parse_polynomial(R, "1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial(R, "x^99999999999"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fixture("ring { field: GF(4), vars: [x], order: grevlex, "
                                  "relations: [] }"),
                    ParseError);
    FixtureDocument f3 = load_fixture(fx("node_f3.fx"));
    CHECK_THROWS_AS(parse_polynomial(f3.fixture.ring(), "1/3*x"), std::invalid_argument);
}

TEST_CASE("concurrent full runs over the shared cache agree") {
    std::vector<std::string> cmd = {"theorems", "flatred", fx("node_q.fx"), "--module", "Mxmy"};
    std::ostringstream ref_out, ref_err;
    REQUIRE(cli_main(cmd, ref_out, ref_err) == 0);
    std::string reference = ref_out.str();
    std::vector<std::thread> pool;
    std::vector<std::string> results(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            std::ostringstream out, err;
            cli_main(cmd, out, err);
            results[static_cast<size_t>(t)] = out.str();
        });
    for (auto& th : pool) th.join();
    for (auto& r : results) CHECK(r == reference);
}

TEST_CASE("rank-zero modules flow through the public surface") {
    FixtureDocument node = load_fixture(fx("node_q.fx"));
    const RingFixture& F = node.fixture;
    const RingCtx& R = F.ctx;
    ModulePresentation zero;  // the zero module on no generators
    CHECK(module_is_zero(R, zero));
    CHECK(annihilator(R, zero).is_unit_ideal(R));
    CHECK(fitting_ideal(R, zero, 0).is_unit_ideal(R));
    CHECK(is_flat_oracle(F, zero).verdict == FlatVerdict::Flat);
    CHECK(torsion_analysis(F, zero).torsion_free);
    CHECK(module_is_zero(R, tensor(R, zero, *node.find_module("Mx"))));
    CHECK_FALSE(ass_membership(R, F.find_prime("p_x")->ideal, zero));
}
